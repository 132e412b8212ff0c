#include "c3/kinematics.hpp"

#include <stdexcept>

namespace c3 {

bool SystemConfig::equal_masses() const {
    const double m = mass[0];
    return std::abs(mass[1] - m) <= 1e-12 * m &&
           std::abs(mass[2] - m) <= 1e-12 * m;
}

Couplings couplings(const SystemConfig& config) {
    for (double m : config.mass)
        if (!(m > 0.0)) throw std::domain_error("couplings: masses must be positive");
    // {ijl} even permutations: l=1 -> (2,3), l=2 -> (3,1), l=3 -> (1,2).
    constexpr int pair_of[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    Couplings c;
    for (int l = 0; l < 3; ++l) {
        const int i = pair_of[l][0], j = pair_of[l][1];
        const double mu = config.mass[i] * config.mass[j] /
                          (config.mass[i] + config.mass[j]);
        c.alpha[l] = std::sqrt(2.0 * mu) * config.charge[i] * config.charge[j];
        c.attractive[l] = c.alpha[l] < 0.0;
    }
    const double f = 2.0 / std::sqrt(3.0);
    c.alpha_eff[0] = f * (c.alpha[1] + c.alpha[2]);
    c.alpha_eff[1] = f * (c.alpha[2] + c.alpha[0]);
    c.alpha_eff[2] = f * (c.alpha[0] + c.alpha[1]);
    return c;
}

namespace {

// One cyclic pairing step j -> j+1 (equal masses): the rotation
//   x' = -x/2 - (sqrt(3)/2) y,   y' = (sqrt(3)/2) x - y/2,
// whose third power is the identity.
void cycle_step(Vec3& x, Vec3& y) {
    const double h = 0.5;
    const double s = std::sqrt(3.0) / 2.0;
    Vec3 xn = -h * x - s * y;
    Vec3 yn = s * x - h * y;
    x = xn;
    y = yn;
}

}  // namespace

JacobiState to_pairing(const SystemConfig& config, const JacobiState& state,
                       int target_pair) {
    if (target_pair < 1 || target_pair > 3 || state.pair_index < 1 ||
        state.pair_index > 3)
        throw std::domain_error("to_pairing: pair index must be 1..3");
    if (!config.equal_masses())
        throw std::domain_error("to_pairing: only equal masses are supported");
    JacobiState out = state;
    const int steps = (target_pair - state.pair_index + 3) % 3;
    for (int i = 0; i < steps; ++i) cycle_step(out.x, out.y);
    out.pair_index = target_pair;
    return out;
}

bool in_domain(const JacobiState& state, const DomainSpec& spec, Domain which) {
    if (!spec.valid()) throw std::domain_error("in_domain: need 1/2 < mu < nu < 1");
    const double x = state.x.norm();
    const double y = state.y.norm();
    switch (which) {
        case Domain::Omega_mu:
            return std::pow(y, spec.mu) < x && x < y;
        case Domain::Omega_plus:
            return x <= std::pow(y, spec.nu);
        case Domain::Omega_munu:
            return std::pow(y, spec.mu) < x && x < std::pow(y, spec.nu);
    }
    return false;
}

Momenta make_momenta(const SystemConfig& config, const Vec3& k, const Vec3& p) {
    Momenta m;
    m.k = k;
    m.p = p;
    m.E = dot(k, k) + dot(p, p);
    Couplings c = couplings(config);
    Vec3 kk = k, pp = p;
    for (int j = 0; j < 3; ++j) {
        m.k_pair[j] = kk;
        m.p_pair[j] = pp;
        const double kmag = kk.norm();
        m.eta[j] = (kmag > 0.0) ? c.alpha[j] / (2.0 * kmag) : 0.0;
        cycle_step(kk, pp);
    }
    m.omega = m.eta[1] + m.eta[2];
    const double pmag = p.norm();
    m.eta_eff = (pmag > 0.0) ? c.alpha_eff[0] / (2.0 * pmag) : 0.0;
    m.b = m.eta_eff - m.omega;
    return m;
}

}  // namespace c3
