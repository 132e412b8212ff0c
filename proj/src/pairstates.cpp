#include "c3/pairstates.hpp"

#include <cmath>
#include <stdexcept>

namespace c3 {

CoulombWaveParams coulomb_params(double alpha, const Vec3& k) {
    const double kmag = k.norm();
    if (!(kmag > 0.0)) throw std::domain_error("coulomb_params: need |k| > 0");
    CoulombWaveParams p;
    p.alpha = alpha;
    p.k = k;
    p.eta = alpha / (2.0 * kmag);
    const cplx gamma = gamma_complex(cplx(1.0, p.eta)).value;
    p.norm = std::pow(2.0 * pi, -1.5) * std::exp(-pi * p.eta / 2.0) * gamma;
    return p;
}

ComplexAmplitude coulomb_distortion(double eta, const Vec3& x, const Vec3& k) {
    const double xk = x.norm() * k.norm();
    const cplx arg(0.0, xk - dot(x, k));
    return kummer_phi(cplx(0.0, -eta), 1.0, arg);
}

ComplexAmplitude coulomb_wave(const CoulombWaveParams& params, const Vec3& x) {
    ComplexAmplitude d = coulomb_distortion(params.eta, x, params.k);
    const cplx plane = std::exp(cplx(0.0, dot(x, params.k)));
    return {params.norm * plane * d.value, std::abs(params.norm) * d.error};
}

ComplexAmplitude bbk_wave(const SystemConfig& config, const Momenta& q,
                          const JacobiState& z) {
    const JacobiState z1 = to_pairing(config, z, 1);
    const Couplings c = couplings(config);
    cplx n0 = 1.0;
    cplx distortion = 1.0;
    double err = 0.0;
    for (int j = 0; j < 3; ++j) {
        JacobiState zj = to_pairing(config, z1, j + 1);
        const Vec3& kj = q.k_pair[j];
        CoulombWaveParams pj = coulomb_params(c.alpha[j], kj);
        n0 *= pj.norm;
        ComplexAmplitude dj = coulomb_distortion(pj.eta, zj.x, kj);
        err = err * std::abs(dj.value) + dj.error * std::abs(distortion);
        distortion *= dj.value;
    }
    const cplx plane = std::exp(cplx(0.0, dot(z1.x, q.k_pair[0]) +
                                              dot(z1.y, q.p_pair[0])));
    return {n0 * plane * distortion, std::abs(n0) * err};
}

double bound_norm(int n, int l, double alpha) {
    if (!(alpha < 0.0)) throw std::domain_error("bound_norm: need attraction (alpha < 0)");
    if (n < 1 || l < 0 || l >= n) throw std::domain_error("bound_norm: bad (n, l)");
    // With kappa = |alpha|/(2n) and the Laguerre connection
    // Phi(-n+l+1, 2l+2, t) = (n-l-1)! (2l+1)! / (n+l)! L^{(2l+1)}_{n-l-1}(t),
    //   Int e^{-2 kappa x} x^{2l+2} Phi^2 dx
    //     = (2 kappa)^{-(2l+3)} (n-l-1)! ((2l+1)!)^2 2n / (n+l)!.
    const double kappa = std::abs(alpha) / (2.0 * n);
    const double log_i = -(2.0 * l + 3.0) * std::log(2.0 * kappa) +
                         std::lgamma(n - l) + 2.0 * std::lgamma(2.0 * l + 2.0) +
                         std::log(2.0 * n) - std::lgamma(n + l + 1.0);
    return std::exp(-0.5 * log_i);
}

double bound_radial(const BoundStateIndex& index, double alpha, double x) {
    if (!index.valid()) throw std::domain_error("bound_radial: bad quantum numbers");
    if (!(alpha < 0.0)) throw std::domain_error("bound_radial: need alpha < 0");
    if (x < 0.0) throw std::domain_error("bound_radial: need x >= 0");
    const int n = index.n, l = index.l;
    const double aa = std::abs(alpha);
    const cplx phi = kummer_phi(cplx(-n + l + 1, 0.0), cplx(2.0 * l + 2.0, 0.0),
                                cplx(aa * x / n, 0.0))
                         .value;
    return bound_norm(n, l, alpha) * std::exp(-aa * x / (2.0 * n)) *
           std::pow(x, l) * phi.real();
}

double generating_function(int n, double alpha, const Vec3& x, const Vec3& khat) {
    if (n < 1) throw std::domain_error("generating_function: need n >= 1");
    const double aa = std::abs(alpha);
    const double xm = x.norm();
    double sin2_half = 0.5;  // x = 0: direction irrelevant, argument is 0 anyway
    if (xm > 0.0) sin2_half = 0.5 * (1.0 - dot(khat, x.hat()));
    return std::exp(-aa * xm / (2.0 * n)) *
           laguerre(n - 1, aa / n * xm * sin2_half);
}

double beta_coefficient(int n, int l) {
    if (n < 1 || l < 0) throw std::domain_error("beta_coefficient: bad (n, l)");
    double prod = 1.0;
    for (int j = 1; j <= l; ++j) prod *= static_cast<double>(j - n);
    return prod;
}

cplx partial_component(double gamma, double k, double x, int l) {
    if (l < 0 || !(k > 0.0)) throw std::domain_error("partial_component: bad input");
    const cplx ig(0.0, gamma);
    const cplx g_top = gamma_complex(ig + static_cast<double>(l) + 1.0).value;
    const cplx g_bot = gamma_complex(ig + 1.0).value;
    const double g_fac = std::tgamma(2.0 * l + 2.0);
    const cplx pow_term = std::pow(cplx(0.0, 2.0 * k * x), l);
    const cplx phi =
        kummer_phi(ig + static_cast<double>(l) + 1.0, cplx(2.0 * l + 2.0, 0.0),
                   cplx(0.0, -2.0 * k * x))
            .value;
    return g_top / (g_bot * g_fac) * pow_term * phi;
}

ComplexAmplitude reconstruct_R_nlm(const std::function<cplx(const Vec3&)>& Rn,
                                   const BoundStateIndex& index, double alpha,
                                   int theta_order, int phi_order) {
    if (!index.valid()) throw std::domain_error("reconstruct_R_nlm: bad index");
    const int n = index.n, l = index.l, m = index.m;

    auto project = [&](int nt, int np) {
        SphereGrid grid(nt, np);
        return grid.integrate([&](const SphereGrid::Node& nd) {
            Vec3 w{nd.nx, nd.ny, nd.nz};
            return Rn(w) * std::conj(spherical_harmonic(l, m, nd.nx, nd.ny, nd.nz));
        });
    };
    const cplx coarse = project(theta_order / 2, phi_order / 2);
    const cplx fine = project(theta_order, phi_order);

    double pref = beta_coefficient(n, l) / std::tgamma(2.0 * l + 2.0) *
                  std::pow(-std::abs(alpha) / n, l) / bound_norm(n, l, alpha);
    return {pref * fine, std::abs(pref) * std::abs(fine - coarse)};
}

}  // namespace c3
