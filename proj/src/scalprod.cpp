#include "c3/scalprod.hpp"

#include <cmath>
#include <stdexcept>

#include "c3/pairstates.hpp"

namespace c3 {

namespace {

// Gamma(-i eta)(1 - e^{2 pi eta}); finite at eta = 0 with value -2 pi i.
cplx gamma_escape_factor(double eta) {
    if (std::abs(eta) < 1e-7) {
        const double euler = 0.57721566490153286060651209;
        return cplx(0.0, -2.0 * pi) +
               eta * cplx(2.0 * pi * euler, -2.0 * pi * pi);
    }
    const cplx g = gamma_complex(cplx(0.0, -eta)).value;
    return g * (1.0 - std::exp(2.0 * pi * eta));
}

cplx nc_constant(double eta) {
    return std::pow(2.0 * pi, -1.5) * std::exp(-pi * eta / 2.0) *
           gamma_complex(cplx(1.0, eta)).value;
}

}  // namespace

ChannelCoefficients channel_coefficients_from(double e2, double e3,
                                              double k2m, double k3m,
                                              const Vec3& k2, const Vec3& k3,
                                              const Vec3& phat) {
    const double pk2 = dot(phat, k2);
    const double pk3 = dot(phat, k3);
    if (std::abs(std::abs(pk2) - 1.0) < 1e-12 ||
        std::abs(std::abs(pk3) - 1.0) < 1e-12)
        throw std::domain_error(
            "channel_coefficients: forward/backward singular kinematics");

    ChannelCoefficients out;
    out.omega = e2 + e3;
    const cplx a0 = -nc_constant(e2) * nc_constant(e3) / (4.0 * pi * pi);
    const cplx common = a0 * gamma_escape_factor(e2) *
                        gamma_escape_factor(e3) *
                        std::exp(-pi * out.omega / 2.0);
    const double r = std::sqrt(3.0) / 2.0;
    auto phase_pow = [](double base, double eta) {
        return std::exp(cplx(0.0, eta * std::log(base)));
    };
    out.B0_in = common * phase_pow(r * k2m * (1.0 - pk2), e2) *
                phase_pow(r * k3m * (1.0 + pk3), e3);
    out.B0_out = common * phase_pow(r * k2m * (1.0 + pk2), e2) *
                 phase_pow(r * k3m * (1.0 - pk3), e3);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    out.L_in = inv_sqrt3 * (e2 / (1.0 - pk2) * (k2 - phat) +
                            e3 / (1.0 + pk3) * (k3 + phat));
    out.L_out = inv_sqrt3 * (e2 / (1.0 + pk2) * (k2 + phat) +
                             e3 / (1.0 - pk3) * (k3 - phat));
    return out;
}

ChannelCoefficients channel_coefficients(const SystemConfig& /*config*/,
                                         const Momenta& q) {
    return channel_coefficients_from(q.eta[1], q.eta[2], q.k_pair[1].norm(),
                                     q.k_pair[2].norm(), q.k_pair[1].hat(),
                                     q.k_pair[2].hat(), q.p.hat());
}

cplx z_in_closed(const SystemConfig& config, const Momenta& q,
                 const Vec3& khat2, Channel channel) {
    const Couplings c = couplings(config);
    const double k = q.k.norm();
    if (!(k > 0.0)) throw std::domain_error("z_in_closed: need |k| > 0");
    const double eta = q.eta[0];
    const ChannelCoefficients cc = channel_coefficients(config, q);
    const Vec3& L = channel == Channel::in ? cc.L_in : cc.L_out;
    const Vec3 khat = q.k.hat();
    const cplx nc1 = nc_constant(eta);
    const cplx gam = gamma_complex(cplx(3.0, eta)).value;
    const cplx kpow = std::pow(k, 4) * std::exp(cplx(0.0, eta * std::log(k)));
    const cplx phi =
        kummer_phi(cplx(3.0, eta), 1.0,
                   cplx(0.0, std::abs(c.alpha[0]) / (2.0 * k) *
                                 (1.0 + dot(khat2, khat))))
            .value;
    return -nc1 * std::exp(pi * eta / 2.0) / kpow * dot(khat, L) * gam * phi;
}

cplx coulomb_sc(const Vec3& xhat, const Vec3& k, double eta) {
    const double km = k.norm();
    if (eta == 0.0) return 0.0;
    const double s2 = 0.5 * (1.0 - dot(xhat, k.hat()));
    if (s2 <= 0.0)
        throw std::domain_error("coulomb_sc: forward singular direction");
    const cplx gam = gamma_complex(cplx(0.0, -eta)).value;
    const cplx pw = std::exp(cplx(0.0, -eta) * std::log(2.0 * km * s2)) /
                    (2.0 * km * s2);
    return -km * std::exp(pi * eta / 2.0) / gam * pw;
}

namespace {

cplx h_integral_once(const Couplings& c, const Momenta& q, const Vec3& khat2,
                     const Vec3& L, const AngularAmplitude& sc, double cap,
                     int phi_order, bool closure) {
    const double k = q.k.norm();
    const double eta = q.eta[0];
    const Vec3 khat = q.k.hat();
    // Frame aligned with khat: the s_c singularity sits at t = 1.
    Vec3 e1 = std::abs(khat.z) < 0.9 ? cross(khat, Vec3{0, 0, 1}).hat()
                                     : cross(khat, Vec3{1, 0, 0}).hat();
    Vec3 e2v = cross(khat, e1);
    const double tmax = std::cos(cap);
    const double arg_scale = std::abs(c.alpha[0]) / (2.0 * k);

    auto ring = [&](double t) -> cplx {
        const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
        KahanSumC acc;
        for (int j = 0; j < phi_order; ++j) {
            const double ph = 2.0 * pi * j / phi_order;
            Vec3 x = t * khat + st * (std::cos(ph) * e1 + std::sin(ph) * e2v);
            const cplx phi_val =
                kummer_phi(cplx(3.0, eta), 1.0,
                           cplx(0.0, -arg_scale * (1.0 - dot(khat2, x))))
                    .value;
            acc.add(dot(x, L) * phi_val * sc(x, q.k, eta));
        }
        return acc.value() * (2.0 * pi / phi_order);
    };

    AdaptiveOptions opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 1e-12;
    opt.initial_panels = 24;
    cplx total = integrate_gk(ring, -1.0, tmax, opt).value;

    if (closure && eta != 0.0) {
        // Abel value of the excised cap for the default amplitude.
        const double eps = 1.0 - tmax;
        const cplx phi_fwd =
            kummer_phi(cplx(3.0, eta), 1.0,
                       cplx(0.0, -arg_scale * (1.0 - dot(khat2, khat))))
                .value;
        const cplx gam = gamma_complex(cplx(0.0, -eta)).value;
        const cplx ring_value = std::exp(pi * eta / 2.0) *
                                std::exp(cplx(0.0, -eta * std::log(k * eps))) /
                                (cplx(0.0, eta) * gam);
        total += 2.0 * pi * dot(khat, L) * phi_fwd * ring_value;
    }
    return total;
}

}  // namespace

HResult h_integral(const SystemConfig& config, const Momenta& q,
                   const Vec3& khat2, Channel channel,
                   const AngularAmplitude& sc, double cap, int phi_order,
                   bool coulomb_forward_closure) {
    const Couplings c = couplings(config);
    const ChannelCoefficients cc = channel_coefficients(config, q);
    const Vec3& L = channel == Channel::in ? cc.L_in : cc.L_out;
    HResult out;
    out.value = h_integral_once(c, q, khat2, L, sc, cap, phi_order,
                                coulomb_forward_closure);
    const cplx coarse = h_integral_once(c, q, khat2, L, sc, 2.0 * cap,
                                        phi_order, coulomb_forward_closure);
    out.cap_sensitivity = std::abs(out.value - coarse);
    return out;
}

WeakAsymptotics q_weak_asymptotics(const SystemConfig& config,
                                   const Momenta& q, const Vec3& khat2,
                                   const AngularAmplitude& sc, double cap) {
    const double eta = q.eta[0];
    const double k = q.k.norm();
    const double p = q.p.norm();
    if (!(p > 0.0)) throw std::domain_error("q_weak_asymptotics: need |p| > 0");
    const ChannelCoefficients cc = channel_coefficients(config, q);
    const cplx nc1 = nc_constant(eta);
    const cplx gam = gamma_complex(cplx(3.0, eta)).value;
    const cplx kpow = std::pow(k, 4) * std::exp(cplx(0.0, eta * std::log(k)));

    WeakAsymptotics out;
    out.H_in = h_integral(config, q, khat2, Channel::in, sc, cap);
    out.H_out = h_integral(config, q, khat2, Channel::out, sc, cap);
    const cplx z2_scale = nc1 * gam * std::exp(-pi * eta / 2.0) / kpow;
    out.Z_in = z_in_closed(config, q, khat2, Channel::in) +
               z2_scale * out.H_in.value;
    out.Z_out = z_in_closed(config, q, khat2, Channel::out) +
                z2_scale * out.H_out.value;
    out.prefactor_in = 2.0 * pi * cc.B0_in / p;
    out.prefactor_out = -2.0 * pi * cc.B0_out / p;
    return out;
}

cplx regularized_plus_power(double b, double a, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("regularized_plus_power: eps > 0");
    // sigma = e^s turns the wild phase oscillation near 0 into a slow
    // e^{i b s}; the decay cutoff picks the upper end.
    const double scale = std::hypot(eps, a);
    const double s_hi = std::log(50.0 / std::min(eps, scale)) + 5.0;
    const double s_lo = -40.0;
    auto f = [&](double s) -> cplx {
        const double sigma = std::exp(s);
        return std::exp(cplx(0.0, b * s)) * sigma *
               std::exp(-cplx(eps, a) * sigma);
    };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-14;
    opt.initial_panels = 64;
    return integrate_gk(f, s_lo, s_hi, opt).value;
}

cplx regularized_plus_power_closed(double b, double a, double eps) {
    const cplx z(eps, a);
    const cplx g = gamma_complex(cplx(1.0, b)).value;
    return g * std::exp(-cplx(1.0, b) * std::log(z));
}

cplx kernel_Rn(const KernelRnParams& params, const Momenta& q, int n, double t,
               double phi, const Vec3& khat) {
    const Couplings c = couplings(params.config);
    const double sqrtE = std::sqrt(q.E);
    const double t0 = q.p.norm() / sqrtE;
    if (!(t > t0))
        throw std::domain_error("kernel_Rn: t outside the support t > p/sqrt(E)");
    const double b = q.b;

    // (t - p/sqrt(E))_+^{ib} on its support.
    const cplx plus_pow = std::exp(cplx(0.0, b * std::log(t - t0)));
    // chi_p: C2 switch-on over [t0, t0 + width], identically 1 above.
    double chi = 1.0;
    if (t < t0 + params.chi_width) {
        const double u = (t - t0) / params.chi_width;
        chi = u * u * (3.0 - 2.0 * u);
    }
    const double ce = params.mathieu.ce(phi);
    const double a0 = params.mathieu.coeffs.at(0);
    if (std::abs(a0) < 1e-13)
        throw std::domain_error(
            "kernel_Rn: degenerate Mathieu normalization (A_0 = 0)");
    const cplx gam_b = gamma_complex(cplx(1.0, b)).value;
    const cplx e_pow =
        std::pow(q.E, 1.0) * std::exp(cplx(0.0, 0.5 * b * std::log(q.E)));
    const cplx scale = std::pow(std::abs(c.alpha[0]), 3) * e_pow *
                       std::exp(pi * b / 2.0) /
                       (32.0 * pi * pi * a0 * gam_b);
    const double denom =
        std::pow(static_cast<double>(n), 3) * (params.B2 * std::log(n) + params.B1);

    const ChannelCoefficients cc = channel_coefficients(params.config, q);
    const double eta = q.eta[0];
    const double k = q.k.norm();
    const cplx z2_scale = nc_constant(eta) *
                          gamma_complex(cplx(3.0, eta)).value *
                          std::exp(-pi * eta / 2.0) /
                          (std::pow(k, 4) *
                           std::exp(cplx(0.0, eta * std::log(k))));
    auto assemble_z = [&](Channel ch) {
        return z_in_closed(params.config, q, khat, ch) +
               z2_scale * h_integral(params.config, q, khat, ch, params.sc).value;
    };
    const cplx z_in = assemble_z(Channel::in);
    const cplx z_out = assemble_z(Channel::out);

    const cplx common = plus_pow * chi * ce / denom * scale;
    return common * (cc.B0_in * z_in + cc.B0_out * z_out);
}

}  // namespace c3
