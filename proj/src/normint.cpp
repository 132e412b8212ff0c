#include "c3/normint.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace c3 {

namespace {

const QuadRule& cached_laguerre(int order) {
    static std::map<int, QuadRule> cache;
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, gauss_laguerre_scaled(order)).first;
    return it->second;
}

// Int_0^inf t^2 e^{-t} L_{n-1}(a t) L_{n-1}(b t) dt with a, b in [0, 1].
// Written with e^{-t/2}-scaled Laguerre values so nothing overflows:
//   e^{-t} L(a t) L(b t) = M(a t) M(b t) e^{-t (1 - (a+b)/2)},  M = e^{-x/2} L.
double radial_overlap(int n, double a, double b, const QuadRule& rule) {
    KahanSum acc;
    const double decay = 1.0 - 0.5 * (a + b);
    for (size_t i = 0; i < rule.x.size(); ++i) {
        const double t = rule.x[i];
        double term = rule.w[i] * t * t * laguerre_scaled(n - 1, a * t) *
                      laguerre_scaled(n - 1, b * t) * std::exp(-decay * t);
        acc.add(term);
    }
    return acc.value();
}

double sigma_direct_once(int n, double alpha, double cos_gamma,
                         int radial_order, int theta_order, int phi_order) {
    const QuadRule& rad = cached_laguerre(radial_order);
    // Frame: khat2 along z, khat1 in the x-z plane at angle gamma.
    const double sg = std::sqrt(std::max(0.0, 1.0 - cos_gamma * cos_gamma));
    QuadRule gl = gauss_legendre(theta_order);
    const double wphi = 2.0 * pi / phi_order;
    KahanSum acc;
    for (int i = 0; i < theta_order; ++i) {
        const double ct = gl.x[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < phi_order; ++j) {
            const double cphi = std::cos(wphi * j);
            const double c1 = ct * cos_gamma + st * cphi * sg;  // <xhat,khat1>
            const double a = 0.5 * (1.0 - c1);
            const double b = 0.5 * (1.0 - ct);
            acc.add(gl.w[i] * wphi * radial_overlap(n, a, b, rad));
        }
    }
    const double pref = std::pow(static_cast<double>(n) / std::abs(alpha), 3);
    return pref * acc.value();
}

}  // namespace

ComplexAmplitude sigma_direct(int n, double alpha, const Vec3& khat1,
                              const Vec3& khat2, int radial_order,
                              int theta_order, int phi_order) {
    if (n < 1) throw std::domain_error("sigma_direct: need n >= 1");
    if (alpha == 0.0) throw std::domain_error("sigma_direct: need alpha != 0");
    const double cg = dot(khat1.hat(), khat2.hat());
    // The Laguerre product has polynomial degree 2n, so order n+2 is already
    // exact in the radial direction; the floor keeps the angular refinement
    // honest for small n.
    radial_order = std::max(radial_order, n + 2);
    const double coarse =
        sigma_direct_once(n, alpha, cg, radial_order, theta_order, phi_order);
    const double fine = sigma_direct_once(n, alpha, cg, 2 * radial_order,
                                          (3 * theta_order) / 2,
                                          (3 * phi_order) / 2);
    return {cplx(fine, 0.0), std::abs(fine - coarse)};
}

double phase_function(const PhasePoint& p) {
    const double ss = std::sqrt(p.s);
    const double ct = std::cos(p.theta);
    const double st = std::sin(p.theta);
    const double cos_tt = st * std::sin(p.theta_kprime) *
                              std::cos(p.phi - p.phi_kprime) +
                          ct * std::cos(p.theta_kprime);
    const double tt = std::acos(std::min(1.0, std::max(-1.0, cos_tt)));
    auto half = [&](double ang) {
        const double sh = std::sin(0.5 * ang);
        return 2.0 * std::acos(ss * sh) -
               2.0 * ss * std::sqrt(1.0 - p.s * sh * sh) * sh;
    };
    return half(p.theta) + half(tt);
}

PhasePoint stationary_point(double theta_kprime, double s, double phi_kprime) {
    PhasePoint p;
    p.theta_kprime = theta_kprime;
    p.s = s;
    p.phi_kprime = phi_kprime;
    p.theta = pi - 0.5 * theta_kprime;
    p.phi = phi_kprime + pi;
    return p;
}

HessianCheck hessian_check(double theta_kprime, double s) {
    if (!(theta_kprime > 0.0 && theta_kprime < pi))
        throw std::domain_error("hessian_check: need theta_kprime in (0, pi)");
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("hessian_check: need s in (0, 1)");

    HessianCheck out{};
    const double t4 = theta_kprime / 4.0;
    const double t2 = theta_kprime / 2.0;
    const double ss = std::sqrt(s);
    const double root = std::sqrt(1.0 - s * std::cos(t4) * std::cos(t4));
    out.analytic[1][1] = ss * std::sin(theta_kprime) * std::sin(t2) * root /
                         std::cos(t4);  // d2S/dphi2
    out.analytic[0][1] = out.analytic[1][0] = 0.0;
    out.analytic[0][0] = 2.0 * ss * std::cos(t4) / root *
                         (1.0 - s * std::cos(t2));  // d2S/dtheta2
    out.det_analytic = 2.0 * s * std::sin(theta_kprime) * std::sin(t2) *
                       (1.0 - s * std::cos(t2));
    out.degenerate = std::abs(out.det_analytic) < 1e-12;

    const PhasePoint c = stationary_point(theta_kprime, s);
    auto S = [&](double dth, double dph) {
        PhasePoint p = c;
        p.theta += dth;
        p.phi += dph;
        return phase_function(p);
    };
    auto second = [&](int which, double h) {  // 0: theta, 1: phi, 2: mixed
        if (which == 0) return (S(h, 0) - 2.0 * S(0, 0) + S(-h, 0)) / (h * h);
        if (which == 1) return (S(0, h) - 2.0 * S(0, 0) + S(0, -h)) / (h * h);
        return (S(h, h) - S(h, -h) - S(-h, h) + S(-h, -h)) / (4.0 * h * h);
    };
    for (int which = 0; which < 3; ++which) {
        const double h = 2e-3;
        const double d1 = second(which, h);
        const double d2 = second(which, h / 2.0);
        const double v = (4.0 * d2 - d1) / 3.0;  // Richardson
        if (which == 0) out.numeric[0][0] = v;
        if (which == 1) out.numeric[1][1] = v;
        if (which == 2) out.numeric[0][1] = out.numeric[1][0] = v;
    }

    const double tr = out.analytic[0][0] + out.analytic[1][1];
    const double det = out.det_analytic;
    if (det > 0.0)
        out.signature = tr > 0.0 ? 2 : -2;
    else
        out.signature = 0;
    return out;
}

cplx sigma_stationary(int n, double alpha, double theta_kprime) {
    if (n < 1) throw std::domain_error("sigma_stationary: need n >= 1");
    if (!(theta_kprime >= 0.0 && theta_kprime < pi))
        throw std::domain_error("sigma_stationary: need theta in [0, pi)");
    const double t4 = theta_kprime / 4.0;
    const double t2 = theta_kprime / 2.0;
    const double c4 = std::cos(t4);
    const double c2 = std::cos(t2);
    const double sin2_t4 = std::sin(t4) * std::sin(t4);

    // s = 1 - zeta^2/16 regularises the inverse-square-root endpoint.
    auto integrand = [&](double zeta) -> cplx {
        const double s = 1.0 - zeta * zeta / 16.0;
        if (s <= 0.0) return 0.0;
        const double ss = std::sqrt(s);
        const double w = ss * c4;
        const double S0 = 4.0 * circle_segment(w);
        const double damping = std::exp(-4.0 * n * s * sin2_t4);
        const double r1 = std::sqrt(1.0 - s * c4 * c4);
        const double r2 = std::sqrt(std::max(1e-300, 1.0 - s * c2));
        const cplx osc = std::exp(cplx(0.0, n * S0 + pi / 2.0));
        return s * damping * osc / (c4 * std::sqrt(c2) * r1 * r2) * (zeta / 8.0);
    };

    AdaptiveOptions opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-13;
    opt.initial_panels = std::max(8, n / 2);
    QuadResult res = integrate_gk(integrand, 0.0, 4.0, opt);
    const double pref = 16.0 * std::pow(static_cast<double>(n), 4) /
                        std::pow(std::abs(alpha), 3);
    return pref * res.value;
}

}  // namespace c3
