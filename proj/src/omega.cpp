#include "c3/omega.hpp"

#include <cmath>
#include <stdexcept>

namespace c3 {

namespace {

double sinc(double z) { return std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z; }

// Exponential integral E2(c) = Int_1^inf e^{-c t} / t^2 dt, c >= 0.
double expint_e2(double c) {
    if (c < 0.0) throw std::domain_error("expint_e2: need c >= 0");
    if (c == 0.0) return 1.0;
    double e1;
    if (c < 1.5) {
        // E1 by the alternating series.
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -c / k;
            sum += -term / k;
            if (std::abs(term / k) < 1e-18) break;
        }
        const double euler = 0.57721566490153286060651209;
        e1 = -euler - std::log(c) + sum;
    } else {
        // Modified Lentz continued fraction.
        double b = c + 1.0, cc = 1e308, d = 1.0 / b, h = d;
        for (int i = 1; i <= 200; ++i) {
            const double an = -static_cast<double>(i) * i;
            b += 2.0;
            d = an * d + b;
            if (std::abs(d) < 1e-300) d = 1e-300;
            cc = b + an / cc;
            if (std::abs(cc) < 1e-300) cc = 1e-300;
            d = 1.0 / d;
            const double del = d * cc;
            h *= del;
            if (std::abs(del - 1.0) < 1e-16) break;
        }
        e1 = h * std::exp(-c);
    }
    return std::exp(-c) - c * e1;
}

// Int_1^inf e^{i a rho} / rho drho for a > 0, by rotating the contour:
// rho = 1 + i w gives i e^{ia} Int_0^inf e^{-a w} / (1 + i w) dw.
cplx oscillatory_log_tail(double a) {
    static const QuadRule rule = gauss_laguerre_scaled(200);
    KahanSumC acc;
    for (size_t i = 0; i < rule.x.size(); ++i) {
        const double y = rule.x[i];
        acc.add(rule.w[i] * std::exp(-y) / cplx(1.0, y / a));
    }
    return cplx(0.0, 1.0) * std::exp(cplx(0.0, a)) * acc.value() / a;
}

// Int_0^1 ln(rho) e^{i a rho} drho, via one integration by parts so the
// remaining integrand is bounded.
cplx oscillatory_log_unit(double a) {
    auto inner = [&](double r) -> cplx {
        const double base = r > 0.0 ? r * std::log(r) - r : 0.0;
        return base * std::exp(cplx(0.0, a * r));
    };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-14;
    opt.initial_panels = std::max(4, static_cast<int>(a / 3.0));
    QuadResult res = integrate_gk(inner, 0.0, 1.0, opt);
    return -std::exp(cplx(0.0, a)) - cplx(0.0, a) * res.value;
}

// d/dv of a scalar function on [0, 1]; one-sided at the ends.
template <class Fn>
auto deriv_v(Fn&& fn, double v) {
    const double h = 1e-4;
    if (v - h < 0.0) return (-3.0 * fn(v) + 4.0 * fn(v + h) - fn(v + 2 * h)) / (2.0 * h);
    if (v + h > 1.0) return (3.0 * fn(v) - 4.0 * fn(v - h) + fn(v - 2 * h)) / (2.0 * h);
    return (fn(v + h) - fn(v - h)) / (2.0 * h);
}

}  // namespace

cplx omega_direct(const OmegaKernel& kernel, int n, int phase_sign,
                  double rel_tol, bool reverse_order) {
    if (n < 1) throw std::domain_error("omega_direct: need n >= 1");
    const double sgn = phase_sign >= 0 ? 1.0 : -1.0;
    const double fournb = 4.0 * n * kernel.beta;

    // Rough oscillation budget from a coarse sample of |g|.
    double gmax = 0.0;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j)
            gmax = std::max(gmax, std::abs(kernel.g(i / 8.0, j / 8.0)));

    AdaptiveOptions inner_opt;
    inner_opt.rel_tol = rel_tol * 0.3;
    inner_opt.abs_tol = 1e-15;
    inner_opt.max_panels = 4000;

    auto inner = [&](double tau) -> cplx {
        const double u = tau * tau;
        const double phase_scale = 4.0 * n * u * std::sqrt(u) * sgn;
        auto fv = [&](double v) -> cplx {
            const double damp = fournb * u * v * kernel.f(u, v);
            const cplx expo(-damp, phase_scale * kernel.g(u, v));
            return std::exp(expo) * kernel.F(u, v);
        };
        QuadResult r = integrate_gk(fv, 0.0, 1.0, inner_opt);
        return 2.0 * tau * r.value;
    };

    AdaptiveOptions outer_opt;
    outer_opt.rel_tol = rel_tol;
    outer_opt.abs_tol = 1e-14;
    outer_opt.initial_panels =
        std::min(40000, std::max(8, static_cast<int>(1.5 * n * gmax)));
    outer_opt.max_panels = 200000;
    outer_opt.reverse_order = reverse_order;
    QuadResult res = integrate_gk(inner, 0.0, 1.0, outer_opt);
    return res.value;
}

VarpiSet varpi_coefficients(const OmegaKernel& kernel, int phase_sign) {
    const double sgn = phase_sign >= 0 ? 1.0 : -1.0;
    const double beta = kernel.beta;
    auto G0 = [&](double v) { return beta * v * kernel.f(0.0, v); };
    auto Gp = [&](double v) {
        return deriv_v([&](double w) { return beta * w * kernel.f(0.0, w); }, v);
    };
    const double gp0 = Gp(0.0);
    const double gp1 = Gp(1.0);
    if (std::abs(gp0) < 1e-10 || std::abs(gp1) < 1e-10)
        throw std::domain_error("varpi_coefficients: G'_v vanishes at an endpoint");
    const cplx F00 = kernel.F(0.0, 0.0);
    const cplx F01 = kernel.F(0.0, 1.0);
    const double g00 = kernel.g(0.0, 0.0);

    VarpiSet out;

    // w1: smooth double integral over the unit square.
    {
        static const QuadRule gl = gauss_legendre(64);
        KahanSumC acc;
        for (int i = 0; i < 64; ++i) {
            const double t = 0.5 * (gl.x[i] + 1.0);
            for (int j = 0; j < 64; ++j) {
                const double v = 0.5 * (gl.x[j] + 1.0);
                acc.add(0.25 * gl.w[i] * gl.w[j] *
                        std::exp(-4.0 * t * G0(v)) * kernel.F(0.0, v));
            }
        }
        out.w[0] = acc.value();
    }

    // w2 (sign included so D1 is a plain sum).
    {
        const double c = 4.0 * G0(1.0);
        static const QuadRule lag = gauss_laguerre_scaled(200);
        KahanSum acc;
        for (size_t i = 0; i < lag.x.size(); ++i) {
            const double y = lag.x[i];
            acc.add(lag.w[i] * std::exp(-y) * std::log(1.0 + y / c));
        }
        const double tail = std::exp(-c) / c * acc.value();
        out.w[1] = -F01 * (G0(1.0) / gp1) * tail;
    }

    // w3, w4: the oscillatory-scale constants.
    {
        const double a = 4.0 * g00;
        if (!(a > 0.0))
            throw std::domain_error("varpi_coefficients: need g(0,0) > 0");
        cplx tail = oscillatory_log_tail(a);
        cplx unit = oscillatory_log_unit(a);
        if (sgn < 0.0) {
            tail = std::conj(tail);
            unit = std::conj(unit);
        }
        out.w[2] = (F00 / gp0) / 6.0 * tail;
        out.w[3] = cplx(0.0, -sgn) * (2.0 * g00 / 3.0) * (F00 / gp0) * unit;
    }

    // w5, w6, w7: the boundary derivative pieces.
    auto ratio = [&](double v) { return kernel.F(0.0, v) / Gp(v); };
    auto dratio = [&](double v) { return deriv_v(ratio, v); };
    out.w[4] = -(1.0 / 16.0) / gp1 * dratio(1.0) * expint_e2(4.0 * G0(1.0));
    out.w[5] = (1.0 / 16.0) / gp0 * dratio(0.0);
    {
        auto inner2 = [&](double v) { return dratio(v) / Gp(v); };
        auto d2 = [&](double v) { return deriv_v(inner2, v); };
        static const QuadRule gl = gauss_legendre(48);
        KahanSumC acc;
        for (int j = 0; j < 48; ++j) {
            const double v = 0.5 * (gl.x[j] + 1.0);
            acc.add(0.5 * gl.w[j] * d2(v) * expint_e2(4.0 * G0(v)));
        }
        out.w[6] = acc.value() / 16.0;
    }

    out.upsilon = F00 / gp0 / 12.0;
    return out;
}

TwoTermFit fit_two_term(const std::vector<int>& n_grid,
                        const std::vector<cplx>& y) {
    if (n_grid.size() < 4 || n_grid.size() != y.size())
        throw std::domain_error("fit_two_term: need >= 4 matched points");
    const double m = static_cast<double>(n_grid.size());
    double sL = 0.0, sLL = 0.0;
    cplx sy = 0.0, sLy = 0.0;
    for (size_t i = 0; i < n_grid.size(); ++i) {
        const double L = std::log(static_cast<double>(n_grid[i]));
        sL += L;
        sLL += L * L;
        sy += y[i];
        sLy += L * y[i];
    }
    const double det = m * sLL - sL * sL;
    TwoTermFit out;
    out.D2 = (m * sLy - sL * sy) / det;
    out.D1 = (sy - out.D2 * sL) / m;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n_grid.size(); ++i) {
        const double L = std::log(static_cast<double>(n_grid[i]));
        num += std::norm(y[i] - out.D1 - out.D2 * L);
        den += std::norm(y[i]);
    }
    out.residual = std::sqrt(num / den);
    return out;
}

OmegaExpansion fit_expansion(const OmegaKernel& kernel,
                             const std::vector<int>& n_grid, int phase_sign,
                             double rel_tol) {
    if (n_grid.size() < 4)
        throw std::domain_error("fit_expansion: need at least 4 grid points");
    const double span = std::log10(static_cast<double>(n_grid.back())) -
                        std::log10(static_cast<double>(n_grid.front()));
    if (span < 1.0)
        throw std::domain_error("fit_expansion: n grid must span a decade");

    std::vector<cplx> y(n_grid.size());
    for (size_t i = 0; i < n_grid.size(); ++i)
        y[i] = static_cast<double>(n_grid[i]) *
               omega_direct(kernel, n_grid[i], phase_sign, rel_tol);

    TwoTermFit fit = fit_two_term(n_grid, y);
    OmegaExpansion out;
    out.D1 = fit.D1;
    out.D2 = fit.D2;
    out.fit_residual = fit.residual;

    VarpiSet vp = varpi_coefficients(kernel, phase_sign);
    out.D1_formula = vp.d1();
    out.D2_formula = vp.upsilon;
    return out;
}

std::pair<double, double> compute_B(const OmegaKernel& kernel) {
    VarpiSet plus = varpi_coefficients(kernel, +1);
    VarpiSet minus = varpi_coefficients(kernel, -1);
    const cplx b1 = 0.5 * (plus.d1() + minus.d1());
    const cplx b2 = 0.5 * (plus.upsilon + minus.upsilon);
    return {b1.real(), b2.real()};
}

OmegaKernel reduced_kernel() {
    constexpr double beta = 1.0 / 16.0;
    auto s_of = [](double u, double v) { return 1.0 - beta * u * (1.0 - v); };
    auto alpha_of = [](double u, double v) { return std::sqrt(u * v); };

    // delta / u with delta = 1 - sqrt(s) cos(alpha/4), written without
    // cancellation: (1-sqrt(s)) + sqrt(s) 2 sin^2(alpha/8).
    auto delta_tilde = [=](double u, double v) {
        const double s = s_of(u, v);
        const double rs = std::sqrt(s);
        const double a8 = alpha_of(u, v) / 8.0;
        const double sc = sinc(a8);
        return beta * (1.0 - v) / (1.0 + rs) + rs * (v / 32.0) * sc * sc;
    };

    OmegaKernel k;
    k.beta = beta;
    k.f = [=](double u, double v) {
        const double sc = sinc(alpha_of(u, v) / 4.0);
        return s_of(u, v) * sc * sc;
    };
    k.g = [=](double u, double v) {
        // g = Q(w)/u^{3/2} with Q = 2 sqrt(2) delta^{3/2} sum c_k delta^k;
        // dividing by u^{3/2} replaces delta^{3/2} by delta_tilde^{3/2}.
        const double dt = delta_tilde(u, v);
        const double d = u * dt;
        double binom = 1.0, pow_half = 1.0, dk = 1.0, sum = 0.0;
        for (int j = 0; j < 60; ++j) {
            const double term = binom * pow_half / (j + 1.5) * dk;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            binom *= (0.5 - j) / (j + 1.0);
            pow_half *= -0.5;
            dk *= d;
        }
        return 2.0 * std::sqrt(2.0) * std::pow(dt, 1.5) * sum;
    };
    k.F = [=](double u, double v) -> cplx {
        const double s = s_of(u, v);
        const double a = alpha_of(u, v);
        const double dt = delta_tilde(u, v);
        const double r1 = std::sqrt(dt * (2.0 - u * dt));
        const double sc4 = sinc(a / 4.0);
        const double r2 =
            std::sqrt(beta * (1.0 - v) + s * (v / 8.0) * sc4 * sc4);
        return s * sinc(a) /
               (32.0 * std::cos(a / 4.0) * std::sqrt(std::cos(a / 2.0)) * r1 * r2);
    };
    return k;
}

}  // namespace c3
