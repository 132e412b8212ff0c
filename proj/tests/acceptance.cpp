// Acceptance suite: one case per release criterion, each printing a
// single PASS/FAIL line with its measured metric.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "c3/accsum.hpp"
#include "c3/normint.hpp"
#include "c3/omega.hpp"
#include "c3/pairstates.hpp"
#include "c3/scalprod.hpp"

using namespace c3;

namespace {

void report(int num, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %02d: %s (%s)\n", pass ? "PASS" : "FAIL", num,
                name, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    return Vec3{g(rng), g(rng), g(rng)}.hat();
}

}  // namespace

TEST_CASE("criterion 1: special-function identity suite") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst_kummer = 0.0;
    int done = 0;
    while (done < 20) {
        cplx a(u(rng), u(rng)), c(u(rng), u(rng)), z(u(rng), u(rng));
        if (c.real() < 0.5 && std::abs(c.imag()) < 0.3) continue;
        const cplx lhs = kummer_phi(a, c, z).value;
        const cplx rhs = std::exp(z) * kummer_phi(c - a, c, -z).value;
        worst_kummer = std::max(worst_kummer,
                                std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        ++done;
    }

    double worst_lag = 0.0;
    for (int n = 2; n <= 20; ++n) {
        const double t = 30.0 * (n / 20.0);
        const cplx v = kummer_phi(cplx(1.0 - n, 0.0), 1.0, t).value;
        const double l = laguerre(n - 1, t);
        worst_lag = std::max(worst_lag, std::abs(v - l) / (1.0 + std::abs(l)));
    }

    double worst_gamma = 0.0;
    std::uniform_real_distribution<double> ug(-20.0, 20.0);
    done = 0;
    while (done < 20) {
        cplx z(ug(rng), ug(rng));
        if (z.real() < 0.5 && std::abs(z.imag()) < 0.5) continue;
        const cplx a = gamma_complex(z + 1.0).value;
        worst_gamma = std::max(
            worst_gamma, std::abs(a - z * gamma_complex(z).value) / std::abs(a));
        ++done;
    }

    QuadRule gl = gauss_legendre(32);
    double leg = 0.0;
    for (int i = 0; i < 32; ++i)
        leg += gl.w[i] * legendre_p(3, gl.x[i]) * legendre_p(5, gl.x[i]);

    SphereGrid grid(16, 32);
    double worst_gram = 0.0;
    for (int l1 = 0; l1 <= 3; ++l1)
        for (int m1 = -l1; m1 <= l1; ++m1)
            for (int l2 = 0; l2 <= 3; ++l2)
                for (int m2 = -l2; m2 <= l2; ++m2) {
                    cplx g = grid.integrate([&](const SphereGrid::Node& nd) {
                        return spherical_harmonic(l1, m1, nd.nx, nd.ny, nd.nz) *
                               std::conj(spherical_harmonic(l2, m2, nd.nx,
                                                            nd.ny, nd.nz));
                    });
                    const double expect = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
                    worst_gram = std::max(worst_gram, std::abs(g - expect));
                }

    double worst_mathieu = 0.0;
    for (int order : {0, 2, 4})
        for (double s : {0.1, 0.5, 2.0}) {
            MathieuEven me = mathieu_even(order, s);
            auto avg = [&](bool use_sin) {
                KahanSum acc;
                const int N = 2048;
                for (int i = 0; i < N; ++i) {
                    const double phi = 2.0 * pi * i / N;
                    const double osc = 1.3 * std::cos(phi - 0.4);
                    acc.add((use_sin ? std::sin(osc) : std::cos(osc)) *
                            me.ce(phi));
                }
                return acc.value() * 2.0 * pi / N;
            };
            worst_mathieu = std::max(worst_mathieu, std::abs(avg(true)));
            EllipticArgs ea = mathieu_plane_wave_args(1.3, 0.4, s);
            const double rhs = 2.0 * pi * me.coeffs[0] /
                               (me.ce(0.0) * me.ce(pi / 2.0)) *
                               me.Ce(ea.zeta) * me.ce(ea.vartheta);
            worst_mathieu = std::max(worst_mathieu, std::abs(avg(false) - rhs));
        }

    const bool pass = worst_kummer < 1e-10 && worst_lag < 1e-10 &&
                      worst_gamma < 1e-11 && std::abs(leg) < 1e-12 &&
                      worst_gram < 1e-10 && worst_mathieu < 1e-8;
    report(1, "special-function identity suite", pass,
           fmt("kummer %.1e, gamma %.1e, mathieu %.1e", worst_kummer,
               worst_gamma, worst_mathieu));
    CHECK(pass);
}

TEST_CASE("criterion 2: oscillatory Laguerre asymptotics sharpen with n") {
    // rms error over one local period at theta_* = pi/4, relative to the
    // envelope; plus the pointwise value at the criterion's anchor point.
    auto rms_err = [](int n) {
        const double u = 4.0 * n + 2.0;
        const double x0 = 0.5 * u;
        const double envelope = 2.0 / std::sqrt(pi * u);
        const double period = 4.0 * pi;
        double acc = 0.0;
        const int samples = 16;
        for (int i = 0; i < samples; ++i) {
            const double x = x0 + period * i / samples;
            const double d =
                laguerre_oscillation_asym(n, x) - laguerre_scaled(n, x);
            acc += d * d;
        }
        return std::sqrt(acc / samples) / envelope;
    };
    bool decreasing = true;
    double prev = 1e30, final_err = 0.0;
    for (int n : {25, 50, 100, 200}) {
        const double e = rms_err(n);
        if (e >= prev) decreasing = false;
        prev = e;
        final_err = e;
    }
    const double exact = laguerre_scaled(200, 401.0);
    const double pointwise =
        std::abs(laguerre_oscillation_asym(200, 401.0) - exact) /
        std::abs(exact);
    const bool pass = decreasing && final_err < 0.02 && pointwise < 0.02;
    report(2, "oscillatory Laguerre asymptotics", pass,
           fmt("rms(n=200) %.2e, pointwise %.2e", final_err, pointwise));
    CHECK(pass);
}

TEST_CASE("criterion 3: generating-function partial-wave identity") {
    const double alpha = -1.0;
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            const Vec3 khat = random_unit(rng);
            const double xm = u01(rng) * 20.0 * n / std::abs(alpha);
            const Vec3 x = xm * random_unit(rng);
            const double lhs = generating_function(n, alpha, x, khat);
            const Vec3 xh = xm > 0.0 ? x.hat() : Vec3{0, 0, 1};
            cplx rhs = 0.0;
            for (int l = 0; l < n; ++l) {
                cplx pair_sum = 0.0;
                for (int m = -l; m <= l; ++m)
                    pair_sum += spherical_harmonic(l, m, xh.x, xh.y, xh.z) *
                                std::conj(spherical_harmonic(l, m, khat.x,
                                                             khat.y, khat.z));
                rhs += 4.0 * pi * beta_coefficient(n, l) /
                       std::tgamma(2.0 * l + 2.0) *
                       std::pow(-std::abs(alpha) / n * xm, l) *
                       kummer_phi(cplx(-n + l + 1, 0.0),
                                  cplx(2.0 * l + 2.0, 0.0),
                                  std::abs(alpha) * xm / n)
                           .value *
                       pair_sum;
            }
            rhs *= std::exp(-std::abs(alpha) * xm / (2.0 * n));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    const bool pass = worst < 1e-8;
    report(3, "generating-function identity, n <= 6", pass,
           fmt("max deviation %.2e", worst));
    CHECK(pass);
}

TEST_CASE("criterion 4: Coulomb wave solves its equation at second order") {
    const double alpha = -1.0;
    const Vec3 k{0.2, 0.4, 1.1};
    CoulombWaveParams p = coulomb_params(alpha, k);
    const double k2 = dot(k, k);
    auto psi = [&](const Vec3& x) { return coulomb_wave(p, x).value; };
    auto residual = [&](const Vec3& x, double h) {
        cplx lap = -6.0 * psi(x);
        lap += psi({x.x + h, x.y, x.z}) + psi({x.x - h, x.y, x.z});
        lap += psi({x.x, x.y + h, x.z}) + psi({x.x, x.y - h, x.z});
        lap += psi({x.x, x.y, x.z + h}) + psi({x.x, x.y, x.z - h});
        return -lap / (h * h) + (alpha / x.norm()) * psi(x) - k2 * psi(x);
    };
    std::mt19937_64 rng(104);
    double worst_order = 1e9;
    for (int i = 0; i < 6; ++i) {
        Vec3 x = (1.0 + 4.0 * i / 6.0) * random_unit(rng);
        if (dot(x.hat(), k.hat()) > 0.9) x = -1.0 * x;
        const double order = std::log2(std::abs(residual(x, 0.02)) /
                                       std::abs(residual(x, 0.01)));
        worst_order = std::min(worst_order, order);
    }
    const bool pass = worst_order >= 1.8;
    report(4, "Coulomb-wave stencil residual order", pass,
           fmt("min observed order %.2f", worst_order));
    CHECK(pass);
}

TEST_CASE("criterion 5: stationary-phase geometry") {
    double worst_grad = 0.0, worst_hess = 0.0;
    bool signature_ok = true;
    for (double th : {0.2, 0.8, 1.5, 2.4}) {
        for (double s : {0.2, 0.5, 0.8}) {
            PhasePoint c = stationary_point(th, s);
            const double h = 1e-5;
            PhasePoint q = c;
            q.theta += h;
            PhasePoint r = c;
            r.theta -= h;
            const double dth = (phase_function(q) - phase_function(r)) / (2 * h);
            q = c;
            q.phi += h;
            r = c;
            r.phi -= h;
            const double dph = (phase_function(q) - phase_function(r)) / (2 * h);
            worst_grad = std::max(worst_grad, std::hypot(dth, dph));

            HessianCheck hc = hessian_check(th, s);
            worst_hess = std::max(
                worst_hess, std::abs(hc.analytic[0][0] - hc.numeric[0][0]) /
                                std::abs(hc.analytic[0][0]));
            worst_hess = std::max(
                worst_hess, std::abs(hc.analytic[1][1] - hc.numeric[1][1]) /
                                std::abs(hc.analytic[1][1]));
            if (hc.signature != 2) signature_ok = false;
        }
    }
    const bool pass = worst_grad <= 1e-6 && worst_hess <= 1e-4 && signature_ok;
    report(5, "stationary point, Hessian, signature", pass,
           fmt("|grad| %.1e, hessian dev %.1e", worst_grad, worst_hess));
    CHECK(pass);
}

TEST_CASE("criterion 6: concentration of the normalization integral") {
    const double alpha = -1.0;
    const Vec3 kz{0.0, 0.0, 1.0};
    const double th30 = pi / 6.0;
    const Vec3 k30{std::sin(th30), 0.0, std::cos(th30)};
    bool decreasing = true;
    double prev = 1e30;
    for (int n : {20, 40, 80}) {
        const double off = sigma_direct(n, alpha, k30, kz, 100, 80, 56).value.real();
        const double on = sigma_direct(n, alpha, kz, kz, 100, 80, 56).value.real();
        const double ratio = std::abs(off) / on;
        if (ratio >= prev) decreasing = false;
        prev = ratio;
    }
    const Vec3 kt{std::sin(0.3), 0.0, std::cos(0.3)};
    const double direct =
        sigma_direct(60, alpha, kt, kz, 150, 128, 96).value.real();
    const double stat = sigma_stationary(60, alpha, 0.3).imag();
    const double factor = stat / direct;
    const bool pass = decreasing && factor >= 0.5 && factor <= 2.0;
    report(6, "delta concentration and stationary-phase match", pass,
           fmt("30-degree ratio monotone %.0f, n=60 factor %.2f",
               decreasing ? 1.0 : 0.0, factor));
    CHECK(pass);
}

TEST_CASE("criterion 7: two-term expansion vs coefficient formulas") {
    // Stated family: f = 1, g = 13/6 + v(1-v), F in {1, v, 1-v}, fit on
    // {50,...,800}. The v-dependence of g feeds the IBP denominators a
    // relative O(16 sqrt(u)) correction whose n^{-1/3} decay keeps the
    // five-point fit an order of magnitude away from the formula values at
    // any reachable n, so this criterion records an honest failure; the
    // machinery itself is validated by the constant-profile kernel below
    // (semi-analytic match) and by the reduced kernel's 2% fit.
    std::vector<std::function<cplx(double, double)>> Fs = {
        [](double, double) { return cplx(1.0, 0.0); },
        [](double, double v) { return cplx(v, 0.0); },
        [](double, double v) { return cplx(1.0 - v, 0.0); }};
    double worst = 0.0;
    for (auto& F : Fs) {
        OmegaKernel k;
        k.beta = 1.0 / 16.0;
        k.f = [](double, double) { return 1.0; };
        k.g = [](double, double v) { return 13.0 / 6.0 + v * (1.0 - v); };
        k.F = F;
        OmegaExpansion e = fit_expansion(k, {50, 100, 200, 400, 800}, +1, 1e-8);
        const double scale =
            std::max(std::abs(e.D1_formula), std::abs(e.D2_formula));
        worst = std::max(worst,
                         std::abs(e.D1 - e.D1_formula) / std::abs(e.D1_formula));
        worst = std::max(
            worst, std::abs(e.D2 - e.D2_formula) /
                       std::max(std::abs(e.D2_formula), 0.05 * scale));
    }

    // Supporting evidence that the coefficient formulas are correct where
    // the expansion has converged: constant oscillation profile, small g.
    const double c = 0.01 * 13.0 / 6.0;
    OmegaKernel kc;
    kc.beta = 1.0 / 16.0;
    kc.f = [](double, double) { return 1.0; };
    kc.g = [c](double, double) { return c; };
    kc.F = [](double, double) { return cplx(1.0, 0.0); };
    VarpiSet vp = varpi_coefficients(kc, +1);
    const int nbig = 51200;
    const cplx asym_err =
        static_cast<double>(nbig) * omega_direct(kc, nbig, +1, 1e-10) -
        vp.upsilon * std::log(static_cast<double>(nbig)) - vp.d1();
    std::printf(
        "        criterion 07 context: constant-profile kernel asymptote "
        "matches formulas to %.1e at n=%d\n",
        std::abs(asym_err) / std::abs(vp.d1()), nbig);

    const bool pass = worst <= 0.05;
    report(7, "fit vs formulas, stated analytic family", pass,
           fmt("worst relative deviation %.2f (5%% required)", worst));
    CHECK(pass);
}

TEST_CASE("criterion 8: expansion constants of the reduced kernel") {
    OmegaKernel k = reduced_kernel();
    auto [b1, b2] = compute_B(k);
    const double ref_b1 = -0.310, ref_b2 = -0.63;
    const bool primary = std::abs(b1 - ref_b1) <= 0.1 * std::abs(ref_b1) &&
                         std::abs(b2 - ref_b2) <= 0.1 * std::abs(ref_b2);

    // Downgrade clause: the reduced kernel's fitted expansion must have the
    // (1/n, ln n/n) form with residual <= 2%.
    OmegaExpansion e =
        fit_expansion(k, {200, 400, 800, 1600, 3200}, +1, 1e-9);
    const bool downgraded = e.fit_residual <= 0.02;

    std::printf(
        "        criterion 08 context: computed B1 = %+.4f, B2 = %+.4f "
        "(reference %+.3f, %+.3f); fit D2 = %+.4f, residual %.4f\n",
        b1, b2, ref_b1, ref_b2, e.D2.real(), e.fit_residual);
    std::printf(
        "        criterion 08 context: the exact direction-averaged "
        "normalization forces B2_eff = 0, B1_eff = pi for the full "
        "integral; see README (reduced-patch constants differ)\n");

    const bool pass = primary || downgraded;
    report(8, primary ? "B constants within 10% of reference"
                      : "B constants: downgraded two-term-form check",
           pass, fmt("B1 %+.4f, B2 %+.4f, fit residual %.4f", b1, b2,
                     e.fit_residual));
    CHECK(pass);
}

TEST_CASE("criterion 9: resummation cross-checks") {
    auto make = [](double R, double d) {
        ResumParams p;
        p.alpha1 = -1.0;
        p.x = R * R;
        p.M = static_cast<int>(std::ceil(R / (2.0 * std::sqrt(d))));
        p.B1 = -0.310;
        p.B2 = -0.63;
        return p;
    };
    auto windowed = [&](double R0) {
        double num = 0.0, den = 0.0;
        for (int j = 0; j < 10; ++j) {
            const double R = R0 + j * (pi / 2.0) / 3.0;
            ResumParams p = make(R, 0.5);
            CrossCheck cc = poisson_crosscheck(p, 20 * p.M, 1.0);
            num += std::norm(cc.direct - cc.closed);
            den += std::norm(cc.closed);
        }
        return std::sqrt(num / den);
    };
    const double w30 = windowed(30.0);
    const double w100 = windowed(100.0);
    const double w300 = windowed(300.0);
    const bool dev_decreasing = w100 < w30 && w300 < w100;

    // zero crossings over one 2 pi window
    int crossings = 0;
    double worst_align = 0.0;
    {
        double prev = 0.0;
        bool first = true;
        for (int j = 0; j <= 63; ++j) {
            const double R = 100.0 + 2.0 * pi * j / 63.0;
            ResumParams p = make(R, 0.5);
            const double v = patched_tail_sum(p, 16 * p.M, 1.0).value.real();
            if (!first && prev * v < 0.0) {
                const double z = R - pi / 63.0;
                ++crossings;
                const double m = std::round(z / (pi / 2.0));
                worst_align = std::max(worst_align, std::abs(z - m * pi / 2.0));
            }
            prev = v;
            first = false;
        }
    }
    const bool zeros_ok = crossings == 4 && worst_align < pi / 2.0;

    ResumParams p100 = make(100.0, 0.5);
    ResumPieces rp = resum_pieces(p100, 1.0, 8, 0.1);
    const bool pieces_ok = std::abs(rp.III) + std::abs(rp.IV) <
                           0.1 * std::abs(rp.I + rp.II);

    const bool pass = dev_decreasing && zeros_ok && pieces_ok;
    report(9, "tail sum vs closed form, zeros, small pieces", pass,
           fmt("windowed dev %.2f -> %.2f -> %.2f", w30, w100, w300));
    CHECK(pass);
}

TEST_CASE("criterion 10: radial closed form, large-n limit, plus-power") {
    // closed form vs rotated-contour quadrature at n = 40
    const int n = 40;
    const double alpha_abs = 1.0, kmag = 1.0, eta = -0.5;
    const double r = alpha_abs / 2.0 * 1.3;
    const double theta = 0.3;
    const cplx ray = std::exp(cplx(0.0, -theta));
    auto laguerre_c = [](int m, cplx z) {
        cplx p0 = 1.0, p1 = 1.0 - z;
        if (m == 0) return p0;
        for (int j = 1; j < m; ++j) {
            cplx p2 = ((2.0 * j + 1.0 - z) * p1 - static_cast<double>(j) * p0) /
                      (j + 1.0);
            p0 = p1;
            p1 = p2;
        }
        return p1;
    };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-11;
    opt.initial_panels = 200;
    opt.max_panels = 20000;
    const double rate =
        alpha_abs / 2.0 * std::cos(theta) + kmag * n * std::sin(theta);
    const cplx direct =
        integrate_gk(
            [&](double tau) -> cplx {
                if (tau <= 0.0) return 0.0;
                const cplx t = tau * ray;
                return t * t *
                       std::exp(cplx(0.0, eta) * cplx(std::log(tau), -theta)) *
                       std::exp(-cplx(alpha_abs / 2.0, kmag * n) * t) *
                       laguerre_c(n - 1, r * t) * ray;
            },
            0.0, 60.0 / rate, opt)
            .value;
    auto hyp2f1 = [](int nn, cplx b, cplx z) {
        cplx term = 1.0, sum = 1.0;
        for (int j = 0; j < nn - 1; ++j) {
            term *= (cplx(1.0 - nn, 0.0) + static_cast<double>(j)) *
                    (b + static_cast<double>(j)) / ((1.0 + j) * (1.0 + j)) * z;
            sum += term;
        }
        return sum;
    };
    const cplx denom(alpha_abs / 2.0, kmag * n);
    const cplx closed = gamma_complex(cplx(3.0, eta)).value *
                        std::exp(-cplx(3.0, eta) * std::log(denom)) *
                        hyp2f1(n, cplx(3.0, eta), r / denom);
    const double dev_radial = std::abs(direct - closed) / std::abs(closed);

    // 2F1 -> Phi ratio error slope
    const cplx phi_limit =
        kummer_phi(cplx(3.0, eta), 1.0, cplx(0.0, alpha_abs / (2.0 * kmag) * 1.3))
            .value;
    std::vector<double> errs;
    for (int nn : {50, 100, 200, 400}) {
        const cplx dn(alpha_abs / 2.0, kmag * nn);
        errs.push_back(
            std::abs(hyp2f1(nn, cplx(3.0, eta), r / dn) / phi_limit - 1.0));
    }
    const double slope =
        std::log(errs.back() / errs.front()) / std::log(400.0 / 50.0);

    // regularized plus-power vs closed form
    double worst_pp = 0.0;
    for (double b : {0.3, 0.7, 1.5})
        for (double a : {0.5, 2.0}) {
            const cplx v = regularized_plus_power(b, a, 1e-2);
            const cplx cf = regularized_plus_power_closed(b, a, 1e-2);
            worst_pp = std::max(worst_pp, std::abs(v - cf) / std::abs(cf));
        }

    const bool pass = dev_radial <= 1e-6 && slope > -1.3 && slope < -0.7 &&
                      worst_pp <= 1e-6;
    report(10, "radial closed form, 2F1 limit slope, plus-power", pass,
           fmt("radial %.1e, slope %.2f, plus-power %.1e", dev_radial, slope,
               worst_pp));
    CHECK(pass);
}
