#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "c3/specfun.hpp"

using namespace c3;

namespace {

// Independent series oracle: L_n(x) = sum_k binom(n,k) (-x)^k / k!.
double laguerre_series(int n, double x) {
    double sum = 0.0, binom = 1.0, powx = 1.0, kfact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            binom *= static_cast<double>(n - k + 1) / k;
            powx *= -x;
            kfact *= k;
        }
        sum += binom * powx / kfact;
    }
    return sum;
}

double trapez_period(const std::function<double(double)>& f, int n = 2048) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += f(2.0 * pi * i / n);
    return acc * 2.0 * pi / n;
}

}  // namespace

TEST_CASE("laguerre recurrence basics and series oracle") {
    CHECK(laguerre(0, 7.3) == doctest::Approx(1.0));
    CHECK(laguerre(1, 2.0) == doctest::Approx(-1.0));
    CHECK(laguerre(5, 1.0) == doctest::Approx(laguerre_series(5, 1.0)).epsilon(1e-13));
    for (int n : {2, 7, 12}) {
        for (double x : {0.1, 1.7, 9.4}) {
            CHECK(laguerre(n, x) ==
                  doctest::Approx(laguerre_series(n, x)).epsilon(1e-11));
        }
    }
    CHECK(laguerre_scaled(9, 3.0) ==
          doctest::Approx(std::exp(-1.5) * laguerre(9, 3.0)).epsilon(1e-13));
}

TEST_CASE("laguerre regime bookkeeping") {
    // x = upsilon cos^2(theta_star) holds to machine precision inside the
    // oscillation window, and the window respects Delta = upsilon^0.3.
    for (int n : {10, 50, 300}) {
        const double u = 4.0 * n + 2.0;
        for (double frac : {0.1, 0.5, 0.85}) {
            LaguerreRegime r = laguerre_regime(n, frac * u);
            CHECK(r.upsilon == doctest::Approx(u));
            CHECK(u * std::cos(r.theta_star) * std::cos(r.theta_star) ==
                  doctest::Approx(frac * u).epsilon(1e-14));
            CHECK(r.oscillation);
        }
        const double delta = std::pow(u, 0.3);
        CHECK_FALSE(laguerre_regime(n, 0.5 * delta).oscillation);
        CHECK_FALSE(laguerre_regime(n, u - 0.5 * delta).oscillation);
    }
}

TEST_CASE("laguerre oscillation asymptotics against the exact recurrence") {
    // x = upsilon/2, i.e. theta_* = pi/4.
    {
        const double exact = laguerre_scaled(100, 201.0);
        const double asym = laguerre_oscillation_asym(100, 201.0);
        CHECK(std::abs(asym - exact) / std::abs(exact) < 0.05);
    }
    {
        const double exact = laguerre_scaled(10, 10.5);
        const double asym = laguerre_oscillation_asym(10, 10.5);
        CHECK(std::abs(asym - exact) / std::abs(exact) < 0.10);
    }
    // Single points sit at the mercy of the correction term's own phase, so
    // the sweep measures an rms error over one local oscillation period,
    // relative to the envelope amplitude.
    auto rms_err = [](int n, double ct2) {
        const double u = 4.0 * n + 2.0;
        const double x0 = ct2 * u;
        const double st2 = 1.0 - ct2;
        const double envelope =
            2.0 / std::sqrt(pi * u * 2.0 * std::sqrt(ct2 * st2));
        const double period = 2.0 * pi / (st2 / (2.0 * std::sqrt(ct2 * st2)));
        double acc = 0.0;
        const int samples = 16;
        for (int i = 0; i < samples; ++i) {
            const double x = x0 + period * i / samples;
            const double diff =
                laguerre_oscillation_asym(n, x) - laguerre_scaled(n, x);
            acc += diff * diff;
        }
        return std::sqrt(acc / samples) / envelope;
    };
    // Error at theta_* = pi/4 falls like 1/n: factor ~4 from 50 to 200.
    const double ratio = rms_err(50, 0.5) / rms_err(200, 0.5);
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);
    for (double ct2 : {0.25, 0.5, 0.75}) {  // cos^2(theta_*)
        double prev = 1e9;
        for (int n : {25, 50, 100, 200}) {
            const double err = rms_err(n, ct2);
            CHECK(err < 1.2 * prev);
            prev = err;
        }
    }
    CHECK_THROWS_AS(laguerre_oscillation_asym(10, 41.9), std::domain_error);
    // The A_1 correction shrinks the error where the leading term is coarse.
    {
        const double exact = laguerre_scaled(30, 61.0);
        const double e1 = std::abs(laguerre_oscillation_asym(30, 61.0, 1) - exact);
        const double e2 = std::abs(laguerre_oscillation_asym(30, 61.0, 2) - exact);
        CHECK(e2 < e1);
    }
}

TEST_CASE("kummer_phi trivial values and polynomial identity") {
    CHECK(std::abs(kummer_phi(cplx(2.0, 1.0), cplx(3.0, 0.0), 0.0).value -
                   1.0) < 1e-15);
    CHECK(std::abs(kummer_phi(0.0, 1.0, cplx(5.0, 2.0)).value - 1.0) < 1e-15);
    // Phi(1-n, 1, t) = L_{n-1}(t).
    {
        const cplx v = kummer_phi(cplx(-5.0, 0.0), 1.0, 3.7).value;
        CHECK(std::abs(v - laguerre(5, 3.7)) < 1e-10 * std::abs(v));
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ts(0.0, 30.0);
    for (int n = 2; n <= 20; n += 3) {
        const double t = ts(rng);
        const cplx v = kummer_phi(cplx(1.0 - n, 0.0), 1.0, t).value;
        const double l = laguerre(n - 1, t);
        CHECK(std::abs(v - l) <= 1e-10 * (1.0 + std::abs(l)));
    }
    CHECK_THROWS_AS(kummer_phi(0.5, cplx(-2.0, 0.0), 1.0), std::domain_error);
}

TEST_CASE("kummer transformation identity on random arguments") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int done = 0;
    while (done < 20) {
        cplx a(u(rng), u(rng)), c(u(rng), u(rng)), z(u(rng), u(rng));
        // Keep c away from the pole line.
        if (c.real() < 0.5 && std::abs(c.imag()) < 0.3) continue;
        const cplx lhs = kummer_phi(a, c, z).value;
        const cplx rhs = std::exp(z) * kummer_phi(c - a, c, -z).value;
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
        ++done;
    }
}

TEST_CASE("gamma_complex values, reflection oracle, recurrence") {
    CHECK(gamma_complex(4.0).value.real() == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(gamma_complex(0.5).value.real() ==
          doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
    {
        const cplx g = gamma_complex(cplx(1.0, 0.7)).value;
        const double lhs = std::norm(g);
        const double rhs = pi * 0.7 / std::sinh(pi * 0.7);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    int done = 0;
    while (done < 25) {
        cplx z(u(rng), u(rng));
        if (z.real() < 0.0 && std::abs(z.imag()) < 0.5) continue;  // pole belt
        const cplx a = gamma_complex(z + 1.0).value;
        const cplx b = z * gamma_complex(z).value;
        CHECK(std::abs(a - b) <= 1e-11 * std::abs(a));
        ++done;
    }
    CHECK_THROWS_AS(gamma_complex(cplx(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("legendre polynomials and orthogonality") {
    CHECK(legendre_p(0, 0.3) == doctest::Approx(1.0));
    CHECK(legendre_p(1, -0.4) == doctest::Approx(-0.4));
    QuadRule gl = gauss_legendre(32);
    double acc = 0.0;
    for (int i = 0; i < 32; ++i)
        acc += gl.w[i] * legendre_p(3, gl.x[i]) * legendre_p(5, gl.x[i]);
    CHECK(std::abs(acc) < 1e-12);
    double norm4 = 0.0;
    for (int i = 0; i < 32; ++i)
        norm4 += gl.w[i] * legendre_p(4, gl.x[i]) * legendre_p(4, gl.x[i]);
    CHECK(norm4 == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("spherical harmonics: axis values and Gram matrix") {
    CHECK(std::abs(spherical_harmonic(0, 0, 0.3, 0.4, std::sqrt(0.75)) -
                   cplx(1.0 / std::sqrt(4.0 * pi), 0.0)) < 1e-14);
    CHECK(std::abs(spherical_harmonic(1, 0, 0.0, 0.0, 1.0) -
                   cplx(std::sqrt(3.0 / (4.0 * pi)), 0.0)) < 1e-14);
    SphereGrid grid(16, 32);
    for (int l1 = 0; l1 <= 3; ++l1)
        for (int m1 = -l1; m1 <= l1; ++m1)
            for (int l2 = l1; l2 <= 3; ++l2)
                for (int m2 = -l2; m2 <= l2; ++m2) {
                    cplx g = grid.integrate([&](const SphereGrid::Node& nd) {
                        return spherical_harmonic(l1, m1, nd.nx, nd.ny, nd.nz) *
                               std::conj(spherical_harmonic(l2, m2, nd.nx,
                                                            nd.ny, nd.nz));
                    });
                    const double expect = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
                    CHECK(std::abs(g - expect) < 1e-10);
                }
}

TEST_CASE("mathieu ce: s -> 0 limit and recurrence residual") {
    MathieuEven me2 = mathieu_even(2, 0.0);
    for (double phi : {0.0, 0.7, 2.1})
        CHECK(me2.ce(phi) == doctest::Approx(std::cos(2.0 * phi)).epsilon(1e-12));
    MathieuEven me0 = mathieu_even(0, 0.0);
    CHECK(me0.ce(1.234) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    for (int order : {0, 2, 4})
        for (double s : {0.1, 0.5, 2.0}) {
            MathieuEven me = mathieu_even(order, s);
            CHECK(me.recurrence_residual() < 1e-10);
            double norm = 2.0 * me.coeffs[0] * me.coeffs[0];
            for (size_t r = 1; r < me.coeffs.size(); ++r)
                norm += me.coeffs[r] * me.coeffs[r];
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("mathieu plane-wave averaging identities") {
    struct Probe {
        double z1, alpha;
    };
    const Probe probes[] = {{1.3, 0.4}, {0.7, 1.1}};
    for (int order : {0, 2, 4}) {
        for (double s : {0.1, 0.5, 2.0}) {
            MathieuEven me = mathieu_even(order, s);
            for (const Probe& pr : probes) {
                // sin average vanishes identically.
                const double sin_avg = trapez_period([&](double phi) {
                    return std::sin(pr.z1 * std::cos(phi - pr.alpha)) *
                           me.ce(phi);
                });
                CHECK(std::abs(sin_avg) < 1e-9);

                // cos average matches the product of elliptic values.
                const double cos_avg = trapez_period([&](double phi) {
                    return std::cos(pr.z1 * std::cos(phi - pr.alpha)) *
                           me.ce(phi);
                });
                EllipticArgs ea = mathieu_plane_wave_args(pr.z1, pr.alpha, s);
                const double rhs = 2.0 * pi * me.coeffs[0] /
                                   (me.ce(0.0) * me.ce(pi / 2.0)) *
                                   me.Ce(ea.zeta) * me.ce(ea.vartheta);
                CHECK(std::abs(cos_avg - rhs) < 1e-8);
            }
        }
    }
}

TEST_CASE("mathieu elliptic args satisfy their defining constraints") {
    EllipticArgs ea = mathieu_plane_wave_args(1.3, 0.4, 0.5);
    const double z1 = 2.0 * std::sqrt(0.5) *
                      std::sqrt(std::cosh(ea.zeta) * std::cosh(ea.zeta) -
                                std::sin(ea.vartheta) * std::sin(ea.vartheta));
    CHECK(z1 == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(std::tanh(ea.zeta) * std::tan(ea.vartheta) ==
          doctest::Approx(std::tan(0.4)).epsilon(1e-12));
}
