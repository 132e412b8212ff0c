// Scalar special functions: Laguerre polynomials (exact recurrence and
// large-index oscillatory asymptotics), the confluent hypergeometric
// function, the complex gamma function, Legendre polynomials, spherical
// harmonics and even Mathieu functions.
#pragma once

#include <complex>
#include <vector>

#include "c3/numerics.hpp"

namespace c3 {

// Complex value together with an absolute error estimate.
struct ComplexAmplitude {
    cplx value;
    double error = 0.0;
};

// L_n(x) by the stable three-term recurrence.
double laguerre(int n, double x);

// e^{-x/2} L_n(x); the scaled recurrence never overflows in the
// oscillation window.
double laguerre_scaled(int n, double x);

// Behaviour window of L_n around the turning scale upsilon = 4n+2.
// Oscillatory for Delta < x < upsilon - Delta with Delta = upsilon^0.3.
struct LaguerreRegime {
    int n;
    double x;
    double upsilon;     // 4n + 2
    double theta_star;  // x = upsilon cos^2(theta_star), in (0, pi/2)
    bool oscillation;
};
LaguerreRegime laguerre_regime(int n, double x);

// Oscillation-window asymptotics of e^{-x/2} L_n(x):
//   2 (-1)^n (pi u sin 2t)^{-1/2} sum_{m<K} A_m(t) (u/4 sin 2t)^{-m}
//                                              sin(Theta + 3m pi/2),
// with 4 Theta = u (2t - sin 2t) + pi, A_0 = 1 and
// A_1 = (1/12)(5/(4 sin^2 t) - sin^2 t - 1). K = 1 keeps the leading term.
double laguerre_oscillation_asym(int n, double x, int correction_order = 1);

// Kummer's confluent hypergeometric Phi(a, c, z). Taylor series with
// term-ratio stopping; for Re z well negative the Kummer transformation
// Phi(a,c,z) = e^z Phi(c-a, c, -z) is applied first. Terminates exactly
// when a is a non-positive integer.
ComplexAmplitude kummer_phi(cplx a, cplx c, cplx z);

// Gamma(z) anywhere off the non-positive integers (Lanczos + reflection).
ComplexAmplitude gamma_complex(cplx z);

// P_l(t) on [-1, 1].
double legendre_p(int l, double t);

// Orthonormal spherical harmonic, Condon-Shortley phase.
cplx spherical_harmonic(int l, int m, double nx, double ny, double nz);
cplx spherical_harmonic(int l, int m, const double dir[3]);

// Even cosine-elliptic Mathieu function ce_{2l}(phi, s) and the
// associated first-kind function Ce_{2l}(zeta, s), both built from the
// Fourier coefficients A_{2r}^{(2l)} of the standard three-term
// recurrence (tridiagonal eigenproblem, coefficients normalised by
// 2 A_0^2 + sum_{r>=1} A_{2r}^2 = 1).
struct MathieuEven {
    int order_2l;
    double s;
    double char_value;           // characteristic value a_{2l}(s)
    std::vector<double> coeffs;  // A_0, A_2, A_4, ...

    double ce(double phi) const;
    double Ce(double zeta) const;
    // Max residual of the defining recurrence over the retained rows.
    double recurrence_residual() const;
};
MathieuEven mathieu_even(int order_2l, double s);
double mathieu_ce(int order_2l, double s, double phi);

// Elliptic parameters (zeta, vartheta) with
//   z1 = 2 sqrt(s) sqrt(cosh^2 zeta - sin^2 vartheta),
//   tan(alpha) = tanh(zeta) tan(vartheta),
// used by the plane-wave averaging identity for ce_{2l}.
struct EllipticArgs {
    double zeta;
    double vartheta;
};
EllipticArgs mathieu_plane_wave_args(double z1, double alpha, double s);

}  // namespace c3
