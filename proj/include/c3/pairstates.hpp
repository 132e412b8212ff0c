// Two-body Coulomb continuum and bound states, the three-body distorted
// wave built from three pair distortion factors, the generating function
// packaging all degenerate bound states of one principal number, and the
// projection quadrature recovering individual (n, l, m) kernels.
#pragma once

#include <functional>

#include "c3/kinematics.hpp"
#include "c3/specfun.hpp"

namespace c3 {

struct CoulombWaveParams {
    double alpha = 0.0;
    Vec3 k;
    double eta = 0.0;  // alpha / (2|k|)
    cplx norm;         // (2 pi)^{-3/2} e^{-pi eta/2} Gamma(1 + i eta)
};
CoulombWaveParams coulomb_params(double alpha, const Vec3& k);

// psi_c(x, k) = N_c e^{i<x,k>} Phi(-i eta, 1, i(xk - <x,k>)).
ComplexAmplitude coulomb_wave(const CoulombWaveParams& params, const Vec3& x);

// Distortion factor alone: Phi(-i eta, 1, i(xk - <x,k>)).
ComplexAmplitude coulomb_distortion(double eta, const Vec3& x, const Vec3& k);

// Three-body distorted wave N_0 e^{i<z,q>} D_1 D_2 D_3.
ComplexAmplitude bbk_wave(const SystemConfig& config, const Momenta& q,
                          const JacobiState& z);

struct BoundStateIndex {
    int n = 1;
    int l = 0;
    int m = 0;

    bool valid() const { return n >= 1 && 0 <= l && l < n && std::abs(m) <= l; }
};

// Radial bound state N e^{-|alpha| x / 2n} x^l Phi(-n+l+1, 2l+2, |alpha| x / n),
// normalised to unit L2 norm of psi_nlm Y_l^m.
double bound_radial(const BoundStateIndex& index, double alpha, double x);
double bound_norm(int n, int l, double alpha);

// Generating function over directions:
//   g_n(x, khat) = e^{-|alpha| x / 2n} L_{n-1}((|alpha|/n) x sin^2(theta/2)),
// with sin^2(theta/2) = (1 - <khat, xhat>)/2.
double generating_function(int n, double alpha, const Vec3& x, const Vec3& khat);

// beta_{nl} = (1-n)(2-n)...(l-n); empty product (l = 0) is 1.
double beta_coefficient(int n, int l);

// Closed-form partial component of the Coulomb wave decomposition:
//   Phi_l(k, x) = Gamma(i g + l + 1) / (Gamma(i g + 1) Gamma(2l + 2))
//                 (2 i k x)^l Phi(i g + l + 1, 2l + 2, -2 i k x).
cplx partial_component(double gamma, double k, double x, int l);

// Sphere-projection of a directional kernel onto one (n, l, m) channel:
//   (1/N_nl) beta_{nl} (1/(2l+1)!) (-|alpha|/n)^l  Int dw R(w) conj(Y_l^m(w)).
ComplexAmplitude reconstruct_R_nlm(const std::function<cplx(const Vec3&)>& Rn,
                                   const BoundStateIndex& index, double alpha,
                                   int theta_order = 64, int phi_order = 128);

}  // namespace c3
