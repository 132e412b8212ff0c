// The oscillatory double integral
//   Omega_n = Int_0^1 du Int_0^1 dv e^{-4 n beta u v f(u,v)}
//             e^{+- 4 i n u^{3/2} g(u,v)} F(u,v),
// its two-term (1/n, ln n/n) expansion, the quadrature formulas for the
// expansion coefficients, and the kernel produced by reducing the
// normalization integral to this form.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "c3/numerics.hpp"

namespace c3 {

struct OmegaKernel {
    std::function<double(double, double)> f;  // damping profile, >= 0
    std::function<double(double, double)> g;  // oscillation profile
    std::function<cplx(double, double)> F;    // amplitude
    double beta = 1.0 / 16.0;
};

// Direct tensor quadrature of Omega_n; phase_sign selects e^{+4i...} or
// its conjugate. Oscillation-aware: the u line is traversed in tau =
// sqrt(u) with an initial split proportional to the total phase.
cplx omega_direct(const OmegaKernel& kernel, int n, int phase_sign = +1,
                  double rel_tol = 1e-8, bool reverse_order = false);

// Expansion coefficients. With G(u,v) = beta v f - i sqrt(u) g and
// G'_v(0,v) = beta d/dv[v f(0,v)]:
//   w1 = Int_0^1 dt Int_0^1 dv e^{-4 t G(0,v)} F(0,v)
//   w2 = -F(0,1) (G(0,1)/G'_v(0,1)) Int_1^inf ln t e^{-4 t G(0,1)} dt
//   w3 = (1/6) (F(0,0)/G'_v(0,0)) Int_1^inf drho/rho e^{4 i s rho g(0,0)}
//   w4 = -i s (2 g(0,0)/3)(F(0,0)/G'_v(0,0)) Int_0^1 drho ln(rho)
//                                            e^{4 i s rho g(0,0)}
//   w5 = -(1/16)(1/G'_v(0,1)) d/dv[F(0,v)/G'_v(0,v)]|_1 E_2(4 G(0,1))
//   w6 =  (1/16)(1/G'_v(0,0)) d/dv[F(0,v)/G'_v(0,v)]|_0
//   w7 =  (1/16) Int_1^inf dt/t^2 Int_0^1 dv e^{-4 t G(0,v)}
//             d/dv[(1/G'_v) d/dv(F(0,v)/G'_v)]
// (s = phase_sign). The signs are arranged so that
//   n Omega_n = sum_i w_i + Upsilon ln n + o(1),  Upsilon = (1/12)
//   F(0,0)/G'_v(0,0).
struct VarpiSet {
    cplx w[7];
    cplx upsilon;

    cplx d1() const {
        cplx s = 0.0;
        for (const cplx& x : w) s += x;
        return s;
    }
};
VarpiSet varpi_coefficients(const OmegaKernel& kernel, int phase_sign = +1);

struct TwoTermFit {
    cplx D1, D2;
    double residual;  // relative rms misfit
};
// Least squares of y_i = D1 + D2 ln(n_i); y_i is n_i Omega_{n_i}.
TwoTermFit fit_two_term(const std::vector<int>& n_grid,
                        const std::vector<cplx>& y);

struct OmegaExpansion {
    cplx D1, D2;          // least-squares fit of n Omega_n on {1, ln n}
    double fit_residual;  // relative rms misfit
    cplx D1_formula, D2_formula;  // quadrature formulas for comparison
    double B1 = 0.0, B2 = 0.0;    // filled by compute_B paths
};

OmegaExpansion fit_expansion(const OmegaKernel& kernel,
                             const std::vector<int>& n_grid,
                             int phase_sign = +1, double rel_tol = 1e-8);

// B_i = (average of the two phase branches); real for real kernels.
std::pair<double, double> compute_B(const OmegaKernel& kernel);

// Kernel of the reduced normalization integral. Exact substitution chain
// s = 1 - zeta^2/16, alpha = rho sin(w), zeta = rho cos(w), u = rho^2,
// v = sin^2(w) applied to the angular stationary-phase form gives
//   beta = 1/16,
//   f(u,v) = (1 - beta u (1-v)) sinc^2(sqrt(uv)/4),
//   4 u^{3/2} g(u,v) = 4 [acos(w) - w sqrt(1-w^2)],
//       w = sqrt(1 - beta u(1-v)) cos(sqrt(uv)/4),
//   F(u,v) = s sinc(sqrt(uv)) /
//            (32 cos(a/4) sqrt(cos(a/2)) r1(u,v) r2(u,v)),  a = sqrt(uv),
// with r1, r2 the sqrt(u)-rescaled root factors. Regression-locked values:
// f(0,v) = 1, g(0,v) = 1/96, F(0,v) = 1/(2 sqrt(1+v)).
OmegaKernel reduced_kernel();

}  // namespace c3
