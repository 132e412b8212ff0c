// Tail of the pair-excitation sum: the oscillatory term function, its
// direct compensated summation, the Poisson-resummed phase functions and
// their stationary-point check, and the closed-form large-R asymptotics
// with the logarithmic denominator C(R).
#pragma once

#include "c3/numerics.hpp"

namespace c3 {

struct ResumParams {
    int M = 100;          // first summed principal number
    double x = 1.0;       // pair radius
    double alpha1 = -1.0; // attractive pair coupling
    double B1 = 0.0;
    double B2 = 0.0;

    double R() const { return std::sqrt(std::abs(alpha1) * x); }
    double d() const {
        const double r = R();
        return r * r / (4.0 * static_cast<double>(M) * M);
    }
    // C(R) = B1 + (3/2) B2 ln R - B2 ln 2 + i B2 pi/4,  D = B2/2.
    cplx C() const {
        const double r = R();
        return {B1 + 1.5 * B2 * std::log(r) - B2 * std::log(2.0),
                B2 * pi / 4.0};
    }
    double D() const { return 0.5 * B2; }
    bool valid() const { double dd = d(); return dd > 0.0 && dd < 1.0; }
};

// n-th tail term: with w = |alpha_1| t_n / 4 and t_n = x/n^2,
//   Theta(n) = (-1)^n / (n^4 (B2 ln n + B1)) U (8 pi n |alpha_1| t_n)^{-1/2}
//              w^{-1/4} (1-w)^{-1/4} cos(2 n [acos(sqrt w)
//              - sqrt(w) sqrt(1-w)]).
// Requires 0 < w < 1 (the oscillation window).
cplx theta_term(const ResumParams& params, int n, cplx U);

struct TailSum {
    cplx value;
    double tail_bound;  // integral bound from the n^{-3}/ln n envelope
    int terms;
};
TailSum direct_tail_sum(const ResumParams& params, int n_max, cplx U,
                        bool reverse_order = false);

// Same sum with the C2 patch chi(s_n) applied near s = d (s_n =
// R^2/(4n^2)), matching the patch in the resummed integrals so the two
// sides of the Poisson identity treat the n = M edge identically.
TailSum patched_tail_sum(const ResumParams& params, int n_max, cplx U,
                         double patch_delta_frac = 0.1);

// True iff the resummation phase derivatives
//   Phi_l^{+-}'(s) = -(1/2 s^{3/2}) { pi/2 + l pi +- (acos(sqrt s)
//                    + sqrt(s(1-s))) }
// vanish nowhere on (0, d) for all |l| <= l_range (grid scan, both signs).
bool phase_no_stationary_check(double d, int l_range, int grid_points = 2000);

// Upsilon-hat(R) = -i e^{2iR} Int_0^inf dt e^{-t/3} / (C(R) - D ln t).
cplx upsilon_hat(const ResumParams& params);
cplx upsilon_hat_general(double R, cplx C, double D);

// Both closed forms carry R^{-9/2}: the u = R/(2 sqrt s) substitution in
// the resummed tail gives the measure U R^{-7/2}/sqrt(pi) ds, and the
// s -> 0 endpoint analysis contributes one more 1/R.
struct ClosedForm {
    cplx upsilon_form;  // U (Yhat + Yhat*) / (2 sqrt(pi) R^{9/2})
    cplx leading_form;  // (3/sqrt(pi)) U sin(2R) / (C(R) R^{9/2})
    double rel_dev;
};
ClosedForm closed_form_psi_acc(const ResumParams& params, cplx U);

// The four contour pieces of the resummed integral. piece I carries
// l >= 0 with the decreasing branch, II its conjugate family; III and IV
// are the opposite pairings, asymptotically negligible.
struct ResumPieces {
    cplx I, II, III, IV;
};
ResumPieces resum_pieces(const ResumParams& params, cplx U, int l_terms = 10,
                         double patch_delta_frac = 0.1);

struct CrossCheck {
    cplx direct;
    cplx closed;
    double rel_dev;
};
CrossCheck poisson_crosscheck(const ResumParams& params, int n_max, cplx U);

}  // namespace c3
