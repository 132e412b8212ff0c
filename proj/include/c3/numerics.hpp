// Shared numerical kernels: Gauss rules, a symmetric tridiagonal
// eigensolver, adaptive Gauss-Kronrod integration and sphere grids.
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace c3 {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Raised when an iterative scheme fails to reach its tolerance.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Compensated (Kahan) accumulator; summation order fixed by the caller.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanSumC {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);

// Gauss-Laguerre rule for weight e^{-x} on [0, inf). The weights returned
// are the scaled ones w_i * e^{x_i}, which stay representable for large n;
// integrands must therefore carry their own e^{-x} decay.
QuadRule gauss_laguerre_scaled(int n);

// (e^{-x/2} L_n(x), e^{-x/2} L_{n-1}(x)) by a recurrence that rescales on
// the fly, so intermediates never under- or overflow even where the seed
// e^{-x/2} itself would.
struct ScaledLaguerrePair {
    double ln;
    double lnm1;
};
ScaledLaguerrePair laguerre_scaled_pair(int n, double x);

// Eigendecomposition of a symmetric tridiagonal matrix (diag d, off-diag e,
// e[i] couples rows i and i+1). Implicit-shift QL. Eigenvalues are returned
// ascending. If `vectors` is non-null it receives the eigenvectors as rows.
void symtridiag_eig(std::vector<double> d, std::vector<double> e,
                    std::vector<double>& eigenvalues,
                    std::vector<std::vector<double>>* vectors);

struct AdaptiveOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int initial_panels = 1;
    int max_panels = 200000;
    bool reverse_order = false;  // flip panel traversal; result must not move
};

struct QuadResult {
    cplx value;
    double error;     // accumulated error estimate
    long evaluations; // integrand calls
};

// Adaptive Gauss7/Kronrod15 on [a, b] for complex-valued integrands.
// Panels are refined worst-first; the final sum runs in interval order so
// the result does not depend on the processing sequence.
QuadResult integrate_gk(const std::function<cplx(double)>& f, double a,
                        double b, const AdaptiveOptions& opt = {});

// Real convenience wrapper.
double integrate_gk_real(const std::function<double(double)>& f, double a,
                         double b, const AdaptiveOptions& opt = {});

// Product grid on S^2: Gauss-Legendre in cos(theta) x uniform azimuth.
// Exact for spherical polynomials of degree < min(2*n_theta, n_phi).
struct SphereGrid {
    struct Node {
        double ct, st, phi, weight; // cos/sin of polar angle, azimuth
        double nx, ny, nz;          // unit vector
    };
    std::vector<Node> nodes;

    SphereGrid(int n_theta, int n_phi);

    template <class F>
    auto integrate(F&& f) const {
        using R = decltype(f(nodes[0]));
        if constexpr (std::is_same_v<R, cplx>) {
            KahanSumC acc;
            for (const auto& nd : nodes) acc.add(nd.weight * f(nd));
            return acc.value();
        } else {
            KahanSum acc;
            for (const auto& nd : nodes) acc.add(nd.weight * f(nd));
            return acc.value();
        }
    }
};

// Q(w) = acos(w) - w sqrt(1 - w^2) = 2 Int_w^1 sqrt(1-t^2) dt for w in
// [-1, 1]; series near w = 1 avoids the cancellation of the two O(sqrt(d))
// pieces whose difference is O(d^{3/2}).
double circle_segment(double w);

// Legendre polynomial evaluation lives in specfun; declared here to let the
// quadrature construction stay self-contained.
double legendre_p(int l, double t);

}  // namespace c3
