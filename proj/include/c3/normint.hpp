// The overlap of two generating functions with different directions,
// computed directly (Gauss-Laguerre x sphere grid), via its
// stationary-phase reduction to a single radial-scale integral, and the
// geometry checks of that reduction (stationary point, Hessian,
// signature).
#pragma once

#include "c3/kinematics.hpp"
#include "c3/specfun.hpp"

namespace c3 {

// Direct evaluation of
//   Sigma_n = (n^3/|alpha|^3) Int dxhat Int_0^inf dt t^2 e^{-t}
//             L_{n-1}(t sin^2(theta/2)) L_{n-1}(t sin^2(theta~/2)),
// with cos(theta) = <xhat, khat1>, cos(theta~) = <xhat, khat2>.
// The radial rule order starts at `radial_order` and doubles once for the
// error estimate; the angular grid is refined the same way.
ComplexAmplitude sigma_direct(int n, double alpha, const Vec3& khat1,
                              const Vec3& khat2, int radial_order = 200,
                              int theta_order = 96, int phi_order = 64);

// Angular phase of the reduction. The frame puts khat'' on the z axis;
// khat' sits at polar angle theta_kprime with azimuth phi_kprime.
struct PhasePoint {
    double theta = 0.0;
    double phi = 0.0;
    double theta_kprime = 0.0;
    double s = 0.5;  // rescaled radial variable in (0, 1)
    double phi_kprime = 0.0;
};

// S(theta, phi) = 2 acos(sqrt(s) sin(theta/2)) + 2 acos(sqrt(s) sin(theta~/2))
//   - 2 sqrt(s) sqrt(1 - s sin^2(theta/2)) sin(theta/2)
//   - 2 sqrt(s) sqrt(1 - s sin^2(theta~/2)) sin(theta~/2),
// cos(theta~) = sin(theta) sin(theta_k') cos(phi - phi_k')
//             + cos(theta) cos(theta_k').
double phase_function(const PhasePoint& p);

// Stationary point (theta_0, phi_0) = (pi - theta_k'/2, phi_k' + pi).
PhasePoint stationary_point(double theta_kprime, double s,
                            double phi_kprime = 0.0);

struct HessianCheck {
    double analytic[2][2];  // (theta, phi) block at the stationary point
    double numeric[2][2];
    double det_analytic;
    int signature;  // nu_+ - nu_-
    bool degenerate;
};
HessianCheck hessian_check(double theta_kprime, double s);

// Stationary-phase reduction: the complex s-integral
//   (2^4 n^4/|alpha|^3) Int_0^1 ds s e^{-4 n s sin^2(t/4)}
//       e^{i(n S0(s) + pi/2)} /
//       (cos(t/4) sqrt(cos(t/2)) sqrt(1 - s cos^2(t/4)) sqrt(1 - s cos(t/2)))
// with t = theta_kprime and S0 the phase at the stationary point. The
// imaginary part approximates Sigma_n. Evaluated after s = 1 - zeta^2/16.
cplx sigma_stationary(int n, double alpha, double theta_kprime);

}  // namespace c3
