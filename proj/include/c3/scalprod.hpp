// Weak-asymptotic scalar product of the three-body distorted wave with a
// generating function: kinematic channel coefficients, the closed-form
// radial integral, the sphere integral against the two-body scattering
// amplitude, the regularized plus-power distribution, and the pointwise
// kernel ansatz built from all of them.
#pragma once

#include <functional>

#include "c3/kinematics.hpp"
#include "c3/specfun.hpp"

namespace c3 {

enum class Channel { in, out };

struct ChannelCoefficients {
    cplx B0_in, B0_out;
    Vec3 L_in, L_out;
    double omega = 0.0;  // eta_2 + eta_3
};

// B_0^{in/out} and L_{in/out} of the converging/diverging spectator waves:
//   B0_in = A0 G(-i eta2) G(-i eta3) e^{-pi w/2} (1-e^{2 pi eta2})
//           (1-e^{2 pi eta3}) [r2 k2 (1-<p,k2>)]^{i eta2}
//           [r3 k3 (1+<p,k3>)]^{i eta3},   r2 = r3 = sqrt(3)/2,
//   L_in  = (1/sqrt 3)(eta2 (k2-p)/(1-<p,k2>) + eta3 (k3+p)/(1+<p,k3>)),
// the `out` pair with every spectator sign flipped. A0 = -(1/4 pi^2)
// N_c^{(2)} N_c^{(3)}.
ChannelCoefficients channel_coefficients(const SystemConfig& config,
                                         const Momenta& q);
// Same formulas from raw ingredients (used to probe the phat -> -phat
// exchange symmetry at fixed pair data).
ChannelCoefficients channel_coefficients_from(double eta2, double eta3,
                                              double k2mag, double k3mag,
                                              const Vec3& k2hat,
                                              const Vec3& k3hat,
                                              const Vec3& phat);

// Z_1 closed form:
//   -(N_c^{(1)} e^{pi eta/2} / k^{4+i eta}) <khat, L> Gamma(3+i eta)
//     Phi(3+i eta, 1, i (|alpha_1|/2k)(1 + <khat2, khat>)).
cplx z_in_closed(const SystemConfig& config, const Momenta& q,
                 const Vec3& khat2, Channel channel = Channel::in);

// Angular scattering amplitude s_c(xhat, k); pluggable. The default is the
// smooth outgoing part read off the exact large-x Coulomb asymptotics:
//   s_c = -(k e^{pi eta/2} / Gamma(-i eta)) (2 k sin^2(theta/2))^{-1-i eta},
// which vanishes in the neutral limit.
using AngularAmplitude =
    std::function<cplx(const Vec3& xhat, const Vec3& k, double eta)>;
cplx coulomb_sc(const Vec3& xhat, const Vec3& k, double eta);

struct HResult {
    cplx value;
    double cap_sensitivity;  // |H(cap) - H(2 cap)|
};

// H^{in/out} = Int dxhat <xhat, L> Phi(3+i eta, 1,
//              -i(|alpha_1|/2k)(1 - <khat2, xhat>)) s_c(xhat, k),
// with a small cap of half-angle `cap` excised around the forward
// direction of s_c. The integrand is only Abel-convergent there: the
// excised ring circles the limit with non-vanishing radius. When
// `coulomb_forward_closure` is set (meaningful for the default s_c) the
// analytic Abel value of the cap,
//   2 pi <khat, L> Phi(..at xhat = khat) e^{pi eta/2} (k eps)^{-i eta}
//       / (i eta Gamma(-i eta)),           eps = 1 - cos(cap),
// is added, which removes the cap dependence to O(cap).
HResult h_integral(const SystemConfig& config, const Momenta& q,
                   const Vec3& khat2, Channel channel,
                   const AngularAmplitude& sc = coulomb_sc,
                   double cap = 1e-3, int phi_order = 64,
                   bool coulomb_forward_closure = true);

// The four smooth factors of the weak asymptotics. The distributional
// delta(yhat, -+phat), 1/y^2 and e^{-+iyp + i omega ln y} factors are
// carried symbolically and are not part of the numbers below.
struct WeakAsymptotics {
    cplx prefactor_in;   // 2 pi B0_in / p
    cplx prefactor_out;  // -2 pi B0_out / p
    cplx Z_in, Z_out;    // Z_1 + Z_2 assembled
    HResult H_in, H_out;
};
WeakAsymptotics q_weak_asymptotics(const SystemConfig& config, const Momenta& q,
                                   const Vec3& khat2,
                                   const AngularAmplitude& sc = coulomb_sc,
                                   double cap = 1e-3);

// Int_0^inf sigma^{ib} e^{-(eps + i a) sigma} dsigma by quadrature on the
// log scale; the closed form is Gamma(1+ib)/(eps+ia)^{1+ib}.
cplx regularized_plus_power(double b, double a, double eps);
cplx regularized_plus_power_closed(double b, double a, double eps);

// Pointwise kernel ansatz value:
//   sum over channels of w0^{ch}/(n^3 (B2 ln n + B1)) (t - p/sqrt(E))_+^{ib}
//   chi_p(t) ce_{2l}(phi, s) Z^{ch},
// with w0^{ch} = B0^{ch} |alpha_1|^3 E^{1+ib/2} e^{pi b/2} /
//                (2^5 pi^2 A_0^{(2l)} Gamma(1+ib)).
struct KernelRnParams {
    SystemConfig config;
    double B1 = 0.0, B2 = 0.0;
    MathieuEven mathieu;
    double chi_width = 0.05;  // smooth switch-on width of chi_p above p/sqrt(E)
    AngularAmplitude sc = coulomb_sc;
};
cplx kernel_Rn(const KernelRnParams& params, const Momenta& q, int n, double t,
               double phi, const Vec3& khat);

}  // namespace c3
