#include "c3/accsum.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace c3 {

cplx theta_term(const ResumParams& params, int n, cplx U) {
    if (n < 1) throw std::domain_error("theta_term: need n >= 1");
    const double aa = std::abs(params.alpha1);
    const double tn = params.x / (static_cast<double>(n) * n);
    const double w = aa * tn / 4.0;
    if (!(w > 0.0 && w < 1.0))
        throw std::domain_error("theta_term: outside the oscillation window");
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double denom = std::pow(static_cast<double>(n), 4) *
                         (params.B2 * std::log(static_cast<double>(n)) + params.B1);
    const double amp = 1.0 / std::sqrt(8.0 * pi * n * aa * tn) *
                       std::pow(w, -0.25) * std::pow(1.0 - w, -0.25);
    const double phase = 2.0 * n * circle_segment(std::sqrt(w));
    return sign / denom * U * amp * std::cos(phase);
}

TailSum direct_tail_sum(const ResumParams& params, int n_max, cplx U,
                        bool reverse_order) {
    if (n_max < params.M)
        throw std::domain_error("direct_tail_sum: n_max below the first term");
    std::vector<cplx> terms;
    terms.reserve(n_max - params.M + 1);
    for (int n = params.M; n <= n_max; ++n)
        terms.push_back(theta_term(params, n, U));
    KahanSumC acc;
    if (reverse_order)
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) acc.add(*it);
    else
        for (const cplx& t : terms) acc.add(t);
    TailSum out;
    out.value = acc.value();
    out.terms = static_cast<int>(terms.size());
    // Envelope |Theta| ~ c n^{-3}/ln n: integral comparison for the tail.
    out.tail_bound = std::abs(terms.back()) * n_max / 2.0;
    return out;
}

TailSum patched_tail_sum(const ResumParams& params, int n_max, cplx U,
                         double patch_delta_frac) {
    if (n_max < params.M)
        throw std::domain_error("patched_tail_sum: n_max below the first term");
    const double d = params.d();
    const double delta = patch_delta_frac * d;
    const double R = params.R();
    KahanSumC acc;
    cplx last = 0.0;
    int terms = 0;
    for (int n = params.M; n <= n_max; ++n) {
        const double s = R * R / (4.0 * static_cast<double>(n) * n);
        double chi = 1.0;
        if (s > d - delta) {
            const double r = (d - s) / delta;
            chi = r <= 0.0 ? 0.0 : (r >= 1.0 ? 1.0 : r * r * (3.0 - 2.0 * r));
        }
        last = chi * theta_term(params, n, U);
        acc.add(last);
        ++terms;
    }
    TailSum out;
    out.value = acc.value();
    out.terms = terms;
    out.tail_bound = std::abs(theta_term(params, n_max, U)) * n_max / 2.0;
    return out;
}

bool phase_no_stationary_check(double d, int l_range, int grid_points) {
    if (!(d > 0.0 && d < 1.0))
        throw std::domain_error("phase_no_stationary_check: need 0 < d < 1");
    for (int l = -l_range; l <= l_range; ++l) {
        for (int branch = 0; branch < 2; ++branch) {
            const double bsign = branch == 0 ? 1.0 : -1.0;
            double prev = 0.0;
            for (int i = 1; i <= grid_points; ++i) {
                const double s = d * i / (grid_points + 1.0);
                const double curly = pi / 2.0 + l * pi +
                                     bsign * (std::acos(std::sqrt(s)) +
                                              std::sqrt(s * (1.0 - s)));
                if (curly == 0.0) return false;
                if (i > 1 && prev * curly < 0.0) return false;  // sign change
                prev = curly;
            }
        }
    }
    return true;
}

cplx upsilon_hat_general(double R, cplx C, double D) {
    if (D != 0.0 && std::abs(C.imag() / D) < 1e-10) {
        // ln t = C/D would put a zero of the denominator on the contour.
        const double root = C.real() / D;
        if (root > -40.0 && root < 5.0)
            throw std::domain_error("upsilon_hat: denominator zero on (0, inf)");
    }
    auto denom = [&](double lnt) { return C - D * lnt; };
    // (0, 1]: t = e^{-u} takes the logarithmic tail onto a damped line.
    auto low = [&](double u) -> cplx {
        const double t = std::exp(-u);
        return t * std::exp(-t / 3.0) / denom(-u);
    };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-15;
    opt.initial_panels = 16;
    cplx total = integrate_gk(low, 0.0, 45.0, opt).value;
    auto high = [&](double t) -> cplx {
        return std::exp(-t / 3.0) / denom(std::log(t));
    };
    total += integrate_gk(high, 1.0, 130.0, opt).value;
    return cplx(0.0, -1.0) * std::exp(cplx(0.0, 2.0 * R)) * total;
}

cplx upsilon_hat(const ResumParams& params) {
    return upsilon_hat_general(params.R(), params.C(), params.D());
}

ClosedForm closed_form_psi_acc(const ResumParams& params, cplx U) {
    if (!params.valid())
        throw std::domain_error("closed_form_psi_acc: outside 1 << x <= 4M^2/|a|");
    const double R = params.R();
    const double R92 = std::pow(R, 4.5);
    const cplx y = upsilon_hat(params);
    ClosedForm out;
    out.upsilon_form = U * (y + std::conj(y)) / (2.0 * std::sqrt(pi) * R92);
    out.leading_form =
        3.0 / std::sqrt(pi) * U * std::sin(2.0 * R) / (params.C() * R92);
    const double scale =
        std::max(std::abs(out.upsilon_form), std::abs(out.leading_form));
    out.rel_dev = std::abs(out.upsilon_form - out.leading_form) / scale;
    return out;
}

namespace {

// One resummation piece: Int_0^d ds chi(s) (1-s)^{-1/4}
//   e^{sgn i R (P(s) + pi m)/sqrt(s)} / (B1 + B2 ln(R/(2 sqrt s))),
// P(s) = pi/2 - Q(sqrt s), evaluated in w = 1/sqrt(s) where the phase is
// asymptotically linear.
cplx piece_integral(const ResumParams& params, int m, double sgn,
                    double delta_frac) {
    const double R = params.R();
    const double d = params.d();
    const double delta = delta_frac * d;
    const double w_d = 1.0 / std::sqrt(d);
    // Amplitude falls as w^-3. For m = 0 the phase R P(s) w tends to the
    // constant 2R, so the tail is non-oscillatory and needs a long reach;
    // for m != 0 one integration by parts bounds the truncated remainder
    // by amp(w_cut)/(R pi |m|), so a short window suffices.
    const double w_cut =
        m == 0 ? std::max(4000.0, 8.0 * w_d) : std::max(40.0, 4.0 * w_d);

    auto f = [&](double w) -> cplx {
        const double s = 1.0 / (w * w);
        double chi = 1.0;
        if (s > d - delta) {
            const double r = (d - s) / delta;
            chi = r <= 0.0 ? 0.0 : (r >= 1.0 ? 1.0 : r * r * (3.0 - 2.0 * r));
        }
        const double P = pi / 2.0 - circle_segment(std::sqrt(s));
        const double phase = sgn * R * (P + pi * m) * w;
        const double denom_log =
            params.B1 + params.B2 * std::log(R / (2.0 * std::sqrt(s)));
        const double amp =
            chi * std::pow(1.0 - s, -0.25) / denom_log * 2.0 / (w * w * w);
        return amp * std::exp(cplx(0.0, phase));
    };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-13;
    opt.initial_panels =
        m == 0 ? 64
               : static_cast<int>(std::min(
                     200000.0, std::max(32.0, R * (pi * std::abs(m) + 2.0) *
                                                  (w_cut - w_d) / (4.0 * pi))));
    opt.max_panels = 400000;
    return integrate_gk(f, w_d, w_cut, opt).value;
}

}  // namespace

ResumPieces resum_pieces(const ResumParams& params, cplx U, int l_terms,
                         double patch_delta_frac) {
    const double R = params.R();
    // Measure from u = R/(2 sqrt(s)): U R^{-7/2}/sqrt(pi) ds; the
    // alternating-sign split into the two exponential branches halves it.
    const cplx front = U / (2.0 * std::sqrt(pi) * std::pow(R, 3.5));
    ResumPieces out{};
    // I: l = 0, 1, 2, ... with the + branch of exp(+iR Phi^-_l).
    for (int l = 0; l < l_terms; ++l)
        out.I += front * piece_integral(params, l, +1.0, patch_delta_frac);
    // II: mirror family, complex conjugate phases.
    for (int l = 0; l < l_terms; ++l)
        out.II += front * piece_integral(params, l, -1.0, patch_delta_frac);
    // III: l <= -1 on the + branch; IV is its conjugate family.
    for (int l = 1; l <= l_terms; ++l)
        out.III += front * piece_integral(params, -l, +1.0, patch_delta_frac);
    for (int l = 1; l <= l_terms; ++l)
        out.IV += front * piece_integral(params, -l, -1.0, patch_delta_frac);
    return out;
}

CrossCheck poisson_crosscheck(const ResumParams& params, int n_max, cplx U) {
    // The sharp-cutoff alternating sum is dominated by its n = M edge; the
    // resummed closed form describes the patched tail, so the comparison
    // applies the same C2 patch on both sides.
    CrossCheck out;
    out.direct = patched_tail_sum(params, n_max, U).value;
    out.closed = closed_form_psi_acc(params, U).upsilon_form;
    out.rel_dev = std::abs(out.direct - out.closed) /
                  std::max(std::abs(out.direct), std::abs(out.closed));
    return out;
}

}  // namespace c3
