#include "c3/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace c3 {

double laguerre(int n, double x) {
    if (n < 0) throw std::domain_error("laguerre: order must be >= 0");
    if (n == 0) return 1.0;
    double p0 = 1.0, p1 = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double laguerre_scaled(int n, double x) {
    return laguerre_scaled_pair(n, x).ln;
}

LaguerreRegime laguerre_regime(int n, double x) {
    LaguerreRegime r;
    r.n = n;
    r.x = x;
    r.upsilon = 4.0 * n + 2.0;
    const double delta = std::pow(r.upsilon, 0.3);
    r.oscillation = (x > delta) && (x < r.upsilon - delta);
    const double ratio = std::sqrt(std::min(1.0, std::max(0.0, x / r.upsilon)));
    r.theta_star = std::acos(ratio);
    return r;
}

double laguerre_oscillation_asym(int n, double x, int correction_order) {
    LaguerreRegime reg = laguerre_regime(n, x);
    if (!reg.oscillation)
        throw std::domain_error(
            "laguerre_oscillation_asym: argument outside the oscillation window");
    if (correction_order < 1 || correction_order > 2)
        throw std::domain_error("laguerre_oscillation_asym: order must be 1 or 2");
    const double u = reg.upsilon;
    const double t = reg.theta_star;
    const double sin2t = std::sin(2.0 * t);
    const double theta_big = (u * (2.0 * t - sin2t) + pi) / 4.0;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double front = 2.0 * sign / std::sqrt(pi * u * sin2t);
    double sum = std::sin(theta_big);
    if (correction_order >= 2) {
        const double st2 = std::sin(t) * std::sin(t);
        const double a1 = (5.0 / (4.0 * st2) - st2 - 1.0) / 12.0;
        sum += a1 / (u / 4.0 * sin2t) * std::sin(theta_big + 1.5 * pi);
    }
    return front * sum;
}

namespace {

bool near_nonpositive_integer(cplx z, long& k) {
    const double re = z.real();
    if (re > 0.25 || std::abs(z.imag()) > 1e-12) return false;
    const double rounded = std::round(re);
    if (rounded > 0.0) return false;
    if (std::abs(re - rounded) > 1e-12) return false;
    k = static_cast<long>(-rounded);
    return true;
}

// Plain Taylor sum of Phi. `terminate_at` >= 0 truncates exactly after
// that many numerator factors (polynomial case).
ComplexAmplitude phi_series(cplx a, cplx c, cplx z, long terminate_at) {
    cplx term = 1.0;
    KahanSumC sum;
    sum.add(1.0);
    double peak = 1.0;
    int below = 0;
    const long cap = terminate_at >= 0 ? terminate_at : 100000;
    for (long k = 0; k < cap; ++k) {
        term *= (a + static_cast<double>(k)) /
                ((c + static_cast<double>(k)) * (k + 1.0)) * z;
        sum.add(term);
        peak = std::max(peak, std::abs(term));
        if (terminate_at < 0) {
            if (std::abs(term) < 1e-16 * std::abs(sum.value())) {
                if (++below >= 3) break;
            } else {
                below = 0;
            }
            if (k == cap - 1)
                throw convergence_error("kummer_phi: series did not converge");
        }
    }
    double err = std::abs(term) + peak * std::numeric_limits<double>::epsilon();
    return {sum.value(), err};
}

// Terminating real case Phi(-m, c, x) = m!/(c)_m L_m^{(c-1)}(x): the
// generalized-Laguerre recurrence avoids the cancellation that ruins the
// alternating Taylor sum for x of a few tens.
double phi_poly_real(long m, double c, double x) {
    const double gamma = c - 1.0;
    double p0 = 1.0;
    if (m == 0) return 1.0;
    double p1 = 1.0 + gamma - x;
    for (long k = 1; k < m; ++k) {
        const double p2 =
            ((2.0 * k + 1.0 + gamma - x) * p1 - (k + gamma) * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    double front = 1.0;  // m! / (c)_m
    for (long j = 0; j < m; ++j) front *= (j + 1.0) / (c + j);
    return front * p1;
}

}  // namespace

ComplexAmplitude kummer_phi(cplx a, cplx c, cplx z) {
    long ia = 0, ic = 0;
    const bool a_poly = near_nonpositive_integer(a, ia);
    const bool c_pole = near_nonpositive_integer(c, ic);
    if (c_pole) {
        // Only the polynomial case that truncates before the pole survives.
        if (!(a_poly && ia <= ic))
            throw std::domain_error("kummer_phi: c at a non-positive integer pole");
        return phi_series(a, c, z, ia);
    }
    if (a_poly) {
        if (std::abs(c.imag()) < 1e-14 && std::abs(z.imag()) < 1e-14 &&
            c.real() > 0.0) {
            const double v = phi_poly_real(ia, c.real(), z.real());
            return {cplx(v, 0.0),
                    std::abs(v) * 8.0 * std::numeric_limits<double>::epsilon() * ia};
        }
        return phi_series(a, c, z, ia);
    }
    if (z.real() < -1.0) {
        ComplexAmplitude t = phi_series(c - a, c, -z, -1);
        const cplx ez = std::exp(z);
        return {ez * t.value, std::abs(ez) * t.error};
    }
    return phi_series(a, c, z, -1);
}

namespace {

// Lanczos approximation, g = 607/128, 15 terms; ~15 digits for Re z > 0.
constexpr double lanczos_g = 4.7421875;
constexpr double lanczos_c[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

cplx gamma_lanczos(cplx z) {
    // Valid for Re z >= 0.5.
    cplx acc = lanczos_c[0];
    for (int k = 1; k < 15; ++k) acc += lanczos_c[k] / (z + static_cast<double>(k - 1));
    const cplx base = z + lanczos_g - 0.5;
    return std::sqrt(2.0 * pi) * std::pow(base, z - 0.5) * std::exp(-base) * acc;
}

}  // namespace

ComplexAmplitude gamma_complex(cplx z) {
    long k = 0;
    if (near_nonpositive_integer(z, k))
        throw std::domain_error("gamma_complex: pole at non-positive integer");
    cplx value;
    if (z.real() >= 0.5) {
        value = gamma_lanczos(z);
    } else {
        // Reflection through sin keeps the left half-plane accurate.
        value = pi / (std::sin(pi * z) * gamma_lanczos(1.0 - z));
    }
    return {value, std::abs(value) * 2e-14};
}

double legendre_p(int l, double t) {
    if (l < 0) throw std::domain_error("legendre_p: order must be >= 0");
    if (l == 0) return 1.0;
    double p0 = 1.0, p1 = t;
    for (int k = 1; k < l; ++k) {
        double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

cplx spherical_harmonic(int l, int m, double nx, double ny, double nz) {
    if (l < 0 || std::abs(m) > l)
        throw std::domain_error("spherical_harmonic: need |m| <= l");
    const int ma = std::abs(m);
    const double ct = nz;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));

    // Normalised associated Legendre with the Condon-Shortley phase folded
    // into the diagonal recurrence.
    double pmm = std::sqrt(1.0 / (4.0 * pi));
    for (int q = 1; q <= ma; ++q)
        pmm *= -std::sqrt((2.0 * q + 1.0) / (2.0 * q)) * st;
    double plm = pmm;
    if (l > ma) {
        double pm1 = pmm;
        double pm2 = 0.0;
        for (int ll = ma + 1; ll <= l; ++ll) {
            const double num = 4.0 * ll * ll - 1.0;
            const double den = static_cast<double>(ll) * ll - ma * ma;
            const double f1 = std::sqrt(num / den);
            const double prev = (ll - 1.0) * (ll - 1.0);
            const double f2 =
                std::sqrt((prev - ma * ma) / (4.0 * prev - 1.0));
            plm = f1 * (ct * pm1 - f2 * pm2);
            pm2 = pm1;
            pm1 = plm;
        }
    }
    const double phi = std::atan2(ny, nx);
    cplx ym = plm * std::exp(cplx(0.0, ma * phi));
    if (m >= 0) return ym;
    double sgn = (ma % 2 == 0) ? 1.0 : -1.0;
    return sgn * std::conj(ym);
}

cplx spherical_harmonic(int l, int m, const double dir[3]) {
    return spherical_harmonic(l, m, dir[0], dir[1], dir[2]);
}

MathieuEven mathieu_even(int order_2l, double s) {
    if (order_2l < 0 || order_2l % 2 != 0)
        throw std::domain_error("mathieu_even: order must be an even integer >= 0");
    const int l = order_2l / 2;

    int dim = std::max(16, l + 8);
    for (;; dim *= 2) {
        if (dim > 512)
            throw convergence_error("mathieu_even: coefficients failed to decay");
        // Symmetrised tridiagonal: scaling A_0 by sqrt(2) makes the 2q
        // coupling of the first row symmetric.
        std::vector<double> d(dim), e(dim - 1, s);
        d[0] = 0.0;
        for (int r = 1; r < dim; ++r) d[r] = 4.0 * static_cast<double>(r) * r;
        e[0] = s * std::sqrt(2.0);
        std::vector<double> ev;
        std::vector<std::vector<double>> vec;
        symtridiag_eig(d, e, ev, &vec);

        std::vector<double> a(dim);
        a[0] = vec[l][0] / std::sqrt(2.0);
        for (int r = 1; r < dim; ++r) a[r] = vec[l][r];

        double amax = 0.0;
        for (double v : a) amax = std::max(amax, std::abs(v));
        if (std::abs(a[dim - 1]) >= 1e-16 * amax) continue;  // grow and retry

        // Truncate where the coefficients stop mattering. The margin below
        // the 1e-14 working threshold absorbs the cosh amplification in Ce.
        int keep = dim;
        while (keep > l + 1 && std::abs(a[keep - 1]) < 1e-16 * amax) --keep;
        a.resize(keep);

        // Fix the overall sign: dominant coefficient positive.
        int imax = 0;
        for (int r = 1; r < keep; ++r)
            if (std::abs(a[r]) > std::abs(a[imax])) imax = r;
        if (a[imax] < 0.0)
            for (double& v : a) v = -v;

        MathieuEven out;
        out.order_2l = order_2l;
        out.s = s;
        out.char_value = ev[l];
        out.coeffs = std::move(a);
        return out;
    }
}

double MathieuEven::ce(double phi) const {
    KahanSum acc;
    for (size_t r = 0; r < coeffs.size(); ++r)
        acc.add(coeffs[r] * std::cos(2.0 * r * phi));
    return acc.value();
}

double MathieuEven::Ce(double zeta) const {
    KahanSum acc;
    for (size_t r = 0; r < coeffs.size(); ++r)
        acc.add(coeffs[r] * std::cosh(2.0 * r * zeta));
    return acc.value();
}

double MathieuEven::recurrence_residual() const {
    const double a = char_value;
    const double q = s;
    auto A = [&](int r) {
        return (r >= 0 && r < static_cast<int>(coeffs.size())) ? coeffs[r] : 0.0;
    };
    double worst = std::abs(a * A(0) - q * A(1));
    worst = std::max(worst,
                     std::abs((a - 4.0) * A(1) - q * (A(2) + 2.0 * A(0))));
    for (int r = 2; r + 1 < static_cast<int>(coeffs.size()); ++r)
        worst = std::max(worst, std::abs((a - 4.0 * r * r) * A(r) -
                                         q * (A(r + 1) + A(r - 1))));
    return worst;
}

double mathieu_ce(int order_2l, double s, double phi) {
    return mathieu_even(order_2l, s).ce(phi);
}

EllipticArgs mathieu_plane_wave_args(double z1, double alpha, double s) {
    if (s <= 0.0) throw std::domain_error("mathieu_plane_wave_args: need s > 0");
    const double w = z1 * z1 / (4.0 * s);
    const double sa2 = std::sin(alpha) * std::sin(alpha);
    const double disc = (1.0 - w) * (1.0 - w) + 4.0 * w * sa2;
    double y = 0.5 * ((1.0 - w) + std::sqrt(std::max(0.0, disc)));
    y = std::min(1.0, std::max(0.0, y));  // sin^2(vartheta)
    const double x = w + y;               // cosh^2(zeta), >= 1 by construction
    EllipticArgs out;
    out.vartheta = std::asin(std::sqrt(y));
    out.zeta = std::log(std::sqrt(x) + std::sqrt(std::max(0.0, x - 1.0)));
    return out;
}

}  // namespace c3
