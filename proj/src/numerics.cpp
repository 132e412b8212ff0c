#include "c3/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace c3 {

QuadRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-type initial guess, then Newton on P_n.
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

void symtridiag_eig(std::vector<double> d, std::vector<double> e,
                    std::vector<double>& eigenvalues,
                    std::vector<std::vector<double>>* vectors) {
    const int n = static_cast<int>(d.size());
    if (n == 0) {
        eigenvalues.clear();
        return;
    }
    e.resize(n, 0.0);  // e[n-1] used as workspace
    std::vector<std::vector<double>> z;
    if (vectors) {
        z.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) z[i][i] = 1.0;
    }

    // Implicit-shift QL (classic tql2).
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw convergence_error("symtridiag_eig: QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double rr = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(rr, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    rr = std::hypot(f, g);
                    e[i + 1] = rr;
                    if (rr == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / rr;
                    c = g / rr;
                    g = d[i + 1] - p;
                    rr = (d[i] - g) * s + 2.0 * c * b;
                    p = s * rr;
                    d[i + 1] = g + p;
                    g = c * rr - b;
                    if (vectors) {
                        for (int k = 0; k < n; ++k) {
                            double f2 = z[i + 1][k];
                            z[i + 1][k] = s * z[i][k] + c * f2;
                            z[i][k] = c * z[i][k] - s * f2;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    // Sort ascending, carrying eigenvectors along.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return d[a] < d[b]; });
    eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) eigenvalues[i] = d[order[i]];
    if (vectors) {
        vectors->resize(n);
        for (int i = 0; i < n; ++i) (*vectors)[i] = z[order[i]];
    }
}

ScaledLaguerrePair laguerre_scaled_pair(int n, double x) {
    if (n < 0) throw std::domain_error("laguerre_scaled_pair: order must be >= 0");
    // Seed e^{-x/2} as mantissa * 2^e2 so large x cannot underflow it.
    const double t = -x / 2.0 / 0.6931471805599453094;  // log2 of the seed
    int e2 = static_cast<int>(std::floor(t));
    double p0 = std::exp2(t - e2);  // in [1, 2)
    if (n == 0) return {std::ldexp(p0, e2), 0.0};
    double p1 = p0 * (1.0 - x);
    for (int j = 1; j < n; ++j) {
        const double p2 = ((2.0 * j + 1.0 - x) * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
        const double mag = std::max(std::abs(p0), std::abs(p1));
        if (mag > 1e280) {
            p0 = std::ldexp(p0, -1000);
            p1 = std::ldexp(p1, -1000);
            e2 += 1000;
        } else if (mag > 0.0 && mag < 1e-280) {
            p0 = std::ldexp(p0, 1000);
            p1 = std::ldexp(p1, 1000);
            e2 -= 1000;
        }
    }
    return {std::ldexp(p1, e2), std::ldexp(p0, e2)};
}

QuadRule gauss_laguerre_scaled(int n) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: order must be >= 1");
    // Golub-Welsch: Jacobi matrix for the Laguerre weight has
    // diag 2k+1 and off-diag k; nodes are eigenvalues and the scaled
    // weight is x_i / ((n+1)^2 * M_{n+1}(x_i)^2) with M_k = e^{-x/2} L_k.
    std::vector<double> d(n), e(n - 1);
    for (int k = 0; k < n; ++k) d[k] = 2.0 * k + 1.0;
    for (int k = 0; k < n - 1; ++k) e[k] = k + 1.0;
    std::vector<double> ev;
    symtridiag_eig(d, e, ev, nullptr);

    QuadRule r;
    r.x = ev;
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = r.x[i];
        // One Newton polish using the scaled recurrence, then the weight.
        ScaledLaguerrePair m = laguerre_scaled_pair(n, x);
        // M_n'(x) = n (M_n - M_{n-1}) / x - M_n / 2.
        const double deriv = n * (m.ln - m.lnm1) / x - 0.5 * m.ln;
        const double xn = x - m.ln / deriv;
        ScaledLaguerrePair mp = laguerre_scaled_pair(n + 1, xn);
        r.x[i] = xn;
        r.w[i] = xn / ((n + 1.0) * (n + 1.0) * mp.ln * mp.ln);
    }
    return r;
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kron_x[8] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
constexpr double kron_w[8] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
constexpr double gauss_w[4] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

struct Panel {
    double a, b;
    cplx value;
    double error;
};

void eval_panel(const std::function<cplx(double)>& f, Panel& p, long& evals) {
    const double c = 0.5 * (p.a + p.b);
    const double h = 0.5 * (p.b - p.a);
    cplx fc = f(c);
    cplx kron = kron_w[0] * fc;
    cplx gauss = gauss_w[0] * fc;
    ++evals;
    for (int j = 1; j < 8; ++j) {
        cplx f1 = f(c - h * kron_x[j]);
        cplx f2 = f(c + h * kron_x[j]);
        evals += 2;
        kron += kron_w[j] * (f1 + f2);
        if (j % 2 == 0) gauss += gauss_w[j / 2] * (f1 + f2);
    }
    p.value = kron * h;
    p.error = std::abs(kron - gauss) * std::abs(h);
}

}  // namespace

QuadResult integrate_gk(const std::function<cplx(double)>& f, double a,
                        double b, const AdaptiveOptions& opt) {
    long evals = 0;
    std::vector<Panel> pool;
    std::vector<char> alive;
    // Max-heap of (error, id); stale ids are skipped on pop.
    std::priority_queue<std::pair<double, size_t>> queue;
    double err_total = 0.0;
    cplx val_total = 0.0;

    auto push_panel = [&](double pa, double pb) {
        Panel p;
        p.a = pa;
        p.b = pb;
        eval_panel(f, p, evals);
        pool.push_back(p);
        alive.push_back(1);
        queue.emplace(p.error, pool.size() - 1);
        err_total += p.error;
        val_total += p.value;
    };

    const int n0 = std::max(1, opt.initial_panels);
    for (int i = 0; i < n0; ++i)
        push_panel(a + (b - a) * i / static_cast<double>(n0),
                   a + (b - a) * (i + 1) / static_cast<double>(n0));

    while (static_cast<int>(pool.size()) < opt.max_panels) {
        if (err_total <= opt.abs_tol ||
            err_total <= opt.rel_tol * std::abs(val_total))
            break;
        size_t worst = pool.size();
        while (!queue.empty()) {
            auto [e, id] = queue.top();
            queue.pop();
            if (alive[id]) {
                worst = id;
                break;
            }
        }
        if (worst == pool.size()) break;
        alive[worst] = 0;
        err_total -= pool[worst].error;
        val_total -= pool[worst].value;
        const double mid = 0.5 * (pool[worst].a + pool[worst].b);
        push_panel(pool[worst].a, mid);
        push_panel(mid, pool[worst].b);
    }

    // Interval-ordered compensated sum: independent of refinement order.
    std::vector<const Panel*> final_panels;
    final_panels.reserve(pool.size());
    for (size_t i = 0; i < pool.size(); ++i)
        if (alive[i]) final_panels.push_back(&pool[i]);
    std::sort(final_panels.begin(), final_panels.end(),
              [](const Panel* p, const Panel* q) { return p->a < q->a; });
    if (opt.reverse_order)
        std::reverse(final_panels.begin(), final_panels.end());
    KahanSumC acc;
    double err = 0.0;
    for (const Panel* p : final_panels) {
        acc.add(p->value);
        err += p->error;
    }
    return {acc.value(), err, evals};
}

double integrate_gk_real(const std::function<double(double)>& f, double a,
                         double b, const AdaptiveOptions& opt) {
    auto res = integrate_gk([&](double x) { return cplx(f(x), 0.0); }, a, b, opt);
    return res.value.real();
}

double circle_segment(double w) {
    if (w < -1.0 || w > 1.0)
        throw std::domain_error("circle_segment: argument outside [-1, 1]");
    if (w < 0.85) return std::acos(w) - w * std::sqrt(1.0 - w * w);
    // Q = 2 sqrt(2) d^{3/2} sum_k c_k d^k, d = 1 - w,
    // c_k = binom(1/2, k) (-1/2)^k / (k + 3/2).
    const double d = 1.0 - w;
    double binom = 1.0;  // binom(1/2, k)
    double pow_half = 1.0;
    double sum = 0.0, dk = 1.0;
    for (int k = 0; k < 60; ++k) {
        const double term = binom * pow_half / (k + 1.5) * dk;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        binom *= (0.5 - k) / (k + 1.0);
        pow_half *= -0.5;
        dk *= d;
    }
    return 2.0 * std::sqrt(2.0) * std::pow(d, 1.5) * sum;
}

SphereGrid::SphereGrid(int n_theta, int n_phi) {
    QuadRule gl = gauss_legendre(n_theta);
    nodes.reserve(static_cast<size_t>(n_theta) * n_phi);
    const double wphi = 2.0 * pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        const double ct = gl.x[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < n_phi; ++j) {
            Node nd;
            nd.ct = ct;
            nd.st = st;
            nd.phi = wphi * j;
            nd.weight = gl.w[i] * wphi;
            nd.nx = st * std::cos(nd.phi);
            nd.ny = st * std::sin(nd.phi);
            nd.nz = ct;
            nodes.push_back(nd);
        }
    }
}

}  // namespace c3
