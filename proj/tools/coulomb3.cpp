// Command-line front end: config loading, subcommand dispatch and CSV/JSON
// emission with a reproducibility manifest on every output.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "c3/accsum.hpp"
#include "c3/config.hpp"
#include "c3/normint.hpp"
#include "c3/omega.hpp"
#include "c3/pairstates.hpp"
#include "c3/scalprod.hpp"

using nlohmann::json;
using namespace c3;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Cli {
    std::string config_path;
    std::string out_path;
    double tol = 1e-9;
    int threads = 1;
    ProgramConfig cfg;
    RunManifest manifest;

    std::ostream& open(std::ofstream& file) {
        if (out_path.empty()) return std::cout;
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open output '" + out_path + "'");
        return file;
    }
};

json manifest_json(const RunManifest& m) {
    json j;
    j["tool"] = std::string("coulomb3 ") + kVersion;
    j["subcommand"] = m.subcommand;
    j["config"] = m.config_path.empty() ? "(defaults)" : m.config_path;
    j["seed"] = m.seed;
    for (const auto& [k, v] : m.overrides) j[k] = v;
    return j;
}

void load(Cli& cli) {
    if (cli.config_path.empty()) {
        const char* env = std::getenv("COULOMB3_CONFIG");
        if (env != nullptr) cli.config_path = env;
    }
    if (!cli.config_path.empty()) cli.cfg = load_config(cli.config_path);
    cli.manifest.tool_version = kVersion;
    cli.manifest.config_path = cli.config_path;
    cli.manifest.output_path = cli.out_path;
    cli.manifest.seed = cli.cfg.seed;
}

int run_verify(Cli& cli);

int run_sigma(Cli& cli, int n_lo, int n_hi, const std::vector<double>& angles) {
    cli.manifest.subcommand = "sigma";
    if (n_lo < 1 || n_hi < n_lo)
        throw std::runtime_error("sigma: need 1 <= n-lo <= n-hi");
    const Couplings c = couplings(cli.cfg.system);
    const double alpha = c.alpha[0];
    if (!(alpha < 0.0))
        throw std::runtime_error("sigma: pair 1 must be attractive (alpha_1 < 0)");
    std::ofstream file;
    std::ostream& out = cli.open(file);
    out << cli.manifest.comment_header();
    out << "n,theta_kprime,direct_re,direct_im,stationary_re,stationary_im,ratio\n";
    const Vec3 khat2{0.0, 0.0, 1.0};
    for (int n = n_lo; n <= n_hi; n *= 2) {
        for (double th : angles) {
            const Vec3 khat1{std::sin(th), 0.0, std::cos(th)};
            ComplexAmplitude direct = sigma_direct(n, alpha, khat1, khat2);
            out << n << "," << th << "," << direct.value.real() << ","
                << direct.value.imag() << ",";
            if (th > 0.0) {
                // the reduction is log-divergent at coincident directions
                const cplx stat = sigma_stationary(n, alpha, th);
                out << stat.real() << "," << stat.imag() << ","
                    << stat.imag() / direct.value.real() << "\n";
            } else {
                out << "nan,nan,nan\n";
            }
        }
    }
    return 0;
}

int run_bcoeffs(Cli& cli, const std::vector<int>& grid) {
    cli.manifest.subcommand = "bcoeffs";
    OmegaKernel kernel = reduced_kernel();
    const double tol = std::clamp(cli.tol, 1e-12, 1e-4);
    OmegaExpansion fit = fit_expansion(kernel, grid, +1, tol);
    auto [b1, b2] = compute_B(kernel);
    json j;
    j["manifest"] = manifest_json(cli.manifest);
    j["D1"] = {fit.D1.real(), fit.D1.imag()};
    j["D2"] = {fit.D2.real(), fit.D2.imag()};
    j["D1_formula"] = {fit.D1_formula.real(), fit.D1_formula.imag()};
    j["D2_formula"] = {fit.D2_formula.real(), fit.D2_formula.imag()};
    j["B1"] = b1;
    j["B2"] = b2;
    j["residual"] = fit.fit_residual;
    j["n_grid"] = grid;
    std::ofstream file;
    std::ostream& out = cli.open(file);
    out << j.dump(2) << "\n";
    return 0;
}

int run_omega_sweep(Cli& cli, const std::vector<int>& grid) {
    cli.manifest.subcommand = "omega-sweep";
    OmegaKernel kernel = reduced_kernel();
    const double tol = std::clamp(cli.tol, 1e-12, 1e-4);
    std::ofstream file;
    std::ostream& out = cli.open(file);
    out << cli.manifest.comment_header();
    out << "n,re,im\n";
    for (int n : grid) {
        cplx w = omega_direct(kernel, n, +1, tol);
        out << n << "," << w.real() << "," << w.imag() << "\n";
    }
    return 0;
}

int run_zker(Cli& cli, double k_mag, double p_mag) {
    cli.manifest.subcommand = "zker";
    const Vec3 k = k_mag * Vec3{0.6, 0.0, 0.8};
    const Vec3 p = p_mag * Vec3{0.0, 0.0, 1.0};
    Momenta q = make_momenta(cli.cfg.system, k, p);
    const Vec3 khat2{0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    ChannelCoefficients cc = channel_coefficients(cli.cfg.system, q);
    WeakAsymptotics wa = q_weak_asymptotics(cli.cfg.system, q, khat2);
    auto c2 = [](cplx z) { return json{z.real(), z.imag()}; };
    json j;
    j["manifest"] = manifest_json(cli.manifest);
    j["B0_in"] = c2(cc.B0_in);
    j["B0_out"] = c2(cc.B0_out);
    j["L_in"] = {cc.L_in.x, cc.L_in.y, cc.L_in.z};
    j["L_out"] = {cc.L_out.x, cc.L_out.y, cc.L_out.z};
    j["Z_in"] = c2(wa.Z_in);
    j["Z_out"] = c2(wa.Z_out);
    j["H_in"] = c2(wa.H_in.value);
    j["H_out"] = c2(wa.H_out.value);
    j["H_in_cap_sensitivity"] = wa.H_in.cap_sensitivity;
    j["H_out_cap_sensitivity"] = wa.H_out.cap_sensitivity;
    std::ofstream file;
    std::ostream& out = cli.open(file);
    out << j.dump(2) << "\n";
    return 0;
}

int run_resum(Cli& cli, int M, double x, double B1, double B2, cplx U,
              int sweep) {
    cli.manifest.subcommand = "resum";
    const Couplings c = couplings(cli.cfg.system);
    ResumParams params;
    params.M = M;
    params.alpha1 = c.alpha[0];
    params.B1 = B1;
    params.B2 = B2;
    std::ofstream file;
    std::ostream& out = cli.open(file);
    out << cli.manifest.comment_header();
    out << "R,direct_re,direct_im,closed_re,closed_im,rel_dev\n";
    for (int i = 0; i < sweep; ++i) {
        params.x = x * std::pow(3.0, i);
        if (!params.valid())
            throw std::runtime_error("resum: need 0 < R^2/(4M^2) < 1; raise M");
        const int n_max = 12 * params.M;
        CrossCheck cc = poisson_crosscheck(params, n_max, U);
        out << params.R() << "," << cc.direct.real() << "," << cc.direct.imag()
            << "," << cc.closed.real() << "," << cc.closed.imag() << ","
            << cc.rel_dev << "\n";
    }
    return 0;
}

int run_concordance(Cli& cli) {
    cli.manifest.subcommand = "concordance";
    std::ofstream file;
    std::ostream& out = cli.open(file);
    out << cli.manifest.comment_header();
    out << "quantity -> operation (library entry point)\n"
        << "---------------------------------------------\n"
        << "L_n(x)                         specfun: laguerre / laguerre_scaled\n"
        << "e^{-x/2}L_n oscillatory form   specfun: laguerre_oscillation_asym\n"
        << "Phi(a,c,z)                     specfun: kummer_phi\n"
        << "Gamma(z)                       specfun: gamma_complex\n"
        << "P_l, Y_l^m                     specfun: legendre_p / spherical_harmonic\n"
        << "ce_2l, Ce_2l                   specfun: mathieu_even (ce, Ce)\n"
        << "alpha_l, alpha_eff             kinematics: couplings\n"
        << "pairing rotations              kinematics: to_pairing\n"
        << "Omega domains                  kinematics: in_domain\n"
        << "psi_c(x,k)                     pairstates: coulomb_wave\n"
        << "Psi^BBK                        pairstates: bbk_wave\n"
        << "psi_nlm radial part            pairstates: bound_radial\n"
        << "g_n = psi_n^d                  pairstates: generating_function\n"
        << "beta_nl                        pairstates: beta_coefficient\n"
        << "Phi_l partial component        pairstates: partial_component\n"
        << "R_nlm projection               pairstates: reconstruct_R_nlm\n"
        << "Sigma_n direct                 normint: sigma_direct\n"
        << "S(theta,phi), Hessian          normint: phase_function / hessian_check\n"
        << "Sigma_n stationary phase       normint: sigma_stationary\n"
        << "Omega_n                        omega: omega_direct\n"
        << "varpi_1..7, Upsilon            omega: varpi_coefficients\n"
        << "D1, D2 fit                     omega: fit_expansion\n"
        << "B1, B2                         omega: compute_B (reduced_kernel)\n"
        << "B0, L vectors                  scalprod: channel_coefficients\n"
        << "Z closed form                  scalprod: z_in_closed\n"
        << "H sphere integral              scalprod: h_integral\n"
        << "(t-p/sqrt(E))_+^{ib}           scalprod: regularized_plus_power\n"
        << "R~_n kernel ansatz             scalprod: kernel_Rn\n"
        << "Theta(n) tail term             accsum: theta_term\n"
        << "tail sum                       accsum: direct_tail_sum\n"
        << "Phi_l^{+-} stationarity        accsum: phase_no_stationary_check\n"
        << "Upsilon-hat(R), C(R)           accsum: upsilon_hat\n"
        << "closed asymptotics             accsum: closed_form_psi_acc\n"
        << "Poisson cross-check            accsum: poisson_crosscheck\n";
    return 0;
}

// ---------------------------------------------------------------------
// verify: a fast battery of the library's own consistency properties.

struct VerifyReport {
    int passed = 0, failed = 0;
    std::ostream* out = nullptr;

    void row(const std::string& name, bool ok, double metric) {
        (ok ? passed : failed)++;
        (*out) << (ok ? "PASS  " : "FAIL  ") << name << "  [" << metric << "]\n";
    }
};

int run_verify(Cli& cli) {
    cli.manifest.subcommand = "verify";
    std::ofstream file;
    std::ostream& out = cli.open(file);
    out << cli.manifest.comment_header();
    VerifyReport rep;
    rep.out = &out;
    std::mt19937_64 rng(cli.cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    {  // Kummer transformation identity
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            cplx a(10.0 * u01(rng) - 5.0, 10.0 * u01(rng) - 5.0);
            cplx c(4.0 * u01(rng) + 1.0, 10.0 * u01(rng) - 5.0);
            cplx z(10.0 * u01(rng) - 5.0, 10.0 * u01(rng) - 5.0);
            cplx lhs = kummer_phi(a, c, z).value;
            cplx rhs = std::exp(z) * kummer_phi(c - a, c, -z).value;
            worst = std::max(worst,
                             std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        }
        rep.row("kummer transformation identity", worst < 1e-10, worst);
    }
    {  // Gamma recurrence
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            cplx z(40.0 * u01(rng) - 20.0, 40.0 * u01(rng) - 20.0);
            if (z.real() < 0.0 && std::abs(z.imag()) < 0.5) continue;
            cplx a = gamma_complex(z + 1.0).value;
            cplx b = z * gamma_complex(z).value;
            worst = std::max(worst, std::abs(a - b) / std::abs(a));
        }
        rep.row("gamma recurrence", worst < 1e-11, worst);
    }
    {  // Phi <-> Laguerre identity
        double worst = 0.0;
        for (int n = 2; n <= 20; n += 2) {
            double t = 30.0 * u01(rng);
            cplx v = kummer_phi(cplx(1.0 - n, 0.0), 1.0, t).value;
            double l = laguerre(n - 1, t);
            worst = std::max(worst, std::abs(v - l) / (1.0 + std::abs(l)));
        }
        rep.row("confluent/Laguerre polynomial identity", worst < 1e-10, worst);
    }
    {  // couplings on the reference charge set
        SystemConfig sc;
        sc.charge = {1.0, 2.0, -3.0};
        Couplings c = couplings(sc);
        double dev = std::abs(c.alpha[0] + 6.0) + std::abs(c.alpha[1] + 3.0) +
                     std::abs(c.alpha[2] - 2.0) +
                     std::abs(c.alpha_eff[0] + 2.0 / std::sqrt(3.0));
        rep.row("pair couplings and screen potential", dev < 1e-12, dev);
    }
    {  // pairing rotation round trip
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            JacobiState st;
            st.x = {u01(rng), u01(rng), u01(rng)};
            st.y = {u01(rng), u01(rng), u01(rng)};
            JacobiState r = st;
            for (int target : {2, 3, 1})
                r = to_pairing(cli.cfg.system, r, target);
            worst = std::max(worst, (r.x - st.x).norm() + (r.y - st.y).norm());
        }
        rep.row("pairing round trip", worst < 1e-13, worst);
    }
    {  // generating-function finite identity at n = 4
        double worst = 0.0;
        const double alpha = -1.0;
        for (int i = 0; i < 10; ++i) {
            Vec3 x{2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0,
                   2.0 * u01(rng) - 1.0};
            x = (10.0 * u01(rng)) * x.hat();
            Vec3 khat = Vec3{2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0,
                             2.0 * u01(rng) - 1.0}
                            .hat();
            const int n = 4;
            double lhs = generating_function(n, alpha, x, khat);
            cplx rhs = 0.0;
            const double aa = std::abs(alpha);
            for (int l = 0; l < n; ++l) {
                cplx ylsum = 0.0;
                for (int m = -l; m <= l; ++m)
                    ylsum += spherical_harmonic(l, m, x.hat().x, x.hat().y,
                                                x.hat().z) *
                             std::conj(spherical_harmonic(l, m, khat.x, khat.y,
                                                          khat.z));
                rhs += 4.0 * pi * beta_coefficient(n, l) /
                       std::tgamma(2.0 * l + 2.0) *
                       std::pow(-aa / n * x.norm(), l) *
                       kummer_phi(cplx(-n + l + 1, 0.0),
                                  cplx(2.0 * l + 2.0, 0.0), aa * x.norm() / n)
                           .value *
                       ylsum;
            }
            rhs *= std::exp(-aa * x.norm() / (2.0 * n));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        rep.row("generating-function partial-wave identity", worst < 1e-8, worst);
    }
    {  // stationary point of the reduction phase
        double worst = 0.0;
        for (double th : {0.2, 0.8, 1.5, 2.4})
            for (double s : {0.2, 0.5, 0.8}) {
                PhasePoint p = stationary_point(th, s);
                const double h = 1e-5;
                PhasePoint pt = p;
                pt.theta += h;
                PhasePoint pm = p;
                pm.theta -= h;
                double dth = (phase_function(pt) - phase_function(pm)) / (2 * h);
                pt = p;
                pt.phi += h;
                pm = p;
                pm.phi -= h;
                double dph = (phase_function(pt) - phase_function(pm)) / (2 * h);
                worst = std::max(worst, std::hypot(dth, dph));
            }
        rep.row("phase stationary point", worst < 1e-6, worst);
    }
    {  // C(R) imaginary part is R-independent
        ResumParams p;
        p.M = 100;
        p.alpha1 = -1.0;
        p.B1 = cli.cfg.B1;
        p.B2 = cli.cfg.B2;
        p.x = 100.0;
        double i1 = p.C().imag();
        p.x = 2000.0;
        double i2 = p.C().imag();
        double dev = std::abs(i1 - i2) + std::abs(i1 - p.B2 * pi / 4.0);
        rep.row("C(R) imaginary part constant", dev < 1e-14, dev);
    }
    {  // regularized plus-power against the closed form
        cplx qv = regularized_plus_power(0.7, 2.0, 0.05);
        cplx cv = regularized_plus_power_closed(0.7, 2.0, 0.05);
        double dev = std::abs(qv - cv) / std::abs(cv);
        rep.row("regularized plus-power closed form", dev < 1e-6, dev);
    }
    {  // Mathieu plane-wave averaging
        MathieuEven me = mathieu_even(2, 0.5);
        KahanSum acc;
        const int N = 2048;
        for (int i = 0; i < N; ++i) {
            const double phi = 2.0 * pi * i / N;
            acc.add(std::cos(1.3 * std::cos(phi - 0.4)) * me.ce(phi));
        }
        EllipticArgs ea = mathieu_plane_wave_args(1.3, 0.4, 0.5);
        const double rhs = 2.0 * pi * me.coeffs[0] /
                           (me.ce(0.0) * me.ce(pi / 2.0)) * me.Ce(ea.zeta) *
                           me.ce(ea.vartheta);
        const double dev = std::abs(acc.value() * 2.0 * pi / N - rhs);
        rep.row("mathieu plane-wave averaging", dev < 1e-8, dev);
    }
    {  // oscillatory Laguerre asymptotics at n = 100
        const double exact = laguerre_scaled(100, 201.0);
        const double dev =
            std::abs(laguerre_oscillation_asym(100, 201.0) - exact) /
            std::abs(exact);
        rep.row("oscillatory Laguerre asymptotics", dev < 0.05, dev);
    }
    {  // reduction Hessian, analytic vs numeric
        HessianCheck hc = hessian_check(pi / 2.0, 0.5);
        const double dev =
            std::abs(hc.analytic[0][0] - hc.numeric[0][0]) /
                std::abs(hc.analytic[0][0]) +
            std::abs(hc.analytic[1][1] - hc.numeric[1][1]) /
                std::abs(hc.analytic[1][1]);
        rep.row("reduction Hessian agreement", dev < 1e-4 && hc.signature == 2,
                dev);
    }
    {  // n = 1 normalization integral closed form
        const Vec3 a{0.0, 0.6, 0.8}, b{1.0, 0.0, 0.0};
        const double v = sigma_direct(1, -2.0, a, b, 8, 8, 8).value.real();
        const double dev = std::abs(v - pi) / pi;  // 8 pi / |a|^3 = pi
        rep.row("normalization integral at n = 1", dev < 1e-10, dev);
    }

    out << rep.passed << " passed, " << rep.failed << " failed\n";
    return rep.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coulomb3: three-body Coulomb pair-excitation asymptotics"};
    app.require_subcommand(1);
    Cli cli;
    app.add_option("--config", cli.config_path,
                   "configuration file (or env COULOMB3_CONFIG)");
    app.add_option("--out", cli.out_path, "output file (default stdout)");
    app.add_option("--threads", cli.threads, "reserved; computation is deterministic");
    app.add_option("--tol", cli.tol, "relative tolerance for the oscillatory integrals (bcoeffs, omega-sweep)");

    auto* verify = app.add_subcommand("verify", "run the consistency battery");

    auto* sigma = app.add_subcommand(
        "sigma", "normalization integral sweep; CSV columns: n, theta_kprime, "
                 "direct value (re, im), stationary-phase value (re, im), ratio");
    int sig_nlo = 20, sig_nhi = 80;
    std::vector<double> sig_angles{0.0, 0.3, 0.6};
    sigma->add_option("--n-lo", sig_nlo, "first principal number (doubled upward)");
    sigma->add_option("--n-hi", sig_nhi, "last principal number");
    sigma->add_option("--angles", sig_angles, "polar angles of khat' vs khat''");

    auto* bcoeffs = app.add_subcommand(
        "bcoeffs", "two-term expansion constants; JSON with D1, D2 (fit and "
                   "formula), B1, B2, residual");
    std::vector<int> grid{50, 100, 200, 400, 800};
    bcoeffs->add_option("--n-grid", grid, "principal-number grid for the fit");

    auto* osweep = app.add_subcommand(
        "omega-sweep", "Omega_n for the reduced kernel; CSV columns: n, re, im");
    osweep->add_option("--n-grid", grid, "principal numbers");

    auto* zker = app.add_subcommand(
        "zker", "channel coefficients and Z/H integrals at one kinematic "
                "point; JSON");
    double zk_k = 1.0, zk_p = 0.8;
    zker->add_option("--k", zk_k, "pair momentum magnitude");
    zker->add_option("--p", zk_p, "spectator momentum magnitude");

    auto* resum = app.add_subcommand(
        "resum", "tail resummation cross-check; CSV columns: R, direct sum "
                 "(re, im), closed form (re, im), relative deviation");
    int rs_M = 200;
    double rs_x = 50.0, rs_B1 = -0.310, rs_B2 = -0.63;
    std::vector<double> rs_U{1.0, 0.0};
    int rs_sweep = 3;
    resum->add_option("--M", rs_M, "first resummed principal number");
    resum->add_option("--x", rs_x, "pair radius (first sweep point)");
    resum->add_option("--B1", rs_B1, "expansion constant B1");
    resum->add_option("--B2", rs_B2, "expansion constant B2");
    resum->add_option("--U", rs_U, "smooth prefactor U as re,im")
        ->delimiter(',');
    resum->add_option("--sweep", rs_sweep, "number of x points (x3 each)");

    auto* conc = app.add_subcommand("concordance",
                                    "print the quantity-to-operation map");

    // Global flags (--out, --config, ...) remain usable after the
    // subcommand name.
    for (CLI::App* sub : app.get_subcommands(
             [](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        load(cli);
        if (*verify) return run_verify(cli);
        if (*sigma) return run_sigma(cli, sig_nlo, sig_nhi, sig_angles);
        if (*bcoeffs) return run_bcoeffs(cli, grid);
        if (*osweep) return run_omega_sweep(cli, grid);
        if (*zker) return run_zker(cli, zk_k, zk_p);
        if (*resum)
            return run_resum(cli, rs_M, rs_x, rs_B1, rs_B2,
                             cplx(rs_U.at(0), rs_U.size() > 1 ? rs_U[1] : 0.0),
                             rs_sweep);
        if (*conc) return run_concordance(cli);
    } catch (const std::exception& e) {
        json err;
        err["error"]["type"] = "numeric-failure";
        err["error"]["what"] = e.what();
        err["error"]["subcommand"] = cli.manifest.subcommand;
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 0;
}
