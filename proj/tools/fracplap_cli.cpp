// fracplap command-line front end. Talks to the shared library through the
// C API only; every command emits a CSV or JSON report.
//
// Exit codes: 0 success/pass, 1 verification fail, 2 domain error,
// 3 numerical failure, 64 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracplap.h"

namespace {

struct Common {
    int n = 2;
    double s = 0.5;
    double p = 2.0;
    std::string format = "csv";
    std::string out_path;
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdiv = 2000;
    std::vector<double> pv_eps;
};

void add_param_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--N", c.n, "dimension, integer >= 2")->required();
    cmd->add_option("--s", c.s, "fractional order, in (0,1)")->required();
    cmd->add_option("--p", c.p, "nonlinearity exponent, in (1,inf)")->required();
}

void add_output_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out_path, "output file (default stdout)");
    cmd->add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance");
    cmd->add_option("--abs-tol", c.abs_tol, "quadrature absolute tolerance");
    cmd->add_option("--max-subdiv", c.max_subdiv, "quadrature subdivision budget");
    cmd->add_option("--pv-eps", c.pv_eps, "principal-value epsilon schedule (decreasing)")->delimiter(',');
}

struct ParamsDeleter {
    void operator()(fp_params* h) const { fp_params_free(h); }
};
struct SpecDeleter {
    void operator()(fp_quadspec* h) const { fp_quadspec_free(h); }
};
struct ReportDeleter {
    void operator()(fp_report* h) const { fp_report_free(h); }
};

int status_exit(fp_status st) {
    if (st == FP_OK) return 0;
    std::fprintf(stderr, "fracplap: %s\n", fp_last_error_message());
    return static_cast<int>(st);
}

// Builds params+spec, runs `make` to obtain a report, serializes it.
// fail_on_verdict makes a failing report exit 1 (the verify contract).
int run_report(const Common& c, bool fail_on_verdict,
               const std::function<fp_status(fp_params*, fp_quadspec*, fp_report**)>& make) {
    std::unique_ptr<fp_params, ParamsDeleter> params;
    {
        fp_params* raw = nullptr;
        if (fp_status st = fp_params_create(c.n, c.s, c.p, &raw)) return status_exit(st);
        params.reset(raw);
    }
    std::unique_ptr<fp_quadspec, SpecDeleter> spec;
    {
        fp_quadspec* raw = nullptr;
        if (fp_status st = fp_quadspec_create(&raw)) return status_exit(st);
        spec.reset(raw);
    }
    if (fp_status st = fp_quadspec_set_rel_tol(spec.get(), c.rel_tol)) return status_exit(st);
    if (fp_status st = fp_quadspec_set_abs_tol(spec.get(), c.abs_tol)) return status_exit(st);
    if (fp_status st = fp_quadspec_set_max_subdivisions(spec.get(), c.max_subdiv)) return status_exit(st);
    if (!c.pv_eps.empty()) {
        if (fp_status st = fp_quadspec_set_pv_epsilons(spec.get(), c.pv_eps.data(), c.pv_eps.size()))
            return status_exit(st);
    }

    std::unique_ptr<fp_report, ReportDeleter> rep;
    {
        fp_report* raw = nullptr;
        if (fp_status st = make(params.get(), spec.get(), &raw)) return status_exit(st);
        rep.reset(raw);
    }

    char* text = nullptr;
    fp_status st = c.format == "json" ? fp_report_to_json(rep.get(), &text)
                                      : fp_report_to_csv(rep.get(), &text);
    if (st != FP_OK) return status_exit(st);
    if (c.out_path.empty()) {
        std::fputs(text, stdout);
    } else {
        std::ofstream f(c.out_path, std::ios::binary);
        if (!f) {
            std::fprintf(stderr, "fracplap: cannot open %s\n", c.out_path.c_str());
            fp_string_free(text);
            return 64;
        }
        f << text;
    }
    fp_string_free(text);

    if (fail_on_verdict) {
        fp_verdict v = FP_NA;
        fp_report_verdict(rep.get(), &v);
        if (v == FP_FAIL) return 1;
        if (v == FP_ERROR) return 3;
    }
    return 0;
}

std::vector<double> parse_grid(const std::string& grid) {
    // from:to:steps
    double from = 0, to = 0;
    int steps = 0;
    char extra = 0;
    if (std::sscanf(grid.c_str(), "%lf:%lf:%d%c", &from, &to, &steps, &extra) != 3 || steps < 1)
        throw CLI::ValidationError("--beta-grid", "expected from:to:steps with steps >= 1");
    std::vector<double> out;
    if (steps == 1) {
        out.push_back(from);
        return out;
    }
    for (int i = 0; i < steps; ++i) out.push_back(from + (to - from) * i / (steps - 1.0));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fundamental solutions and barrier checks for the fractional p-Laplacian"};
    app.require_subcommand(1);

    Common c;

    // cbeta ---------------------------------------------------------------
    auto* cbeta = app.add_subcommand("cbeta", "compute the constant C(beta)");
    double beta_single = 0.0;
    std::string beta_grid;
    add_param_flags(cbeta, c);
    auto* opt_beta = cbeta->add_option("--beta", beta_single, "single beta value");
    auto* opt_grid = cbeta->add_option("--beta-grid", beta_grid, "grid from:to:steps");
    add_output_flags(cbeta, c);
    opt_beta->excludes(opt_grid);

    // kernel ----------------------------------------------------------------
    auto* kcmd = app.add_subcommand("kernel", "evaluate K(rho) / G(t) / H(rho)");
    std::vector<double> rhos;
    bool compare = false;
    std::string quantity = "K";
    add_param_flags(kcmd, c);
    kcmd->add_option("--rho", rhos, "evaluation points")->required()->delimiter(',');
    kcmd->add_flag("--compare", compare, "also run the theta-quadrature path and report rel_diff");
    kcmd->add_option("--quantity", quantity, "K (kernel), G, or H")
        ->check(CLI::IsMember({"K", "G", "H"}));
    add_output_flags(kcmd, c);

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "verification reports");
    verify->require_subcommand(1);

    double v_beta = 0.0, v_eps = -1.0, v_r = 2.0, v_R = 4.0, v_m = 1.0, v_q = 4.0, v_kappa = -1.0;
    int v_samples = 8;
    std::vector<double> v_radii{0.5, 1.0, 2.0, 5.0};
    std::vector<double> v_Rs{1.0, 2.0, 4.0};

    auto* vf = verify->add_subcommand("fundamental", "PV(v_beta) against C(beta) r^{beta(p-1)-sp}");
    add_param_flags(vf, c);
    vf->add_option("--beta", v_beta)->required();
    vf->add_option("--radii", v_radii, "evaluation radii")->delimiter(',');
    add_output_flags(vf, c);

    auto* vl = verify->add_subcommand("log", "PV(log|x|) = 0 in the ps = N case");
    add_param_flags(vl, c);
    vl->add_option("--radii", v_radii, "evaluation radii")->delimiter(',');
    add_output_flags(vl, c);

    auto* vphi = verify->add_subcommand("phi", "phi_eps subsolution sign on A_{r,4r}");
    add_param_flags(vphi, c);
    vphi->add_option("--beta", v_beta)->required();
    vphi->add_option("--eps", v_eps, "cap radius (default 0.5 * derived threshold)");
    vphi->add_option("--r", v_r, "inner annulus radius (> 1)");
    vphi->add_option("--samples", v_samples);
    add_output_flags(vphi, c);

    auto* vpsi = verify->add_subcommand("psi", "psi_eps subsolution sign on A_{r/2,2r}");
    add_param_flags(vpsi, c);
    vpsi->add_option("--beta", v_beta)->required();
    vpsi->add_option("--eps", v_eps, "default 0.5 * derived threshold");
    vpsi->add_option("--r", v_r, "annulus scale (> 1)");
    vpsi->add_option("--samples", v_samples);
    add_output_flags(vpsi, c);

    auto* vth = verify->add_subcommand("theta", "theta_eps subsolution sign on A_{r,R} (N < ps)");
    add_param_flags(vth, c);
    vth->add_option("--beta", v_beta)->required();
    vth->add_option("--eps", v_eps, "default 0.5 * derived threshold");
    vth->add_option("--r", v_r);
    vth->add_option("--R", v_R);
    vth->add_option("--m", v_m);
    vth->add_option("--samples", v_samples);
    add_output_flags(vth, c);

    auto* vlb = verify->add_subcommand("logbarrier", "h(x) <= 0 for the ps = N barrier");
    add_param_flags(vlb, c);
    vlb->add_option("--eps", v_eps, "cutoff radius (< 1)");
    vlb->add_option("--kappa", v_kappa, "bump height (default: doubling search)");
    vlb->add_option("--r", v_r);
    vlb->add_option("--R", v_R);
    vlb->add_option("--samples", v_samples);
    add_output_flags(vlb, c);

    auto* vcut = verify->add_subcommand("cutoff", "R-scaling of the smooth cutoff bound");
    add_param_flags(vcut, c);
    vcut->add_option("--m", v_m);
    vcut->add_option("--R", v_Rs, "cutoff radii to compare")->delimiter(',');
    vcut->add_option("--samples", v_samples);
    add_output_flags(vcut, c);

    auto* vsc = verify->add_subcommand("supercritical", "supercritical supersolution inequality");
    add_param_flags(vsc, c);
    vsc->add_option("--q", v_q)->required();
    vsc->add_option("--radii", v_radii)->delimiter(',');
    add_output_flags(vsc, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (cbeta->parsed()) {
            std::vector<double> grid;
            if (!beta_grid.empty())
                grid = parse_grid(beta_grid);
            else if (opt_beta->count() > 0)
                grid.push_back(beta_single);
            else {
                std::fprintf(stderr, "fracplap: cbeta needs --beta or --beta-grid\n");
                return 64;
            }
            return run_report(c, false, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_cbeta_sweep(p, grid.data(), grid.size(), s, out);
            });
        }
        if (kcmd->parsed()) {
            return run_report(c, false, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_kernel_table(p, rhos.data(), rhos.size(), compare ? 1 : 0,
                                              quantity.c_str(), s, out);
            });
        }
        if (vf->parsed())
            return run_report(c, true, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_verify_fundamental(p, v_beta, v_radii.data(), v_radii.size(), s, out);
            });
        if (vl->parsed())
            return run_report(c, true, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_verify_log(p, v_radii.data(), v_radii.size(), s, out);
            });
        if (vphi->parsed())
            return run_report(c, true, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_check_phi(p, v_beta, v_r, v_eps, v_samples, s, out);
            });
        if (vpsi->parsed())
            return run_report(c, true, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_check_psi(p, v_beta, v_r, v_eps, v_samples, s, out);
            });
        if (vth->parsed())
            return run_report(c, true, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_check_theta(p, v_beta, v_r, v_R, v_m, v_eps, v_samples, s, out);
            });
        if (vlb->parsed())
            return run_report(c, true, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_check_logbarrier(p, v_eps > 0 ? v_eps : 0.5, v_r, v_R, v_kappa,
                                                  v_samples, s, out);
            });
        if (vcut->parsed())
            return run_report(c, true, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_check_cutoff(p, v_m, v_Rs.data(), v_Rs.size(), v_samples, s, out);
            });
        if (vsc->parsed())
            return run_report(c, true, [&](fp_params* p, fp_quadspec* s, fp_report** out) {
                return fp_report_check_supercritical(p, v_q, v_radii.data(), v_radii.size(), s, out);
            });
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "fracplap: %s\n", e.what());
        return 64;
    }
    return 64;
}
