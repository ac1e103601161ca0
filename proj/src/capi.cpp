#include "fracplap.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "fracplap/barriers.hpp"
#include "fracplap/fundamental.hpp"
#include "fracplap/kernel.hpp"
#include "fracplap/kernel_theta.hpp"
#include "fracplap/oracle.hpp"
#include "fracplap/profile.hpp"
#include "fracplap/radial_operator.hpp"
#include "fracplap/report.hpp"
#include "fracplap/specfun.hpp"

using namespace fracplap;

struct fp_params {
    FracParams v;
};
struct fp_quadspec {
    quadrature::QuadratureSpec v;
};
struct fp_kernel {
    kernel::KernelEvaluator v;
};
struct fp_profile {
    profile::RadialProfile v;
};
struct fp_report {
    report::Report v;
    fp_verdict verdict = FP_NA;
};

namespace {

thread_local std::string g_last_error;

fp_status fail(fp_status s, const std::string& what) {
    g_last_error = what;
    return s;
}

template <class F>
fp_status guarded(F&& f) {
    try {
        f();
        return FP_OK;
    } catch (const domain_error& e) {
        return fail(FP_DOMAIN_ERROR, e.what());
    } catch (const range_error& e) {
        return fail(FP_DOMAIN_ERROR, e.what());
    } catch (const std::exception& e) {
        return fail(FP_NUMERIC_ERROR, e.what());
    }
}

fp_status check_args(bool ok) { return ok ? FP_OK : fail(FP_USAGE_ERROR, "null handle or bad argument"); }

fp_sign to_c_sign(fundamental::Sign s) {
    switch (s) {
        case fundamental::Sign::Zero: return FP_SIGN_ZERO;
        case fundamental::Sign::Positive: return FP_SIGN_POSITIVE;
        case fundamental::Sign::Negative: return FP_SIGN_NEGATIVE;
    }
    return FP_SIGN_ZERO;
}

fp_verdict to_c_verdict(barriers::Verdict v) {
    switch (v) {
        case barriers::Verdict::Pass: return FP_PASS;
        case barriers::Verdict::Fail: return FP_FAIL;
        case barriers::Verdict::Error: return FP_ERROR;
    }
    return FP_ERROR;
}

void add_params_meta(report::Report& rep, const FracParams& p) {
    rep.meta.emplace_back("N", static_cast<long long>(p.n));
    rep.meta.emplace_back("s", p.s);
    rep.meta.emplace_back("p", p.p);
    rep.meta.emplace_back("sp", p.sp());
}

// Quadrature diagnostics carried in every report (JSON meta block).
void add_spec_meta(report::Report& rep, const quadrature::QuadratureSpec& spec) {
    rep.meta.emplace_back("rel_tol", spec.rel_tol);
    rep.meta.emplace_back("abs_tol", spec.abs_tol);
    rep.meta.emplace_back("max_subdivisions", static_cast<long long>(spec.max_subdivisions));
    std::string eps;
    for (double e : spec.pv_epsilons) {
        if (!eps.empty()) eps += " ";
        eps += report::format_cell(e);
    }
    rep.meta.emplace_back("pv_epsilons", eps);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

report::Cell pass_cell(bool pass) { return std::string(pass ? "pass" : "fail"); }

fp_report* wrap_barrier_report(const FracParams& params, const quadrature::QuadratureSpec& spec,
                               const barriers::BarrierCheckReport& rep) {
    auto* h = new fp_report;
    h->v.kind = std::string("check_") + barriers::barrier_kind_name(rep.kind);
    add_params_meta(h->v, params);
    add_spec_meta(h->v, spec);
    for (const auto& [k, val] : rep.parameters) h->v.meta.emplace_back(k, val);
    h->v.columns = {"r", "value", "err_est", "bound", "pass", "note"};
    for (const auto& row : rep.rows)
        h->v.add_row({row.r, row.value, row.err_est, row.bound, pass_cell(row.pass), row.note});
    h->v.verdict = barriers::verdict_name(rep.verdict);
    h->verdict = to_c_verdict(rep.verdict);
    return h;
}

}  // namespace

extern "C" {

const char* fp_version(void) { return "fracplap 1.0.0"; }

const char* fp_last_error_message(void) { return g_last_error.c_str(); }

void fp_string_free(char* s) { std::free(s); }

fp_status fp_params_create(int n, double s, double p, fp_params** out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = new fp_params{FracParams(n, s, p)}; });
}

void fp_params_free(fp_params* h) { delete h; }

fp_status fp_params_sp(const fp_params* h, double* out) {
    if (fp_status st = check_args(h && out)) return st;
    *out = h->v.sp();
    return FP_OK;
}

fp_status fp_params_beta_star(const fp_params* h, double* out) {
    if (fp_status st = check_args(h && out)) return st;
    *out = h->v.beta_star();
    return FP_OK;
}

fp_status fp_params_beta_interval(const fp_params* h, double* lo, double* hi) {
    if (fp_status st = check_args(h && lo && hi)) return st;
    *lo = h->v.beta_min();
    *hi = h->v.beta_max();
    return FP_OK;
}

fp_status fp_quadspec_create(fp_quadspec** out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    *out = new fp_quadspec{};
    return FP_OK;
}

void fp_quadspec_free(fp_quadspec* h) { delete h; }

fp_status fp_quadspec_set_rel_tol(fp_quadspec* h, double v) {
    if (fp_status st = check_args(h != nullptr)) return st;
    return guarded([&] {
        h->v.rel_tol = v;
        h->v.validate();
    });
}

fp_status fp_quadspec_set_abs_tol(fp_quadspec* h, double v) {
    if (fp_status st = check_args(h != nullptr)) return st;
    return guarded([&] {
        h->v.abs_tol = v;
        h->v.validate();
    });
}

fp_status fp_quadspec_set_max_subdivisions(fp_quadspec* h, int v) {
    if (fp_status st = check_args(h != nullptr)) return st;
    return guarded([&] {
        h->v.max_subdivisions = v;
        h->v.validate();
    });
}

fp_status fp_quadspec_set_pv_epsilons(fp_quadspec* h, const double* eps, size_t n) {
    if (fp_status st = check_args(h && eps && n >= 2)) return st;
    return guarded([&] {
        h->v.pv_epsilons.assign(eps, eps + n);
        h->v.validate();
    });
}

fp_status fp_quadspec_set_dual_path(fp_quadspec* h, int enabled) {
    if (fp_status st = check_args(h != nullptr)) return st;
    h->v.dual_path = enabled != 0;
    return FP_OK;
}

fp_status fp_gamma(double x, double* out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = specfun::gamma_fn(x); });
}

fp_status fp_beta(double a, double b, double* out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = specfun::beta_fn(a, b); });
}

fp_status fp_hyp2f1(double a, double b, double c, double t, double* out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = specfun::hyp2f1(a, b, c, t); });
}

fp_status fp_g_eval(const fp_params* params, double t, double* out) {
    if (fp_status st = check_args(params && out)) return st;
    return guarded([&] { *out = specfun::g_eval(t, params->v); });
}

fp_status fp_h_eval(const fp_params* params, double rho, double* out) {
    if (fp_status st = check_args(params && out)) return st;
    return guarded([&] { *out = specfun::h_eval(rho, params->v); });
}

fp_status fp_h_limit(const fp_params* params, double* out) {
    if (fp_status st = check_args(params && out)) return st;
    return guarded([&] { *out = specfun::h_limit(params->v); });
}

fp_status fp_alpha_n(int n, double* out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = kernel::alpha_n(n); });
}

fp_status fp_kernel_create(const fp_params* params, const fp_quadspec* spec, fp_kernel** out) {
    if (fp_status st = check_args(params && spec && out)) return st;
    return guarded([&] { *out = new fp_kernel{kernel::KernelEvaluator(params->v, spec->v)}; });
}

void fp_kernel_free(fp_kernel* h) { delete h; }

fp_status fp_kernel_k(const fp_kernel* h, double rho, double* out) {
    if (fp_status st = check_args(h && out)) return st;
    return guarded([&] { *out = h->v.k(rho); });
}

fp_status fp_kernel_k_theta(const fp_params* params, const fp_quadspec* spec, double rho, double* out) {
    if (fp_status st = check_args(params && spec && out)) return st;
    return guarded([&] { *out = kernel::k_theta(rho, params->v, spec->v); });
}

fp_status fp_profile_power(double beta, fp_profile** out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = new fp_profile{profile::power_profile(beta)}; });
}

fp_status fp_profile_log(fp_profile** out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = new fp_profile{profile::log_profile()}; });
}

fp_status fp_profile_constant(double c, fp_profile** out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = new fp_profile{profile::constant_profile(c)}; });
}

fp_status fp_profile_phi_eps(const fp_params* params, double beta, double eps, fp_profile** out) {
    if (fp_status st = check_args(params && out)) return st;
    return guarded([&] { *out = new fp_profile{barriers::make_phi_eps(params->v, beta, eps)}; });
}

fp_status fp_profile_psi_eps(const fp_params* params, double beta, double eps, double r,
                             fp_profile** out) {
    if (fp_status st = check_args(params && out)) return st;
    return guarded([&] { *out = new fp_profile{barriers::make_psi_eps(params->v, beta, eps, r)}; });
}

fp_status fp_profile_theta_eps(const fp_params* params, double beta, double eps, double R, double m,
                               fp_profile** out) {
    if (fp_status st = check_args(params && out)) return st;
    return guarded([&] { *out = new fp_profile{barriers::make_theta_eps(params->v, beta, eps, R, m)}; });
}

fp_status fp_profile_log_barrier(const fp_params* params, double eps, double kappa, double R,
                                 fp_profile** out) {
    if (fp_status st = check_args(params && out)) return st;
    return guarded([&] { *out = new fp_profile{barriers::make_log_barrier(params->v, eps, kappa, R)}; });
}

fp_status fp_profile_cutoff(double m, double R, fp_profile** out) {
    if (fp_status st = check_args(out != nullptr)) return st;
    return guarded([&] { *out = new fp_profile{barriers::make_cutoff_profile(m, R)}; });
}

fp_status fp_profile_supersolution(const fp_params* params, double q, const fp_quadspec* spec,
                                   fp_profile** out, double* kappa, double* scale) {
    if (fp_status st = check_args(params && spec && out)) return st;
    return guarded([&] {
        barriers::Supersolution sol = barriers::make_supersolution(params->v, q, spec->v);
        *out = new fp_profile{sol.profile};
        if (kappa) *kappa = sol.kappa;
        if (scale) *scale = sol.scale;
    });
}

void fp_profile_free(fp_profile* h) { delete h; }

fp_status fp_profile_eval(const fp_profile* h, double r, double* out) {
    if (fp_status st = check_args(h && out)) return st;
    return guarded([&] { *out = h->v(r); });
}

fp_status fp_phi_eps_threshold(const fp_params* params, double beta, double r, const fp_quadspec* spec,
                               double* out) {
    if (fp_status st = check_args(params && spec && out)) return st;
    return guarded([&] { *out = barriers::phi_eps_threshold(params->v, beta, r, spec->v); });
}

fp_status fp_psi_eps_threshold(const fp_params* params, double beta, const fp_quadspec* spec,
                               double* out) {
    if (fp_status st = check_args(params && spec && out)) return st;
    return guarded([&] { *out = barriers::psi_eps_threshold(params->v, beta, spec->v); });
}

fp_status fp_theta_eps_threshold(const fp_params* params, double beta, double r, double R,
                                 const fp_quadspec* spec, double* out) {
    if (fp_status st = check_args(params && spec && out)) return st;
    return guarded([&] { *out = barriers::theta_eps_threshold(params->v, beta, r, R, spec->v); });
}

fp_status fp_operator_pv(const fp_profile* f, double r, const fp_kernel* kernel_h,
                         const fp_quadspec* spec, double* value, double* err_est) {
    if (fp_status st = check_args(f && kernel_h && spec && value)) return st;
    return guarded([&] {
        radial::OperatorValue v = radial::frac_plap_radial_pv(f->v, r, kernel_h->v, spec->v);
        *value = v.value;
        if (err_est) *err_est = v.err_est;
    });
}

fp_status fp_operator_jeps(const fp_profile* f, double r, double eps, const fp_kernel* kernel_h,
                           const fp_quadspec* spec, double* value, double* err_est) {
    if (fp_status st = check_args(f && kernel_h && spec && value)) return st;
    return guarded([&] {
        radial::OperatorValue v = radial::frac_plap_radial_jeps(f->v, r, eps, kernel_h->v, spec->v);
        *value = v.value;
        if (err_est) *err_est = v.err_est;
    });
}

fp_status fp_cbeta(const fp_params* params, double beta, const fp_quadspec* spec, double* value,
                   double* err_est, fp_sign* sign, double* rhs_exponent) {
    if (fp_status st = check_args(params && spec && value)) return st;
    return guarded([&] {
        fundamental::CBetaResult r = fundamental::c_beta(params->v, beta, spec->v);
        *value = r.value;
        if (err_est) *err_est = r.err_est;
        if (sign) *sign = to_c_sign(r.predicted_sign);
        if (rhs_exponent) *rhs_exponent = r.rhs_exponent;
    });
}

fp_status fp_cbeta_sign(const fp_params* params, double beta, fp_sign* out) {
    if (fp_status st = check_args(params && out)) return st;
    return guarded([&] { *out = to_c_sign(fundamental::c_beta_sign(params->v, beta)); });
}

fp_status fp_cbeta_zeros(const fp_params* params, const fp_quadspec* spec, double* root_low,
                         double* root_high) {
    if (fp_status st = check_args(params && spec && root_low && root_high)) return st;
    return guarded([&] {
        auto [lo, hi] = fundamental::c_beta_zeros(params->v, spec->v);
        *root_low = lo;
        *root_high = hi;
    });
}

fp_status fp_cbeta_direct_2d(double s, double p, double beta, const fp_quadspec* spec, double* out) {
    if (fp_status st = check_args(spec && out)) return st;
    return guarded([&] { *out = oracle::c_beta_direct_2d(s, p, beta, spec->v); });
}

fp_status fp_report_cbeta_sweep(const fp_params* params, const double* betas, size_t n,
                                const fp_quadspec* spec, fp_report** out) {
    if (fp_status st = check_args(params && betas && n > 0 && spec && out)) return st;
    return guarded([&] {
        std::vector<double> grid(betas, betas + n);
        std::vector<fundamental::SweepEntry> entries =
            fundamental::c_beta_sweep(params->v, grid, spec->v);
        auto* h = new fp_report;
        h->v.kind = "cbeta";
        add_params_meta(h->v, params->v);
        add_spec_meta(h->v, spec->v);
        h->v.meta.emplace_back("beta_star", params->v.beta_star());
        h->v.columns = {"beta", "value", "err_est", "predicted_sign", "rhs_exponent", "error"};
        bool any_error = false;
        for (const auto& e : entries) {
            if (e.result) {
                h->v.add_row({e.beta, e.result->value, e.result->err_est,
                              std::string(fundamental::sign_name(e.result->predicted_sign)),
                              e.result->rhs_exponent, std::string()});
            } else {
                any_error = true;
                h->v.add_row({e.beta, 0.0, 0.0, std::string(), 0.0, e.error});
            }
        }
        h->verdict = any_error ? FP_ERROR : FP_NA;
        if (any_error) h->v.verdict = "error";
        *out = h;
    });
}

fp_status fp_report_verify_fundamental(const fp_params* params, double beta, const double* radii,
                                       size_t n, const fp_quadspec* spec, fp_report** out) {
    if (fp_status st = check_args(params && radii && n > 0 && spec && out)) return st;
    return guarded([&] {
        std::vector<double> rs(radii, radii + n);
        radial::FundamentalReport rep = radial::verify_fundamental_identity(params->v, beta, rs, spec->v);
        auto* h = new fp_report;
        h->v.kind = "verify_fundamental";
        add_params_meta(h->v, params->v);
        add_spec_meta(h->v, spec->v);
        h->v.meta.emplace_back("beta", rep.beta);
        h->v.meta.emplace_back("c_beta", rep.c_value);
        h->v.meta.emplace_back("c_beta_err", rep.c_err);
        h->v.meta.emplace_back("rhs_exponent", rep.rhs_exponent);
        h->v.meta.emplace_back("predicted_sign", std::string(fundamental::sign_name(rep.predicted_sign)));
        h->v.meta.emplace_back("zero_mode", std::string(rep.zero_mode ? "true" : "false"));
        h->v.meta.emplace_back("tolerance", rep.tolerance);
        h->v.columns = {"r", "pv", "pv_err", "rhs", "residual", "pass"};
        for (const auto& row : rep.rows)
            h->v.add_row({row.r, row.pv, row.pv_err, row.rhs, row.residual, pass_cell(row.pass)});
        h->v.verdict = rep.pass ? "pass" : "fail";
        h->verdict = rep.pass ? FP_PASS : FP_FAIL;
        *out = h;
    });
}

fp_status fp_report_verify_log(const fp_params* params, const double* radii, size_t n,
                               const fp_quadspec* spec, fp_report** out) {
    if (fp_status st = check_args(params && radii && n > 0 && spec && out)) return st;
    return guarded([&] {
        std::vector<double> rs(radii, radii + n);
        radial::LogReport rep = radial::verify_log_harmonic(params->v, rs, spec->v);
        auto* h = new fp_report;
        h->v.kind = "verify_log";
        add_params_meta(h->v, params->v);
        add_spec_meta(h->v, spec->v);
        h->v.meta.emplace_back("tolerance", rep.tolerance);
        h->v.columns = {"r", "pv", "pv_err", "scale", "ratio", "pass"};
        for (const auto& row : rep.rows)
            h->v.add_row({row.r, row.pv, row.pv_err, row.scale, row.ratio, pass_cell(row.pass)});
        h->v.verdict = rep.pass ? "pass" : "fail";
        h->verdict = rep.pass ? FP_PASS : FP_FAIL;
        *out = h;
    });
}

fp_status fp_report_check_phi(const fp_params* params, double beta, double r, double eps, int n_samples,
                              const fp_quadspec* spec, fp_report** out) {
    if (fp_status st = check_args(params && spec && out && n_samples > 0)) return st;
    return guarded([&] {
        *out = wrap_barrier_report(params->v, spec->v,
                                   barriers::check_phi_eps(params->v, beta, r, eps, n_samples, spec->v));
    });
}

fp_status fp_report_check_psi(const fp_params* params, double beta, double r, double eps, int n_samples,
                              const fp_quadspec* spec, fp_report** out) {
    if (fp_status st = check_args(params && spec && out && n_samples > 0)) return st;
    return guarded([&] {
        *out = wrap_barrier_report(params->v, spec->v,
                                   barriers::check_psi_eps(params->v, beta, r, eps, n_samples, spec->v));
    });
}

fp_status fp_report_check_theta(const fp_params* params, double beta, double r, double R, double m,
                                double eps, int n_samples, const fp_quadspec* spec, fp_report** out) {
    if (fp_status st = check_args(params && spec && out && n_samples > 0)) return st;
    return guarded([&] {
        *out = wrap_barrier_report(
            params->v, spec->v, barriers::check_theta_eps(params->v, beta, r, R, m, eps, n_samples, spec->v));
    });
}

fp_status fp_report_check_logbarrier(const fp_params* params, double eps, double r, double R,
                                     double kappa, int n_samples, const fp_quadspec* spec,
                                     fp_report** out) {
    if (fp_status st = check_args(params && spec && out && n_samples > 0)) return st;
    return guarded([&] {
        *out = wrap_barrier_report(
            params->v, spec->v, barriers::check_log_barrier(params->v, eps, r, R, kappa, n_samples, spec->v));
    });
}

fp_status fp_report_check_cutoff(const fp_params* params, double m, const double* Rs, size_t n_R,
                                 int n_samples, const fp_quadspec* spec, fp_report** out) {
    if (fp_status st = check_args(params && Rs && n_R > 0 && spec && out && n_samples > 0)) return st;
    return guarded([&] {
        std::vector<double> rs(Rs, Rs + n_R);
        barriers::CutoffScalingReport rep =
            barriers::check_cutoff_scaling(params->v, m, rs, n_samples, spec->v);
        auto* h = new fp_report;
        h->v.kind = "check_cutoff";
        add_params_meta(h->v, params->v);
        add_spec_meta(h->v, spec->v);
        h->v.meta.emplace_back("m", rep.m);
        h->v.meta.emplace_back("c_calibrated", rep.c_calibrated);
        h->v.meta.emplace_back("spread", rep.spread);
        h->v.meta.emplace_back("tolerance", rep.tolerance);
        h->v.columns = {"R", "sup_scaled", "r", "value", "err_est", "bound", "pass"};
        for (const auto& e : rep.entries)
            for (const auto& row : e.rows)
                h->v.add_row(
                    {e.R, e.sup_scaled, row.r, row.value, row.err_est, row.bound, pass_cell(row.pass)});
        h->v.verdict = barriers::verdict_name(rep.verdict);
        h->verdict = to_c_verdict(rep.verdict);
        *out = h;
    });
}

fp_status fp_report_check_supercritical(const fp_params* params, double q, const double* radii,
                                        size_t n, const fp_quadspec* spec, fp_report** out) {
    if (fp_status st = check_args(params && radii && n > 0 && spec && out)) return st;
    return guarded([&] {
        std::vector<double> rs(radii, radii + n);
        *out = wrap_barrier_report(params->v, spec->v, barriers::supercritical_check(params->v, q, rs, spec->v));
    });
}

fp_status fp_report_kernel_table(const fp_params* params, const double* rhos, size_t n,
                                 int compare_theta, const char* quantity, const fp_quadspec* spec,
                                 fp_report** out) {
    if (fp_status st = check_args(params && rhos && n > 0 && quantity && spec && out)) return st;
    return guarded([&] {
        std::string q(quantity);
        if (q != "K" && q != "G" && q != "H")
            throw domain_error("kernel table: quantity must be one of K, G, H");
        kernel::KernelEvaluator ke(params->v, spec->v);
        auto* h = new fp_report;
        h->v.kind = "kernel";
        add_params_meta(h->v, params->v);
        add_spec_meta(h->v, spec->v);
        h->v.meta.emplace_back("quantity", q);
        h->v.columns = {"rho", "value"};
        bool with_theta = compare_theta != 0 && q == "K";
        if (with_theta) {
            h->v.columns.push_back("theta_value");
            h->v.columns.push_back("rel_diff");
        }
        for (size_t i = 0; i < n; ++i) {
            double rho = rhos[i];
            double v = q == "K"   ? ke.k(rho)
                       : q == "G" ? specfun::g_eval(rho, params->v)
                                  : specfun::h_eval(rho, params->v);
            std::vector<report::Cell> row = {rho, v};
            if (with_theta) {
                double t = kernel::k_theta(rho, params->v, spec->v);
                row.push_back(t);
                row.push_back(std::fabs(v - t) / std::max(std::fabs(t), 1e-300));
            }
            h->v.add_row(std::move(row));
        }
        *out = h;
    });
}

void fp_report_free(fp_report* h) { delete h; }

fp_status fp_report_verdict(const fp_report* h, fp_verdict* out) {
    if (fp_status st = check_args(h && out)) return st;
    *out = h->verdict;
    return FP_OK;
}

fp_status fp_report_to_csv(const fp_report* h, char** out) {
    if (fp_status st = check_args(h && out)) return st;
    return guarded([&] { *out = dup_string(h->v.to_csv()); });
}

fp_status fp_report_to_json(const fp_report* h, char** out) {
    if (fp_status st = check_args(h && out)) return st;
    return guarded([&] { *out = dup_string(h->v.to_json()); });
}

}  // extern "C"
