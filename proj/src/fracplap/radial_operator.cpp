#include "fracplap/radial_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracplap/parallel.hpp"
#include "fracplap/specfun.hpp"

namespace fracplap::radial {

namespace {

using profile::LocalDiffs;
using profile::PieceKind;
using profile::RadialProfile;

// Psi_p(m+h) - Psi_p(m-h). For |h| << |m| the direct difference loses
// |m/h| digits, so the odd midpoint series is used instead.
double psi_p_odd_diff(double m, double h, double p) {
    if (h == 0.0) return 0.0;
    if (m == 0.0 || std::fabs(h) >= 0.01 * std::fabs(m))
        return psi_p(m + h, p) - psi_p(m - h, p);
    double q = h / m, q2 = q * q;
    double bracket = 1.0 + q2 * ((p - 2.0) * (p - 3.0) / 6.0 +
                                 q2 * (p - 2.0) * (p - 3.0) * (p - 4.0) * (p - 5.0) / 120.0);
    return 2.0 * (p - 1.0) * std::pow(std::fabs(m), p - 2.0) * h * bracket;
}

// Psi_p(u) * rho^e without intermediate overflow when |u| is huge.
double psi_term(double u, double p, double rho, double e) {
    double au = std::fabs(u);
    if (au < 1e100) return psi_p(u, p) * std::pow(rho, e);
    return std::copysign(std::exp((p - 1.0) * std::log(au) + e * std::log(rho)), u);
}

struct FoldContext {
    const RadialProfile& f;
    double r;
    const FracParams& params;
    double fr;       // f(r)
    size_t pr;       // piece index at r
    double p, ps;
    int N;

    FoldContext(const RadialProfile& f_, double r_, const FracParams& params_)
        : f(f_), r(r_), params(params_), fr(f_(r_)), pr(f_.piece_index(r_)),
          p(params_.p), ps(params_.sp()), N(params_.n) {}

    // Psi_p(f(r) - f(r rho)) rho^{N-1}, overflow-safe at rho -> 0 for
    // unbounded heads (the combined power exponent exceeds -1).
    double term_inner(double rho) const {
        double frho = f(r * rho);
        if (std::isfinite(frho) && std::fabs(frho) < 1e100)
            return psi_term(fr - frho, p, rho, N - 1.0);
        const profile::Piece& head = f.pieces().front();
        // only a negative power head can get here
        double mag = (p - 1.0) * (std::log(std::fabs(head.coeff)) + head.exponent * std::log(r * rho)) +
                     (N - 1.0) * std::log(rho);
        return -std::copysign(std::exp(mag), head.coeff);
    }

    // Psi_p(f(r) - f(r/rho)) rho^{ps-1}, overflow-safe at rho -> 0 for
    // growing tails.
    double term_outer(double rho) const {
        double fout = f(r / rho);
        if (std::isfinite(fout) && std::fabs(fout) < 1e100)
            return psi_term(fr - fout, p, rho, ps - 1.0);
        const profile::Piece& tail = f.pieces().back();
        double base = tail.kind == PieceKind::ShiftedPower ? tail.shift * rho + r : r;
        double mag = (p - 1.0) * (std::log(std::fabs(tail.coeff)) +
                                  tail.exponent * (std::log(base) - std::log(rho))) +
                     (ps - 1.0) * std::log(rho);
        return -std::copysign(std::exp(mag), tail.coeff);
    }

    double combined_direct(double rho) const {
        return (term_inner(rho) + term_outer(rho)) * specfun::g_eval(rho * rho, params);
    }

    // combined(1-w) / w^{p(1-s)-1} on the singular panel, where r rho and
    // r/rho stay inside the piece containing r. The two Psi terms cancel to
    // order w^p; the regrouped form keeps that cancellation exact:
    //   Ta = [Psi(u_in) - Psi(-u_out)] rho^{N-1}   (odd midpoint difference)
    //   Tb = Psi(u_out) rho^{N-1} expm1((ps-N) ln rho)
    double combined_regularized(double w) const {
        LocalDiffs d = f.local_diffs(pr, r, w);
        if (d.u_inner == 0.0 && d.u_outer == 0.0) return 0.0;
        double rho = 1.0 - w;
        double rhoN = std::pow(rho, N - 1.0);
        double Ta = psi_p_odd_diff(0.5 * (d.u_inner - d.u_outer), 0.5 * d.second, p) * rhoN;
        double Tb = (ps == static_cast<double>(N))
                        ? 0.0
                        : psi_p(d.u_outer, p) * rhoN * std::expm1((ps - N) * std::log1p(-w));
        return (Ta + Tb) * specfun::h_eval_w(w, params) * std::pow(w, -p);
    }
};

// Breakpoint images in rho-space for radius r: bk/r for inner breakpoints,
// r/bk for outer ones.
std::vector<double> breakpoint_images(const RadialProfile& f, double r) {
    std::vector<double> images;
    for (double bk : f.quadrature_breakpoints()) {
        if (bk <= 0.0) continue;
        if (bk < r) images.push_back(bk / r);
        if (bk > r) images.push_back(r / bk);
    }
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    return images;
}

// Exponent of the combined integrand as rho -> 0 (G(0) is finite, so this is
// set by the head/tail of the profile).
double left_exponent(const RadialProfile& f, const FracParams& params) {
    double p = params.p, ps = params.sp();
    double inner = params.n - 1.0 + std::min(f.head_growth_exponent(), 0.0) * (p - 1.0);
    double outer = ps - 1.0 - std::max(f.tail_growth_exponent(), 0.0) * (p - 1.0);
    double lam0 = std::min(inner, outer);
    if (!(lam0 > -1.0))
        throw domain_error("radial operator: integrand exponent " + std::to_string(lam0) +
                           " at rho=0 is non-integrable");
    return lam0;
}

// Geometric refinement points approaching `hi` from `lo`: the truncated
// integrands grow like (1-rho)^{p-2-ps} toward the cut, and halving the gap
// per panel keeps the adaptive work bounded.
void append_geometric(std::vector<double>& splits, double lo, double hi, double gap_at_hi) {
    double g = gap_at_hi;
    for (int k = 0; k < 60; ++k) {
        g *= 2.0;
        double x = hi - g;
        if (x <= lo) break;
        splits.push_back(x);
    }
}

struct PanelSum {
    double value = 0.0;
    double err = 0.0;

    void add(const quadrature::IntegralResult& r) {
        value += r.value;
        err += r.err_est;
    }
};

// integral_0^hi of term(rho)*G(rho^2) with a graded left panel when the
// rho -> 0 exponent is negative, plus the given interior splits.
PanelSum integrate_with_left_grading(const std::function<double(double)>& term_times_G, double hi,
                                     double lam0, std::vector<double> splits,
                                     const quadrature::QuadratureSpec& spec) {
    PanelSum sum;
    double lo = 0.0;
    if (lam0 < -1e-9) {
        double v0 = 0.25 * hi;
        for (double s : splits)
            if (s > 1e-300) v0 = std::min(v0, 0.5 * s);
        sum.add(quadrature::integrate_graded(
            [&](double v) { return term_times_G(v) * std::pow(v, -lam0); }, v0, lam0, spec));
        lo = v0;
    }
    splits.erase(std::remove_if(splits.begin(), splits.end(),
                                [&](double s) { return s <= lo || s >= hi; }),
                 splits.end());
    sum.add(quadrature::integrate_adaptive(term_times_G, lo, hi, spec, std::move(splits)));
    return sum;
}

OperatorValue pv_folded(const RadialProfile& f, double r, const kernel::KernelEvaluator& ke,
                        const quadrature::QuadratureSpec& spec);

OperatorValue jeps_impl(const RadialProfile& f, double r, double eps, const kernel::KernelEvaluator& ke,
                        const quadrature::QuadratureSpec& spec) {
    const FracParams& params = ke.params();
    if (!(r > 0.0)) throw domain_error("frac_plap_radial_jeps: requires r > 0");
    if (!(eps > 0.0 && eps < r))
        throw domain_error("frac_plap_radial_jeps: requires 0 < eps < r, got eps = " +
                           std::to_string(eps) + ", r = " + std::to_string(r));
    f.validate_tail(params);

    FoldContext ctx(f, r, params);
    std::vector<double> images = breakpoint_images(f, r);
    double p = params.p, ps = params.sp();

    double upper_in = 1.0 - eps / r;
    double upper_out = r / (r + eps);
    double lam_in = params.n - 1.0 + std::min(f.head_growth_exponent(), 0.0) * (p - 1.0);
    double lam_out = ps - 1.0 - std::max(f.tail_growth_exponent(), 0.0) * (p - 1.0);
    left_exponent(f, params);  // integrability guard

    std::vector<double> splits_in(images), splits_out(images);
    append_geometric(splits_in, 0.45, upper_in, eps / r);
    append_geometric(splits_out, 0.45, upper_out, eps / (r + eps));

    PanelSum inner = integrate_with_left_grading(
        [&](double rho) { return ctx.term_inner(rho) * specfun::g_eval(rho * rho, params); }, upper_in,
        lam_in, std::move(splits_in), spec);
    PanelSum outer = integrate_with_left_grading(
        [&](double rho) { return ctx.term_outer(rho) * specfun::g_eval(rho * rho, params); }, upper_out,
        lam_out, std::move(splits_out), spec);

    double pref = ke.radial_prefactor() * std::pow(r, -ps);
    return {pref * (inner.value + outer.value), pref * (inner.err + outer.err), r, Mode::Truncated, eps};
}

OperatorValue pv_folded(const RadialProfile& f, double r, const kernel::KernelEvaluator& ke,
                        const quadrature::QuadratureSpec& spec) {
    const FracParams& params = ke.params();
    if (!(r > 0.0)) throw domain_error("frac_plap_radial_pv: requires r > 0");
    if (f.breakpoint_distance(r) < 1e-6)
        throw precondition_error(
            "frac_plap_radial_pv: r = " + std::to_string(r) +
            " is inside the breakpoint guard band (1e-6 * r); use the truncated J_eps mode");
    f.validate_tail(params);

    FoldContext ctx(f, r, params);
    std::vector<double> images = breakpoint_images(f, r);
    double rho_split = 0.5;
    if (!images.empty()) rho_split = std::max(0.5, 0.5 * (1.0 + images.back()));
    double lam0 = left_exponent(f, params);
    double lambda = params.p * (1.0 - params.s) - 1.0;

    PanelSum direct = integrate_with_left_grading(
        [&](double rho) { return ctx.combined_direct(rho); }, rho_split, lam0, images, spec);
    quadrature::IntegralResult sing = quadrature::integrate_graded(
        [&](double w) { return ctx.combined_regularized(w); }, 1.0 - rho_split, lambda, spec);

    double pref = ke.radial_prefactor() * std::pow(r, -params.sp());
    return {pref * (direct.value + sing.value), pref * (direct.err + sing.err_est), r,
            Mode::PrincipalValue, 0.0};
}

}  // namespace

OperatorValue frac_plap_radial_jeps(const RadialProfile& f, double r, double eps,
                                    const kernel::KernelEvaluator& ke,
                                    const quadrature::QuadratureSpec& spec) {
    return jeps_impl(f, r, eps, ke, spec);
}

OperatorValue frac_plap_radial_pv(const RadialProfile& f, double r, const kernel::KernelEvaluator& ke,
                                  const quadrature::QuadratureSpec& spec) {
    OperatorValue folded = pv_folded(f, r, ke, spec);
    if (spec.dual_path) {
        double cap = std::min(1.0, 0.5 * r);
        quadrature::IntegralResult ex = quadrature::pv_limit(
            [&](double eps) { return jeps_impl(f, r, eps * cap, ke, spec).value; }, spec);
        double slack = 3.0 * (folded.err_est + ex.err_est);
        if (std::fabs(folded.value - ex.value) > slack)
            throw convergence_error(
                "frac_plap_radial_pv: folded value " + std::to_string(folded.value) +
                " and J_eps extrapolation " + std::to_string(ex.value) +
                " disagree beyond 3x combined error " + std::to_string(slack));
    }
    return folded;
}

FundamentalReport verify_fundamental_identity(const FracParams& params, double beta,
                                              const std::vector<double>& radii,
                                              const quadrature::QuadratureSpec& spec,
                                              double tolerance) {
    params.require_power_case();
    params.require_beta_admissible(beta);
    fundamental::CBetaResult cb = fundamental::c_beta(params, beta, spec);

    FundamentalReport rep;
    rep.beta = beta;
    rep.c_value = cb.value;
    rep.c_err = cb.err_est;
    rep.rhs_exponent = cb.rhs_exponent;
    rep.predicted_sign = cb.predicted_sign;
    rep.tolerance = tolerance;
    rep.zero_mode = std::fabs(cb.value) <= 10.0 * cb.err_est;
    if (rep.zero_mode) {
        // C(beta) is indistinguishable from zero: residuals are measured
        // against the magnitude of C at nearby beta (scale-aware floor).
        double width = params.beta_max() - params.beta_min();
        double scale = 0.0;
        for (double db : {-0.1, 0.1}) {
            double bb = beta + db;
            if (!params.beta_admissible(bb)) bb = beta - db;
            bb = std::clamp(bb, params.beta_min() + 1e-3 * width, params.beta_max() - 1e-3 * width);
            scale = std::max(scale, std::fabs(fundamental::c_beta(params, bb, spec).value));
        }
        rep.zero_floor = scale * 1e-3;
    }

    kernel::KernelEvaluator ke(params, spec);
    RadialProfile v = profile::power_profile(beta);
    rep.rows.resize(radii.size());
    parallel::parallel_for(static_cast<int>(radii.size()), [&](int i) {
        FundamentalRow row;
        row.r = radii[i];
        OperatorValue pv = frac_plap_radial_pv(v, radii[i], ke, spec);
        row.pv = pv.value;
        row.pv_err = pv.err_est;
        double re = std::pow(radii[i], cb.rhs_exponent);
        row.rhs = cb.value * re;
        if (rep.zero_mode) {
            double floor = rep.zero_floor * re;
            row.residual = std::fabs(row.pv) / floor;
            row.pass = std::fabs(row.pv) <= floor + 10.0 * row.pv_err;
        } else {
            row.residual = std::fabs(row.pv - row.rhs) / std::fabs(row.rhs);
            row.pass = row.residual < tolerance;
        }
        rep.rows[i] = row;
    });
    rep.pass = std::all_of(rep.rows.begin(), rep.rows.end(),
                           [](const FundamentalRow& r) { return r.pass; });
    return rep;
}

LogReport verify_log_harmonic(const FracParams& params, const std::vector<double>& radii,
                              const quadrature::QuadratureSpec& spec, double tolerance) {
    params.require_log_case();
    kernel::KernelEvaluator ke(params, spec);
    RadialProfile v = profile::log_profile();

    LogReport rep;
    rep.tolerance = tolerance;
    rep.rows.resize(radii.size());
    parallel::parallel_for(static_cast<int>(radii.size()), [&](int i) {
        LogRow row;
        row.r = radii[i];
        OperatorValue pv = frac_plap_radial_pv(v, radii[i], ke, spec);
        row.pv = pv.value;
        row.pv_err = pv.err_est;
        row.scale = std::pow(radii[i], -params.sp());
        row.ratio = std::fabs(row.pv) / row.scale;
        row.pass = row.ratio < tolerance;
        rep.rows[i] = row;
    });
    rep.pass = std::all_of(rep.rows.begin(), rep.rows.end(), [](const LogRow& r) { return r.pass; });
    return rep;
}

}  // namespace fracplap::radial
