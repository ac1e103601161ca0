#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <quadmath.h>

#include "fracplap/kernel.hpp"
#include "fracplap/profile.hpp"
#include "fracplap/radial_operator.hpp"
#include "fracplap/specfun.hpp"

using namespace fracplap;
using profile::Piece;
using profile::RadialProfile;

namespace {
constexpr double kPi = 3.14159265358979323846;
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

// Independent implementations of the h/g split of the truncated operator for
// v_beta, straight from their defining displays (plain adaptive quadrature
// against G, no folding, no shared code with the operator path).
double h_display(const FracParams& P, double beta, double eps_over_r,
                 const quadrature::QuadratureSpec& spec) {
    double p = P.p, ps = P.sp();
    double b2 = ps - beta * (p - 1.0) - 1.0;
    auto f = [&](double rho) {
        return psi_p(1.0 - std::pow(rho, beta), p) *
               (std::pow(rho, P.n - 1.0) - std::pow(rho, b2)) * specfun::g_eval(rho * rho, P);
    };
    std::vector<double> splits;
    for (double w = eps_over_r; w < 0.5; w *= 2.0) splits.push_back(1.0 - eps_over_r - w);
    auto I = quadrature::integrate_adaptive(f, 1e-12, 1.0 - eps_over_r, spec, splits);
    return 4.0 * kPi * kernel::alpha_n(P.n) * I.value;
}

double g_display(const FracParams& P, double beta, double r, double eps,
                 const quadrature::QuadratureSpec& spec) {
    double p = P.p, ps = P.sp();
    double b2 = ps - beta * (p - 1.0) - 1.0;
    auto f = [&](double rho) {
        return psi_p(1.0 - std::pow(rho, beta), p) * std::pow(rho, b2) * specfun::g_eval(rho * rho, P);
    };
    auto I = quadrature::integrate_adaptive(f, 1.0 - eps / r, r / (r + eps), spec);
    return 4.0 * kPi * kernel::alpha_n(P.n) * std::pow(r, beta * (p - 1.0) - ps) * I.value;
}

double g_log_display(const FracParams& P, double r, double eps, const quadrature::QuadratureSpec& spec) {
    auto f = [&](double rho) {
        return psi_p(std::log(rho), P.p) * std::pow(rho, P.n - 1.0) * specfun::g_eval(rho * rho, P);
    };
    auto I = quadrature::integrate_adaptive(f, 1.0 - eps / r, r / (r + eps), spec);
    return 4.0 * kPi * kernel::alpha_n(P.n) * std::pow(r, -static_cast<double>(P.n)) * I.value;
}
}  // namespace

TEST_CASE("profile: evaluation and dispatch") {
    RadialProfile pw = profile::power_profile(-0.5);
    CHECK(pw(4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pw(0.0) == std::numeric_limits<double>::infinity());

    RadialProfile lg = profile::log_profile();
    CHECK(lg(1.0) == 0.0);
    CHECK(lg(0.0) == -std::numeric_limits<double>::infinity());

    RadialProfile three({0.0, 1.0, 2.0},
                        {Piece::constant(1.0), Piece::power(1.0, -1.0, 0.0), Piece::constant(0.5)});
    CHECK(three(0.3) == 1.0);
    CHECK(three(1.5) == doctest::Approx(1.0 / 1.5));
    CHECK(three(10.0) == 0.5);
    auto bps = three.quadrature_breakpoints();
    REQUIRE(bps.size() == 2);
    CHECK(bps[0] == 1.0);
    CHECK(bps[1] == 2.0);
}

TEST_CASE("profile: continuity and tail invariants enforced") {
    CHECK_THROWS_AS(RadialProfile({0.0, 1.0}, {Piece::constant(1.0), Piece::constant(2.0)}),
                    domain_error);
    CHECK_THROWS_AS(RadialProfile({0.5}, {Piece::constant(1.0)}), domain_error);
    FracParams P(2, 0.5, 2.0);  // ps/(p-1) = 1
    RadialProfile growing({0.0}, {Piece::power(1.0, 2.0)});
    CHECK_THROWS_AS(growing.validate_tail(P), domain_error);
    profile::power_profile(0.5).validate_tail(P);  // 0.5 < 1: fine
}

TEST_CASE("smooth cutoff: plateau, support, monotone, smooth joins") {
    CHECK(profile::smooth_cutoff(0.0) == 1.0);
    CHECK(profile::smooth_cutoff(0.5) == 1.0);
    CHECK(profile::smooth_cutoff(1.0) == 0.0);
    CHECK(profile::smooth_cutoff(2.0) == 0.0);
    double prev = 1.0;
    for (int i = 1; i <= 40; ++i) {
        double v = profile::smooth_cutoff(0.5 + 0.5 * i / 40.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    // all derivatives vanish at the joins; check the first two
    for (double t : {0.5 + 1e-6, 1.0 - 1e-6}) {
        CHECK(std::fabs(profile::smooth_cutoff_d1(t)) < 1e-3);
        CHECK(std::fabs(profile::smooth_cutoff_d2(t)) < 1e-2);
    }
    // finite-difference agreement of the analytic derivatives mid-bridge
    double t0 = 0.8, h = 1e-6;
    double fd1 = (profile::smooth_cutoff(t0 + h) - profile::smooth_cutoff(t0 - h)) / (2 * h);
    CHECK(rel(profile::smooth_cutoff_d1(t0), fd1) < 1e-8);
    double fd2 = (profile::smooth_cutoff_d1(t0 + h) - profile::smooth_cutoff_d1(t0 - h)) / (2 * h);
    CHECK(rel(profile::smooth_cutoff_d2(t0), fd2) < 1e-8);
}

TEST_CASE("local diffs: stable forms match 128-bit direct evaluation") {
    std::vector<Piece> pieces = {Piece::power(2.0, -1.3, 0.7), Piece::power(-0.5, 0.8),
                                 Piece::shifted_power(1.0, -0.4, 1.0),
                                 Piece::shifted_power(-2.0, 1.3, 0.6, 1.0)};
    double r = 2.7;
    for (const Piece& pc : pieces) {
        RadialProfile f({0.0}, {pc});
        for (double w : {1e-3, 1e-5, 1e-8, 1e-11}) {
            auto d = f.local_diffs(0, r, w);
            auto evalq = [&](__float128 x) -> __float128 {
                if (pc.kind == profile::PieceKind::Power)
                    return pc.coeff * powq(x, pc.exponent) + pc.offset;
                return pc.coeff * powq(pc.shift + x, pc.exponent) + pc.offset;
            };
            __float128 fr = evalq(r);
            __float128 u1 = fr - evalq(r * (1.0q - (__float128)w));
            __float128 u2 = fr - evalq(r / (1.0q - (__float128)w));
            CHECK(rel(d.u_inner, static_cast<double>(u1)) < 1e-12);
            CHECK(rel(d.u_outer, static_cast<double>(u2)) < 1e-12);
            CHECK(rel(d.second, static_cast<double>(u1 + u2)) < 1e-11 + 2e-32 / (w * w));
        }
    }
    // the log piece cancels exactly
    RadialProfile lg({0.0}, {Piece::log(1.5, 2.0)});
    for (double w : {1e-3, 1e-8}) {
        auto d = lg.local_diffs(0, 2.7, w);
        CHECK(d.second == 0.0);
        CHECK(rel(d.u_inner, -1.5 * std::log1p(-w)) < 1e-14);
    }
    // smooth cutoff: Taylor regime against the direct double path at the
    // crossover, where both are accurate
    RadialProfile sc({0.0}, {Piece::smooth_cutoff(2.0, 4.0)});
    for (double w : {2e-4, 9e-5}) {
        auto d = sc.local_diffs(0, 2.7, w);
        double f0 = sc(2.7);
        double u1 = f0 - sc(2.7 * (1 - w));
        double u2 = f0 - sc(2.7 / (1 - w));
        CHECK(rel(d.u_inner, u1) < 1e-6);
        CHECK(rel(d.u_outer, u2) < 1e-6);
        CHECK(rel(d.second, u1 + u2) < 2e-16 / (w * w) + 1e-6);
    }
}

TEST_CASE("J_eps: constant profiles are annihilated exactly") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    kernel::KernelEvaluator ke(P, spec);
    RadialProfile c = profile::constant_profile(2.5);
    auto j = radial::frac_plap_radial_jeps(c, 1.7, 0.2, ke, spec);
    CHECK(j.value == 0.0);
    auto pv = radial::frac_plap_radial_pv(c, 1.7, ke, spec);
    CHECK(pv.value == 0.0);
}

TEST_CASE("J_eps: matches the independently coded h/g split for v_beta") {
    quadrature::QuadratureSpec spec;
    struct Case {
        int n;
        double s, p, beta, r, eps;
    };
    for (Case cs : {Case{3, 0.5, 3.0, -0.8, 1.3, 0.05}, Case{2, 0.75, 1.5, 0.5, 0.9, 0.03}}) {
        FracParams P(cs.n, cs.s, cs.p);
        kernel::KernelEvaluator ke(P, spec);
        auto j = radial::frac_plap_radial_jeps(profile::power_profile(cs.beta), cs.r, cs.eps, ke, spec);
        double expected = h_display(P, cs.beta, cs.eps / cs.r, spec) *
                              std::pow(cs.r, cs.beta * (cs.p - 1.0) - P.sp()) -
                          g_display(P, cs.beta, cs.r, cs.eps, spec);
        CHECK(rel(j.value, expected) < 1e-9);
    }
}

TEST_CASE("J_eps: log case equals the g_eps display (ps = N)") {
    quadrature::QuadratureSpec spec;
    FracParams P(2, 0.5, 4.0);  // ps = 2
    kernel::KernelEvaluator ke(P, spec);
    double r = 1.6, eps = 0.04;
    auto j = radial::frac_plap_radial_jeps(profile::log_profile(), r, eps, ke, spec);
    CHECK(rel(j.value, g_log_display(P, r, eps, spec)) < 1e-7);
}

TEST_CASE("J_eps: homogeneity in the radius") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    kernel::KernelEvaluator ke(P, spec);
    double beta = -1.5, r = 2.0, eps = 0.01;
    auto jr = radial::frac_plap_radial_jeps(profile::power_profile(beta), r, eps, ke, spec);
    auto j1 = radial::frac_plap_radial_jeps(profile::power_profile(beta), 1.0, eps / r, ke, spec);
    CHECK(rel(jr.value, std::pow(r, beta * (P.p - 1.0) - P.sp()) * j1.value) < 1e-10);
    CHECK_THROWS_AS(radial::frac_plap_radial_jeps(profile::power_profile(beta), 1.0, 2.0, ke, spec),
                    domain_error);
}

TEST_CASE("PV: fundamental identity for v_beta and the log case") {
    quadrature::QuadratureSpec spec;
    {
        FracParams P(2, 0.5, 3.0);
        kernel::KernelEvaluator ke(P, spec);
        fundamental::CBetaResult cb = fundamental::c_beta(P, -0.3, spec);
        auto pv = radial::frac_plap_radial_pv(profile::power_profile(-0.3), 2.0, ke, spec);
        CHECK(rel(pv.value, cb.value * std::pow(2.0, cb.rhs_exponent)) < 1e-8);
    }
    {
        FracParams P(2, 0.5, 4.0);  // ps = N
        kernel::KernelEvaluator ke(P, spec);
        auto pv = radial::frac_plap_radial_pv(profile::log_profile(), 1.7, ke, spec);
        CHECK(std::fabs(pv.value) < 1e-5 * std::pow(1.7, -P.sp()));
    }
}

TEST_CASE("PV: homogeneity over radii and (p-1)-homogeneity in amplitude") {
    quadrature::QuadratureSpec spec;
    FracParams P(2, 0.75, 3.0);
    kernel::KernelEvaluator ke(P, spec);
    double beta = -0.4;
    auto pv1 = radial::frac_plap_radial_pv(profile::power_profile(beta), 1.0, ke, spec);
    for (double r : {0.25, 0.5, 2.0, 8.0}) {
        auto pvr = radial::frac_plap_radial_pv(profile::power_profile(beta), r, ke, spec);
        CHECK(rel(pvr.value, std::pow(r, beta * (P.p - 1.0) - P.sp()) * pv1.value) < 1e-8);
    }
    for (double cmul : {0.5, 3.0}) {
        RadialProfile scaled({0.0}, {Piece::power(cmul, beta)});
        auto pvc = radial::frac_plap_radial_pv(scaled, 1.0, ke, spec);
        CHECK(rel(pvc.value, std::pow(cmul, P.p - 1.0) * pv1.value) < 1e-9);
    }
}

TEST_CASE("PV: sign flip under f -> -f") {
    quadrature::QuadratureSpec spec;
    {
        FracParams P(3, 0.5, 2.0);
        kernel::KernelEvaluator ke(P, spec);
        auto plus = radial::frac_plap_radial_pv(profile::power_profile(-1.2), 1.5, ke, spec);
        RadialProfile neg({0.0}, {Piece::power(-1.0, -1.2)});
        auto minus = radial::frac_plap_radial_pv(neg, 1.5, ke, spec);
        CHECK(rel(minus.value, -plus.value) < 1e-10);
    }
    {
        FracParams P(2, 0.5, 3.0);
        kernel::KernelEvaluator ke(P, spec);
        auto plus = radial::frac_plap_radial_pv(profile::power_profile(-0.3), 1.5, ke, spec);
        RadialProfile neg({0.0}, {Piece::power(-1.0, -0.3)});
        auto minus = radial::frac_plap_radial_pv(neg, 1.5, ke, spec);
        CHECK(rel(minus.value, -plus.value) < 1e-10);
    }
}

TEST_CASE("PV: log-case translation invariance is exact") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.75, 4.0);  // ps = 3 = N
    kernel::KernelEvaluator ke(P, spec);
    auto a = radial::frac_plap_radial_pv(profile::log_profile(0.0), 2.3, ke, spec);
    auto b = radial::frac_plap_radial_pv(profile::log_profile(5.0), 2.3, ke, spec);
    CHECK(std::fabs(a.value - b.value) < 1e-12);
}

TEST_CASE("PV: dual-path cross-check and halving the tolerance") {
    quadrature::QuadratureSpec dual;
    dual.dual_path = true;
    FracParams P(3, 0.5, 2.0);
    kernel::KernelEvaluator ke(P, dual);
    // does not throw: folded and extrapolated routes agree within 3x error
    auto pv = radial::frac_plap_radial_pv(profile::power_profile(-1.5), 2.0, ke, dual);
    CHECK(std::isfinite(pv.value));

    // the J_eps extrapolation at r = 1 recovers C(beta) on its own
    FracParams P2(2, 0.5, 3.0);
    kernel::KernelEvaluator ke2(P2, dual);
    auto lim = quadrature::pv_limit(
        [&](double eps) {
            return radial::frac_plap_radial_jeps(profile::power_profile(-0.3), 1.0, eps, ke2, dual).value;
        },
        dual);
    double cb = fundamental::c_beta(P2, -0.3, dual).value;
    CHECK(std::fabs(lim.value - cb) < 1e-6 * std::fabs(cb));

    quadrature::QuadratureSpec fine;
    fine.rel_tol = 0.5e-10;
    auto coarse = radial::frac_plap_radial_pv(profile::power_profile(-1.5), 2.0, ke,
                                              quadrature::QuadratureSpec{});
    auto finer = radial::frac_plap_radial_pv(profile::power_profile(-1.5), 2.0, ke, fine);
    CHECK(std::fabs(coarse.value - finer.value) <= coarse.err_est + finer.err_est + 1e-15);
}

TEST_CASE("PV: breakpoint guard band") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    kernel::KernelEvaluator ke(P, spec);
    RadialProfile capped({0.0, 1.0}, {Piece::constant(1.0), Piece::power(1.0, -1.5)});
    CHECK_THROWS_AS(radial::frac_plap_radial_pv(capped, 1.0 + 1e-8, ke, spec), precondition_error);
    auto ok = radial::frac_plap_radial_pv(capped, 1.0 + 1e-3, ke, spec);
    CHECK(std::isfinite(ok.value));
}

TEST_CASE("verify_fundamental_identity: pass and zero modes") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    auto rep = radial::verify_fundamental_identity(P, -1.5, {0.5, 1.0, 2.0}, spec);
    CHECK(rep.pass);
    CHECK(!rep.zero_mode);
    for (const auto& row : rep.rows) CHECK(row.residual < 1e-6);

    auto zero = radial::verify_fundamental_identity(P, -2.0, {0.5, 1.0}, spec);  // beta = beta_star
    CHECK(zero.zero_mode);
    CHECK(zero.pass);
}

TEST_CASE("verify_log_harmonic: pass and wrong-case rejection") {
    quadrature::QuadratureSpec spec;
    auto rep = radial::verify_log_harmonic(FracParams(2, 0.5, 4.0), {0.5, 1.0, 3.0}, spec);
    CHECK(rep.pass);
    CHECK_THROWS_AS(radial::verify_log_harmonic(FracParams(2, 0.5, 2.0), {1.0}, spec), domain_error);
}
