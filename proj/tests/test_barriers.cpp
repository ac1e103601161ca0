#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracplap/barriers.hpp"
#include "fracplap/specfun.hpp"

using namespace fracplap;
using namespace fracplap::barriers;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
}  // namespace

TEST_CASE("phi_eps: definition values and continuity") {
    // beta = -1, eps = 0.1: capped at eps^beta = 10
    FracParams Q(2, 0.75, 2.0);  // beta_star = -0.5
    auto g = make_phi_eps(Q, -1.0, 0.1);
    CHECK(g(0.05) == doctest::Approx(10.0));
    CHECK(g(0.1) == doctest::Approx(10.0));
    CHECK(g(2.0) == doctest::Approx(0.5));

    FracParams P(3, 0.5, 2.0);  // beta_star = -2
    auto f = make_phi_eps(P, -2.5, 0.1);
    CHECK(f(0.05) == doctest::Approx(std::pow(0.1, -2.5)));
    CHECK(f(0.1) == doctest::Approx(std::pow(0.1, -2.5)));
    CHECK(f(2.0) == doctest::Approx(std::pow(2.0, -2.5)));
    // pointwise phi_eps <= v_beta with equality outside the cap
    for (double r : {0.01, 0.05, 0.3, 1.0, 7.0})
        CHECK(f(r) <= std::pow(r, -2.5) * (1 + 1e-12));
    CHECK_THROWS_AS(make_phi_eps(P, -1.5, 0.1), domain_error);  // beta above beta_star
    CHECK_THROWS_AS(make_phi_eps(FracParams(2, 0.9, 5.0), 0.3, 0.1), domain_error);  // N < ps
}

TEST_CASE("phi_eps_threshold: frozen value, bracket validity, monotone in r") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    double t2 = phi_eps_threshold(P, -2.5, 2.0, spec);
    CHECK(rel(t2, 0.244505359478) < 1e-6);  // regression pin
    double prev = 0.0;
    for (double r : {2.0, 4.0, 8.0}) {
        double t = phi_eps_threshold(P, -2.5, r, spec);
        CHECK(t > prev);
        CHECK(t < r);
        prev = t;
    }
    CHECK_THROWS_AS(phi_eps_threshold(P, -1.0, 2.0, spec), domain_error);  // C(beta) > 0 there
}

TEST_CASE("aux1 sufficient expression is increasing in eps") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    double beta = -2.5, r = 2.0;
    double c = fundamental::c_beta(P, beta, spec).value;
    double e = beta * (P.p - 1.0) + P.n;
    double A = 2.0 * std::pow(M_PI, 1.5) / specfun::gamma_fn(1.5) / e;
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 30; ++i) {
        double eps = 0.5 * r * i / 30.0;
        double u = eps / r;
        double val = c + 2.0 * A * std::pow(1.0 - u, -(P.n + P.sp())) * std::pow(u, e);
        CHECK(val > prev);
        prev = val;
    }
}

TEST_CASE("phi_eps check passes at half the threshold") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    auto rep = check_phi_eps(P, -2.5, 2.0, 0.0, 8, spec);
    CHECK(rep.verdict == Verdict::Pass);
    for (const auto& row : rep.rows) {
        CHECK(row.r > 2.0);
        CHECK(row.r < 8.0);
        CHECK(row.value <= row.err_est);
    }
}

TEST_CASE("psi_eps: geometry, r_eps limit, pointwise domination") {
    FracParams P(3, 0.5, 2.0);
    double beta = -2.5, r = 2.0;
    CHECK(psi_r_eps(beta, 1e-6, r) < psi_r_eps(beta, 1e-3, r));  // r_eps -> 0 with eps
    double eps = 0.5 * psi_eps_max(beta);
    auto f = make_psi_eps(P, beta, eps, r);
    double re = psi_r_eps(beta, eps, r);
    CHECK(re < 0.5 * r);
    CHECK(f(0.5 * re) == doctest::Approx(std::pow(re, beta)));
    CHECK(f(3.0 * r) == doctest::Approx(std::pow(2.0 * r, beta)));  // constant tail
    CHECK(f(1.2) == doctest::Approx(std::pow(1.2, beta)));
    // capped below v_beta inside, equal to it on (r_eps, 2r]
    for (double x : {0.3 * re, 0.9 * re}) CHECK(f(x) <= std::pow(x, beta) * (1 + 1e-12));
    for (double x : {1.1 * re, 1.0, 3.0}) CHECK(f(x) == doctest::Approx(std::pow(x, beta)));
    CHECK_THROWS_AS(make_psi_eps(P, beta, 2.0 * psi_eps_max(beta), r), domain_error);
}

TEST_CASE("psi_eps: tail constant is negative and the check passes") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    CHECK(psi_d_constant(P, -2.5, spec) < 0.0);
    auto rep = check_psi_eps(P, -2.5, 2.0, 0.0, 5, spec);
    CHECK(rep.verdict == Verdict::Pass);
}

TEST_CASE("theta_eps: shape, admissible arithmetic, check") {
    quadrature::QuadratureSpec spec;
    FracParams P(2, 0.9, 5.0);  // ps = 4.5 > N = 2, beta_star = 0.625
    CHECK(P.beta_star() == doctest::Approx(0.625));
    double m = 1.7, eps = 0.3, R = 4.0;
    auto th = make_theta_eps(P, 0.3, eps, R, m);
    CHECK(th(0.0) == m);
    CHECK(th(eps) == doctest::Approx(m));
    CHECK(th(R) == doctest::Approx(0.0));
    CHECK(th(2.0 * R) == 0.0);
    double prev = m + 1e-12;
    for (int i = 0; i <= 40; ++i) {
        double v = th(5.0 * i / 40.0);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    CHECK_THROWS_AS(make_theta_eps(FracParams(3, 0.5, 2.0), 0.3, eps, R, m), domain_error);  // N > ps

    auto rep = check_theta_eps(P, 0.3, 1.5, 4.0, 1.0, 0.0, 6, spec);
    CHECK(rep.verdict == Verdict::Pass);
}

TEST_CASE("log barrier: profile values and the kappa search") {
    quadrature::QuadratureSpec spec;
    FracParams P(2, 0.5, 4.0);  // ps = 2 = N
    double eps = 0.5, R = 4.0, kappa = 2.0;
    auto b = make_log_barrier(P, eps, kappa, R);
    // inside the plateau: kappa + log(R/eps)
    CHECK(b(0.1) == doctest::Approx(kappa + std::log(R / eps)));
    CHECK(b(0.25 * eps) == doctest::Approx(kappa + std::log(R / eps)));
    // outside: log R - log |x|; comparison level 0 at |x| = R
    CHECK(b(1.0) == doctest::Approx(std::log(R)));
    CHECK(b(R) == doctest::Approx(0.0));
    CHECK(b(eps) == doctest::Approx(std::log(R / eps)));

    kernel::KernelEvaluator ke(P, spec);
    double k0 = log_barrier_choose_kappa(P, eps, 1.5, R, 5, ke, spec);
    double h1 = log_barrier_h(P, eps, k0, R, 2.0, ke, spec);
    double h2 = log_barrier_h(P, eps, 2.0 * k0, R, 2.0, ke, spec);
    CHECK(h1 <= 0.0);
    CHECK(h2 < h1);  // monotone improvement in kappa
    auto rep = check_log_barrier(P, eps, 1.5, R, 0.0, 5, spec);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK_THROWS_AS(make_log_barrier(FracParams(2, 0.5, 2.0), eps, kappa, R), domain_error);
}

TEST_CASE("supersolution: exponents, positivity, scaled inequality") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    CHECK_THROWS_WITH_AS(make_supersolution(P, 1.0, spec), doctest::Contains("1.5"), domain_error);
    auto sol = make_supersolution(P, 4.0, spec);
    CHECK(sol.kappa == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sol.kappa > 0.0);
    CHECK(sol.kappa < (P.n - P.sp()) / (P.p - 1.0));
    CHECK(sol.c_minus_kappa > 0.0);
    CHECK(sol.scale > 0.0);
    CHECK(std::isfinite(sol.scale));
    CHECK(sol.profile(1.0) == doctest::Approx(std::pow(2.0, -sol.kappa)));

    auto rep = supercritical_check(P, 4.0, {0.5, 1.0, 2.0, 8.0}, spec);
    CHECK(rep.verdict == Verdict::Pass);
    // exponent identity kappa(p-1)+sp = kappa q
    CHECK(std::fabs(sol.kappa * (P.p - 1.0) + P.sp() - sol.kappa * 4.0) < 1e-14);

    // scaled solution u = scale * w satisfies PV(u) >= u^q at r = 1, via
    // (p-1)-homogeneity PV(c w) = c^{p-1} PV(w)
    kernel::KernelEvaluator ke(P, spec);
    auto pv_w = radial::frac_plap_radial_pv(sol.profile, 1.0, ke, spec);
    double pv_u = std::pow(sol.scale, P.p - 1.0) * pv_w.value;
    double u1 = sol.scale * sol.profile(1.0);
    CHECK(pv_u >= std::pow(u1, 4.0) - 1e-8 * std::fabs(pv_u));
}

TEST_CASE("cutoff scaling: R-independence and calibrated bound") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    auto rep = check_cutoff_scaling(P, 2.0, {1.0, 2.0, 4.0}, 8, spec);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.spread < 0.05);
    CHECK(rep.c_calibrated > 0.0);
    for (const auto& e : rep.entries)
        for (const auto& row : e.rows) CHECK(row.pass);
}

TEST_CASE("barrier_sign_check: permissive-regime failures are reported, not thrown") {
    quadrature::QuadratureSpec spec;
    FracParams P(3, 0.5, 2.0);
    // eps at 10x the threshold may fail the sign condition; the report must
    // carry the verdict rather than raising.
    double eps0 = phi_eps_threshold(P, -2.5, 2.0, spec);
    double eps = std::min(10.0 * eps0, 0.99);
    auto rep = check_phi_eps(P, -2.5, 2.0, eps, 6, spec);
    CHECK((rep.verdict == Verdict::Pass || rep.verdict == Verdict::Fail));
    CHECK(rep.rows.size() == 6);
}

TEST_CASE("sample_radii avoids breakpoints") {
    FracParams P(3, 0.5, 2.0);
    auto f = make_psi_eps(P, -2.5, 0.5 * psi_eps_max(-2.5), 2.0);
    auto rs = sample_radii(f, 1.0, 4.0, 16);
    for (double r : rs) CHECK(f.breakpoint_distance(r) >= 0.01);
}
