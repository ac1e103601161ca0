#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracplap/barriers.hpp"
#include "fracplap/fundamental.hpp"
#include "fracplap/oracle.hpp"
#include "fracplap/radial_operator.hpp"

using namespace fracplap;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
}  // namespace

TEST_CASE("oracle: trivial annihilations") {
    quadrature::QuadratureSpec spec;
    CHECK(oracle::c_beta_direct_2d(0.5, 2.0, 0.0, spec) == 0.0);
    CHECK(oracle::operator_direct_2d(profile::constant_profile(3.0), 1.0, 0.5, 2.0, spec) == 0.0);
}

TEST_CASE("oracle: v_beta at r=1 coincides with c_beta_direct_2d") {
    quadrature::QuadratureSpec spec;
    double a = oracle::c_beta_direct_2d(0.5, 2.0, -0.5, spec);
    double b = oracle::operator_direct_2d(profile::power_profile(-0.5), 1.0, 0.5, 2.0, spec);
    CHECK(rel(a, b) < 1e-12);
}

TEST_CASE("oracle vs main path on the (p, beta) matrix") {
    quadrature::QuadratureSpec spec;
    for (double p : {1.5, 2.0, 3.0}) {
        FracParams P(2, 0.5, p);
        double star = P.beta_star();
        for (double beta : {0.5 * star, star + 0.1 * std::fabs(star)}) {
            double main = fundamental::c_beta(P, beta, spec).value;
            double direct = oracle::c_beta_direct_2d(0.5, p, beta, spec);
            double err_scale = std::max(std::fabs(main), std::fabs(direct));
            CHECK(std::fabs(main - direct) < 1e-3 * err_scale);
        }
    }
}

TEST_CASE("oracle: barrier spot-check against the radial path") {
    quadrature::QuadratureSpec spec;
    FracParams P(2, 0.5, 2.0);  // N > ps: beta_star = -1
    auto phi = barriers::make_phi_eps(P, -1.5, 0.2);
    double direct = oracle::operator_direct_2d(phi, 1.7, 0.5, 2.0, spec);
    kernel::KernelEvaluator ke(P, spec);
    auto main = radial::frac_plap_radial_pv(phi, 1.7, ke, spec);
    CHECK(rel(direct, main.value) < 1e-3);
}

TEST_CASE("oracle: self-consistent under angular refinement") {
    quadrature::QuadratureSpec coarse;
    coarse.rel_tol = 1e-8;
    quadrature::QuadratureSpec fine;
    fine.rel_tol = 1e-11;
    double a = oracle::c_beta_direct_2d(0.5, 3.0, -0.3, coarse);
    double b = oracle::c_beta_direct_2d(0.5, 3.0, -0.3, fine);
    CHECK(rel(a, b) < 1e-4);
}

TEST_CASE("oracle: divergence and domain screens") {
    quadrature::QuadratureSpec spec;
    CHECK_THROWS_AS(oracle::c_beta_direct_2d(0.5, 2.0, -3.0, spec), domain_error);  // inadmissible
    CHECK_THROWS_AS(oracle::c_beta_direct_2d(1.0, 2.0, -0.5, spec), domain_error);  // s out of range
}
