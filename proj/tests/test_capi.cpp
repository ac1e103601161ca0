#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "fracplap.h"

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

struct Ctx {
    fp_params* params = nullptr;
    fp_quadspec* spec = nullptr;
    Ctx(int n, double s, double p) {
        REQUIRE(fp_params_create(n, s, p, &params) == FP_OK);
        REQUIRE(fp_quadspec_create(&spec) == FP_OK);
    }
    ~Ctx() {
        fp_params_free(params);
        fp_quadspec_free(spec);
    }
};
}  // namespace

TEST_CASE("capi: params lifecycle and derived quantities") {
    Ctx c(3, 0.5, 2.0);
    double sp = 0, star = 0, lo = 0, hi = 0;
    CHECK(fp_params_sp(c.params, &sp) == FP_OK);
    CHECK(sp == 1.0);
    CHECK(fp_params_beta_star(c.params, &star) == FP_OK);
    CHECK(star == -2.0);
    CHECK(fp_params_beta_interval(c.params, &lo, &hi) == FP_OK);
    CHECK(lo == -3.0);
    CHECK(hi == 1.0);

    fp_params* bad = nullptr;
    CHECK(fp_params_create(1, 0.5, 2.0, &bad) == FP_DOMAIN_ERROR);
    CHECK(std::string(fp_last_error_message()).find("N") != std::string::npos);
    CHECK(fp_params_create(2, 1.5, 2.0, &bad) == FP_DOMAIN_ERROR);
    CHECK(fp_params_sp(nullptr, &sp) == FP_USAGE_ERROR);
}

TEST_CASE("capi: special functions and kernel") {
    Ctx c(2, 0.5, 2.0);
    double v = 0;
    CHECK(fp_gamma(0.5, &v) == FP_OK);
    CHECK(rel(v, std::sqrt(M_PI)) < 1e-14);
    CHECK(fp_gamma(-1.0, &v) == FP_DOMAIN_ERROR);
    CHECK(fp_hyp2f1(1, 1, 2, 0.5, &v) == FP_OK);
    CHECK(rel(v, 2 * std::log(2.0)) < 1e-13);
    CHECK(fp_hyp2f1(1, 1, 2, 1.0, &v) == FP_DOMAIN_ERROR);

    double a = 0;
    CHECK(fp_alpha_n(3, &a) == FP_OK);
    CHECK(a == doctest::Approx(1.0));

    fp_kernel* ke = nullptr;
    REQUIRE(fp_kernel_create(c.params, c.spec, &ke) == FP_OK);
    double kv = 0, kt = 0;
    CHECK(fp_kernel_k(ke, 0.5, &kv) == FP_OK);
    CHECK(fp_kernel_k_theta(c.params, c.spec, 0.5, &kt) == FP_OK);
    CHECK(rel(kv, kt) < 1e-9);
    CHECK(fp_kernel_k(ke, 1.0, &kv) == FP_DOMAIN_ERROR);
    fp_kernel_free(ke);

    double h1 = 0;
    CHECK(fp_h_limit(c.params, &h1) == FP_OK);
    double he = 0;
    CHECK(fp_h_eval(c.params, 1.0, &he) == FP_OK);
    CHECK(rel(he, h1) < 1e-13);
}

TEST_CASE("capi: cbeta and operator surface") {
    Ctx c(3, 0.5, 2.0);
    double value = 0, err = 0, rhs = 0;
    fp_sign sign = FP_SIGN_ZERO;
    REQUIRE(fp_cbeta(c.params, -1.5, c.spec, &value, &err, &sign, &rhs) == FP_OK);
    CHECK(sign == FP_SIGN_POSITIVE);
    CHECK(rhs == doctest::Approx(-2.5));

    fp_profile* prof = nullptr;
    REQUIRE(fp_profile_power(-1.5, &prof) == FP_OK);
    fp_kernel* ke = nullptr;
    REQUIRE(fp_kernel_create(c.params, c.spec, &ke) == FP_OK);
    double pv = 0, pverr = 0;
    REQUIRE(fp_operator_pv(prof, 2.0, ke, c.spec, &pv, &pverr) == FP_OK);
    CHECK(rel(pv, value * std::pow(2.0, rhs)) < 1e-8);
    double jv = 0;
    CHECK(fp_operator_jeps(prof, 2.0, 0.1, ke, c.spec, &jv, nullptr) == FP_OK);
    CHECK(fp_operator_jeps(prof, 2.0, 5.0, ke, c.spec, &jv, nullptr) == FP_DOMAIN_ERROR);
    fp_kernel_free(ke);
    fp_profile_free(prof);

    double lo = 0, hi = 0;
    REQUIRE(fp_cbeta_zeros(c.params, c.spec, &lo, &hi) == FP_OK);
    CHECK(std::fabs(lo + 2.0) < 1e-6);
    CHECK(std::fabs(hi) < 1e-6);
}

TEST_CASE("capi: profiles and thresholds") {
    Ctx c(3, 0.5, 2.0);
    fp_profile* phi = nullptr;
    REQUIRE(fp_profile_phi_eps(c.params, -2.5, 0.1, &phi) == FP_OK);
    double v = 0;
    CHECK(fp_profile_eval(phi, 0.05, &v) == FP_OK);
    CHECK(rel(v, std::pow(0.1, -2.5)) < 1e-14);
    fp_profile_free(phi);
    CHECK(fp_profile_phi_eps(c.params, -1.0, 0.1, &phi) == FP_DOMAIN_ERROR);

    double t = 0;
    CHECK(fp_phi_eps_threshold(c.params, -2.5, 2.0, c.spec, &t) == FP_OK);
    CHECK(t > 0.0);

    fp_profile* w = nullptr;
    double kappa = 0, scale = 0;
    REQUIRE(fp_profile_supersolution(c.params, 4.0, c.spec, &w, &kappa, &scale) == FP_OK);
    CHECK(kappa == doctest::Approx(1.0 / 3.0));
    CHECK(scale > 0.0);
    fp_profile_free(w);
    CHECK(fp_profile_supersolution(c.params, 1.2, c.spec, &w, &kappa, &scale) == FP_DOMAIN_ERROR);
}

TEST_CASE("capi: reports serialize to versioned CSV and valid JSON") {
    Ctx c(3, 0.5, 2.0);
    double radii[3] = {0.5, 1.0, 2.0};
    fp_report* rep = nullptr;
    REQUIRE(fp_report_verify_fundamental(c.params, -1.5, radii, 3, c.spec, &rep) == FP_OK);
    fp_verdict verdict = FP_NA;
    CHECK(fp_report_verdict(rep, &verdict) == FP_OK);
    CHECK(verdict == FP_PASS);

    char* csv = nullptr;
    REQUIRE(fp_report_to_csv(rep, &csv) == FP_OK);
    std::string csv_s(csv);
    fp_string_free(csv);
    CHECK(csv_s.rfind("schema_version,r,pv,pv_err,rhs,residual,pass\n", 0) == 0);
    CHECK(csv_s.find("\n1,") != std::string::npos);

    char* json = nullptr;
    REQUIRE(fp_report_to_json(rep, &json) == FP_OK);
    auto doc = nlohmann::json::parse(json);
    fp_string_free(json);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["kind"] == "verify_fundamental");
    CHECK(doc["verdict"] == "pass");
    CHECK(doc["rows"].size() == 3);
    CHECK(doc["meta"]["N"] == 3);
    fp_report_free(rep);
}

TEST_CASE("capi: identical invocations produce byte-identical reports") {
    Ctx c(2, 0.9, 5.0);
    double betas[4] = {-0.5, 0.1, 0.3, 0.9};
    std::string first;
    for (int round = 0; round < 2; ++round) {
        fp_report* rep = nullptr;
        REQUIRE(fp_report_cbeta_sweep(c.params, betas, 4, c.spec, &rep) == FP_OK);
        char* csv = nullptr;
        REQUIRE(fp_report_to_csv(rep, &csv) == FP_OK);
        if (round == 0)
            first = csv;
        else
            CHECK(first == std::string(csv));
        fp_string_free(csv);
        fp_report_free(rep);
    }
}
