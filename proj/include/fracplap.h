/* fracplap: fundamental solutions and barrier checks for the fractional
 * p-Laplacian of radial functions.
 *
 * C API over the C++ core: opaque handles, integer status codes, out
 * parameters. Every function returns fp_status; on failure the out values
 * are untouched and fp_last_error_message() describes the problem for the
 * calling thread.
 */
#ifndef FRACPLAP_H
#define FRACPLAP_H

#include <stddef.h>

#if defined(_WIN32)
#define FRACPLAP_API __declspec(dllexport)
#else
#define FRACPLAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fp_status {
    FP_OK = 0,
    FP_VERIFY_FAIL = 1,   /* a verification report came back failing */
    FP_DOMAIN_ERROR = 2,  /* invalid parameters / outside mathematical domain */
    FP_NUMERIC_ERROR = 3, /* quadrature, series or extrapolation failure */
    FP_USAGE_ERROR = 64   /* null handles, bad sizes */
} fp_status;

typedef enum fp_sign { FP_SIGN_ZERO = 0, FP_SIGN_POSITIVE = 1, FP_SIGN_NEGATIVE = -1 } fp_sign;

typedef enum fp_verdict { FP_PASS = 0, FP_FAIL = 1, FP_ERROR = 2, FP_NA = 3 } fp_verdict;

typedef struct fp_params fp_params;
typedef struct fp_quadspec fp_quadspec;
typedef struct fp_kernel fp_kernel;
typedef struct fp_profile fp_profile;
typedef struct fp_report fp_report;

FRACPLAP_API const char* fp_version(void);
/* Thread-local message for the most recent failing call. */
FRACPLAP_API const char* fp_last_error_message(void);
FRACPLAP_API void fp_string_free(char* s);

/* ---- parameters ------------------------------------------------------- */
FRACPLAP_API fp_status fp_params_create(int n, double s, double p, fp_params** out);
FRACPLAP_API void fp_params_free(fp_params* h);
FRACPLAP_API fp_status fp_params_sp(const fp_params* h, double* out);
FRACPLAP_API fp_status fp_params_beta_star(const fp_params* h, double* out);
FRACPLAP_API fp_status fp_params_beta_interval(const fp_params* h, double* lo, double* hi);

/* ---- quadrature policy ------------------------------------------------ */
FRACPLAP_API fp_status fp_quadspec_create(fp_quadspec** out);
FRACPLAP_API void fp_quadspec_free(fp_quadspec* h);
FRACPLAP_API fp_status fp_quadspec_set_rel_tol(fp_quadspec* h, double v);
FRACPLAP_API fp_status fp_quadspec_set_abs_tol(fp_quadspec* h, double v);
FRACPLAP_API fp_status fp_quadspec_set_max_subdivisions(fp_quadspec* h, int v);
FRACPLAP_API fp_status fp_quadspec_set_pv_epsilons(fp_quadspec* h, const double* eps, size_t n);
FRACPLAP_API fp_status fp_quadspec_set_dual_path(fp_quadspec* h, int enabled);

/* ---- special functions ------------------------------------------------ */
FRACPLAP_API fp_status fp_gamma(double x, double* out);
FRACPLAP_API fp_status fp_beta(double a, double b, double* out);
FRACPLAP_API fp_status fp_hyp2f1(double a, double b, double c, double t, double* out);
FRACPLAP_API fp_status fp_g_eval(const fp_params* params, double t, double* out);
FRACPLAP_API fp_status fp_h_eval(const fp_params* params, double rho, double* out);
FRACPLAP_API fp_status fp_h_limit(const fp_params* params, double* out);

/* ---- angular kernel ---------------------------------------------------- */
FRACPLAP_API fp_status fp_alpha_n(int n, double* out);
FRACPLAP_API fp_status fp_kernel_create(const fp_params* params, const fp_quadspec* spec,
                                        fp_kernel** out);
FRACPLAP_API void fp_kernel_free(fp_kernel* h);
FRACPLAP_API fp_status fp_kernel_k(const fp_kernel* h, double rho, double* out);
FRACPLAP_API fp_status fp_kernel_k_theta(const fp_params* params, const fp_quadspec* spec, double rho,
                                         double* out);

/* ---- profiles ---------------------------------------------------------- */
FRACPLAP_API fp_status fp_profile_power(double beta, fp_profile** out);
FRACPLAP_API fp_status fp_profile_log(fp_profile** out);
FRACPLAP_API fp_status fp_profile_constant(double c, fp_profile** out);
FRACPLAP_API fp_status fp_profile_phi_eps(const fp_params* params, double beta, double eps,
                                          fp_profile** out);
FRACPLAP_API fp_status fp_profile_psi_eps(const fp_params* params, double beta, double eps, double r,
                                          fp_profile** out);
FRACPLAP_API fp_status fp_profile_theta_eps(const fp_params* params, double beta, double eps, double R,
                                            double m, fp_profile** out);
FRACPLAP_API fp_status fp_profile_log_barrier(const fp_params* params, double eps, double kappa,
                                              double R, fp_profile** out);
FRACPLAP_API fp_status fp_profile_cutoff(double m, double R, fp_profile** out);
/* Also reports kappa = sp/(q-p+1) and the positive scale C(-kappa)^{1/(q-p+1)}. */
FRACPLAP_API fp_status fp_profile_supersolution(const fp_params* params, double q,
                                                const fp_quadspec* spec, fp_profile** out,
                                                double* kappa, double* scale);
FRACPLAP_API void fp_profile_free(fp_profile* h);
FRACPLAP_API fp_status fp_profile_eval(const fp_profile* h, double r, double* out);

/* ---- barrier thresholds ------------------------------------------------ */
FRACPLAP_API fp_status fp_phi_eps_threshold(const fp_params* params, double beta, double r,
                                            const fp_quadspec* spec, double* out);
FRACPLAP_API fp_status fp_psi_eps_threshold(const fp_params* params, double beta,
                                            const fp_quadspec* spec, double* out);
FRACPLAP_API fp_status fp_theta_eps_threshold(const fp_params* params, double beta, double r, double R,
                                              const fp_quadspec* spec, double* out);

/* ---- radial operator --------------------------------------------------- */
FRACPLAP_API fp_status fp_operator_pv(const fp_profile* f, double r, const fp_kernel* kernel,
                                      const fp_quadspec* spec, double* value, double* err_est);
FRACPLAP_API fp_status fp_operator_jeps(const fp_profile* f, double r, double eps,
                                        const fp_kernel* kernel, const fp_quadspec* spec,
                                        double* value, double* err_est);

/* ---- fundamental constant ---------------------------------------------- */
FRACPLAP_API fp_status fp_cbeta(const fp_params* params, double beta, const fp_quadspec* spec,
                                double* value, double* err_est, fp_sign* sign, double* rhs_exponent);
FRACPLAP_API fp_status fp_cbeta_sign(const fp_params* params, double beta, fp_sign* out);
FRACPLAP_API fp_status fp_cbeta_zeros(const fp_params* params, const fp_quadspec* spec,
                                      double* root_low, double* root_high);

/* ---- N=2 direct oracle -------------------------------------------------- */
FRACPLAP_API fp_status fp_cbeta_direct_2d(double s, double p, double beta, const fp_quadspec* spec,
                                          double* out);

/* ---- verification reports ----------------------------------------------
 * A report is a named table plus an aggregate verdict, serializable to CSV
 * or JSON (see docs/report_schema.json). Strings returned through char**
 * are malloc'd; release them with fp_string_free.
 */
FRACPLAP_API fp_status fp_report_cbeta_sweep(const fp_params* params, const double* betas, size_t n,
                                             const fp_quadspec* spec, fp_report** out);
FRACPLAP_API fp_status fp_report_verify_fundamental(const fp_params* params, double beta,
                                                    const double* radii, size_t n,
                                                    const fp_quadspec* spec, fp_report** out);
FRACPLAP_API fp_status fp_report_verify_log(const fp_params* params, const double* radii, size_t n,
                                            const fp_quadspec* spec, fp_report** out);
FRACPLAP_API fp_status fp_report_check_phi(const fp_params* params, double beta, double r, double eps,
                                           int n_samples, const fp_quadspec* spec, fp_report** out);
FRACPLAP_API fp_status fp_report_check_psi(const fp_params* params, double beta, double r, double eps,
                                           int n_samples, const fp_quadspec* spec, fp_report** out);
FRACPLAP_API fp_status fp_report_check_theta(const fp_params* params, double beta, double r, double R,
                                             double m, double eps, int n_samples,
                                             const fp_quadspec* spec, fp_report** out);
FRACPLAP_API fp_status fp_report_check_logbarrier(const fp_params* params, double eps, double r,
                                                  double R, double kappa, int n_samples,
                                                  const fp_quadspec* spec, fp_report** out);
FRACPLAP_API fp_status fp_report_check_cutoff(const fp_params* params, double m, const double* Rs,
                                              size_t n_R, int n_samples, const fp_quadspec* spec,
                                              fp_report** out);
FRACPLAP_API fp_status fp_report_check_supercritical(const fp_params* params, double q,
                                                     const double* radii, size_t n,
                                                     const fp_quadspec* spec, fp_report** out);
FRACPLAP_API fp_status fp_report_kernel_table(const fp_params* params, const double* rhos, size_t n,
                                              int compare_theta, const char* quantity,
                                              const fp_quadspec* spec, fp_report** out);

FRACPLAP_API void fp_report_free(fp_report* h);
FRACPLAP_API fp_status fp_report_verdict(const fp_report* h, fp_verdict* out);
FRACPLAP_API fp_status fp_report_to_csv(const fp_report* h, char** out);
FRACPLAP_API fp_status fp_report_to_json(const fp_report* h, char** out);

#ifdef __cplusplus
}
#endif

#endif /* FRACPLAP_H */
