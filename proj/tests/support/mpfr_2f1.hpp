#pragma once

// Arbitrary-precision direct Gauss series for 2F1, used only as a test
// oracle. 256-bit working precision, plain term recurrence; the series has
// positive parameters in every use here, so there is no cancellation and
// truncation at 1e-40 relative is meaningful.

#include <mpfr.h>

#include <stdexcept>

namespace testsupport {

inline double mpfr_hyp2f1_series(double a, double b, double c, double t) {
    if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("mpfr_hyp2f1_series: t outside [0,1)");
    const mpfr_prec_t prec = 256;
    mpfr_t term, sum, tmp, tv;
    mpfr_inits2(prec, term, sum, tmp, tv, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(term, 1.0, MPFR_RNDN);
    mpfr_set_d(sum, 1.0, MPFR_RNDN);
    mpfr_set_d(tv, t, MPFR_RNDN);
    bool converged = false;
    for (long n = 0; n < 2000000; ++n) {
        // term *= (a+n)(b+n) / ((c+n)(n+1)) * t
        mpfr_mul_d(term, term, a + n, MPFR_RNDN);
        mpfr_mul_d(term, term, b + n, MPFR_RNDN);
        mpfr_div_d(term, term, c + n, MPFR_RNDN);
        mpfr_div_d(term, term, n + 1.0, MPFR_RNDN);
        mpfr_mul(term, term, tv, MPFR_RNDN);
        mpfr_add(sum, sum, term, MPFR_RNDN);
        mpfr_abs(tmp, term, MPFR_RNDN);
        mpfr_div(tmp, tmp, sum, MPFR_RNDN);
        mpfr_abs(tmp, tmp, MPFR_RNDN);
        if (mpfr_cmp_d(tmp, 1e-40) < 0) {
            converged = true;
            break;
        }
    }
    double out = mpfr_get_d(sum, MPFR_RNDN);
    mpfr_clears(term, sum, tmp, tv, static_cast<mpfr_ptr>(nullptr));
    if (!converged) throw std::runtime_error("mpfr_hyp2f1_series: no convergence");
    return out;
}

}  // namespace testsupport
