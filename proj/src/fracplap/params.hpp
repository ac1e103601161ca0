#pragma once

#include <cmath>
#include <string>

#include "fracplap/errors.hpp"

namespace fracplap {

// The parameter triple (N, s, p) of the operator together with the derived
// quantities used everywhere: sp = s*p, the critical exponent
// beta_star = (ps - N)/(p - 1), and the admissible interval
// (-N/(p-1), ps/(p-1)) for the power exponent beta.
struct FracParams {
    int n;
    double s;
    double p;

    FracParams(int n_, double s_, double p_) : n(n_), s(s_), p(p_) {
        if (n < 2) throw domain_error("FracParams: dimension N must be >= 2, got " + std::to_string(n));
        if (!(s > 0.0 && s < 1.0))
            throw domain_error("FracParams: s must lie in (0,1), got " + std::to_string(s));
        if (!(p > 1.0) || !std::isfinite(p))
            throw domain_error("FracParams: p must lie in (1,inf), got " + std::to_string(p));
    }

    double sp() const { return s * p; }
    double beta_star() const { return (sp() - n) / (p - 1.0); }
    double beta_min() const { return -n / (p - 1.0); }
    double beta_max() const { return sp() / (p - 1.0); }

    bool is_log_case() const { return std::fabs(sp() - n) < 1e-12; }

    bool beta_admissible(double beta) const {
        return beta > beta_min() && beta < beta_max();
    }

    void require_beta_admissible(double beta) const {
        if (!beta_admissible(beta))
            throw domain_error("beta = " + std::to_string(beta) + " outside the admissible interval (" +
                               std::to_string(beta_min()) + ", " + std::to_string(beta_max()) + ")");
    }

    void require_power_case() const {
        if (is_log_case())
            throw domain_error("ps = N: the power fundamental solution degenerates; use the log case");
    }

    void require_log_case() const {
        if (!is_log_case())
            throw domain_error("ps != N: the log fundamental solution requires ps = N exactly");
    }
};

// Psi_p(t) = |t|^{p-2} t, written as |t|^{p-1} sign(t) so that t = 0 is safe
// for every p > 1.
inline double psi_p(double t, double p) {
    if (t == 0.0) return 0.0;
    return std::copysign(std::pow(std::fabs(t), p - 1.0), t);
}

}  // namespace fracplap
