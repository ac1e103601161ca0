#include "fracplap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>

namespace fracplap::quadrature {

namespace {

// 15-point Kronrod nodes with the embedded 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    double value;
    double err;
    long seq;  // insertion counter; breaks heap ties deterministically
};

struct WorseError {
    bool operator()(const Interval& x, const Interval& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.seq > y.seq;
    }
};

Interval gk15(const Integrand& f, double a, double b, long seq) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    if (!std::isfinite(fc))
        throw integrand_error("integrand returned a non-finite value at x = " + std::to_string(c), c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double x1 = c - h * kXgk[j];
        double x2 = c + h * kXgk[j];
        double f1 = f(x1), f2 = f(x2);
        if (!std::isfinite(f1))
            throw integrand_error("integrand returned a non-finite value at x = " + std::to_string(x1), x1);
        if (!std::isfinite(f2))
            throw integrand_error("integrand returned a non-finite value at x = " + std::to_string(x2), x2);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {a, b, resk * h, std::fabs((resk - resg) * h), seq};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw domain_error("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 1) throw domain_error("QuadratureSpec: max_subdivisions must be >= 1");
    if (pv_epsilons.size() < 2) throw domain_error("QuadratureSpec: pv schedule needs >= 2 entries");
    for (size_t i = 0; i < pv_epsilons.size(); ++i) {
        if (!(pv_epsilons[i] > 0.0)) throw domain_error("QuadratureSpec: pv epsilons must be positive");
        if (i > 0 && !(pv_epsilons[i] < pv_epsilons[i - 1]))
            throw domain_error("QuadratureSpec: pv epsilons must be strictly decreasing");
    }
}

IntegralResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                                  std::vector<double> splits) {
    if (!(a < b)) throw domain_error("integrate_adaptive: requires a < b");
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

    std::priority_queue<Interval, std::vector<Interval>, WorseError> heap;
    long seq = 0;
    int count = 0;
    double value = 0.0, err = 0.0;  // running totals, refreshed exactly on exit
    for (size_t i = 0; i + 1 < splits.size(); ++i) {
        if (splits[i] < a || splits[i + 1] > b) continue;
        Interval iv = gk15(f, splits[i], splits[i + 1], seq++);
        value += iv.value;
        err += iv.err;
        heap.push(iv);
        ++count;
    }

    auto final_totals = [&heap](double& v, double& e) {
        std::vector<Interval> items;
        while (!heap.empty()) {
            items.push_back(heap.top());
            heap.pop();
        }
        std::sort(items.begin(), items.end(),
                  [](const Interval& x, const Interval& y) { return x.a < y.a; });
        v = 0.0;
        e = 0.0;
        for (const auto& it : items) {
            v += it.value;
            e += it.err;
        }
    };

    while (err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(value))) {
        if (count >= spec.max_subdivisions) {
            final_totals(value, err);
            if (err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(value)))
                return {value, err, count};
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "integrate_adaptive: accuracy not reached after %d subdivisions "
                          "(value=%.6e, err_est=%.3e)",
                          count, value, err);
            throw accuracy_error(msg, value, err);
        }
        Interval worst = heap.top();
        heap.pop();
        value -= worst.value;
        err -= worst.err;
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at floating-point resolution; its error is irreducible.
            heap.push({worst.a, worst.b, worst.value, 0.0, worst.seq});
            value += worst.value;
        } else {
            Interval l = gk15(f, worst.a, mid, seq++);
            Interval r = gk15(f, mid, worst.b, seq++);
            value += l.value + r.value;
            err += l.err + r.err;
            heap.push(l);
            heap.push(r);
            ++count;
        }
    }
    final_totals(value, err);
    return {value, err, count};
}

IntegralResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_adaptive(f, a, b, spec, {});
}

IntegralResult integrate_graded(const Integrand& g_of_w, double W, double lambda,
                                const QuadratureSpec& spec) {
    if (!(lambda > -1.0))
        throw domain_error("integrate_graded: exponent lambda = " + std::to_string(lambda) +
                           " is not integrable (requires lambda > -1)");
    if (!(W > 0.0)) throw domain_error("integrate_graded: requires W > 0");
    double q = 1.0 + lambda;
    if (spec.grading_exponent > 0.0) q = spec.grading_exponent;
    // integral_0^W g(w) w^lambda dw = (1/q) integral_0^{W^q} g(t^{1/q}) t^{(lambda+1-q)/q} dt.
    // With q = 1+lambda the residual power vanishes and the transformed
    // integrand is bounded.
    double T = std::pow(W, q);
    double residual = (lambda + 1.0 - q) / q;
    auto transformed = [&](double t) {
        double w = std::pow(t, 1.0 / q);
        double v = g_of_w(w);
        if (residual != 0.0) v *= std::pow(t, residual);
        return v;
    };
    IntegralResult r = integrate_adaptive(transformed, 0.0, T, spec);
    r.value /= q;
    r.err_est /= q;
    return r;
}

IntegralResult integrate_endpoint_singular(const Integrand& f_regular, double a, double b, double lambda,
                                           const QuadratureSpec& spec) {
    if (!(a < b)) throw domain_error("integrate_endpoint_singular: requires a < b");
    return integrate_graded([&](double w) { return f_regular(b - w); }, b - a, lambda, spec);
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// One Richardson elimination with the convergence exponent estimated from the
// data. Returns false when the differences carry no usable signal.
bool eliminate(const std::vector<double>& eps, const std::vector<double>& J, std::vector<double>& eps_out,
               std::vector<double>& out) {
    size_t n = J.size();
    if (n < 3) return false;
    std::vector<double> gammas;
    double scale = 0.0;
    for (double v : J) scale = std::max(scale, std::fabs(v));
    for (size_t k = 0; k + 2 < n; ++k) {
        double d0 = J[k + 1] - J[k];
        double d1 = J[k + 2] - J[k + 1];
        if (std::fabs(d0) < 1e-15 * scale || std::fabs(d1) < 1e-15 * scale) continue;
        double g = std::log(std::fabs(d0 / d1)) / std::log(eps[k] / eps[k + 1]);
        if (std::isfinite(g) && g > 0.02 && g < 12.0) gammas.push_back(g);
    }
    if (gammas.empty()) return false;
    double gamma = median(gammas);
    out.clear();
    eps_out.clear();
    for (size_t k = 0; k + 1 < n; ++k) {
        double theta = std::pow(eps[k + 1] / eps[k], gamma);
        out.push_back((J[k + 1] - theta * J[k]) / (1.0 - theta));
        eps_out.push_back(eps[k + 1]);
    }
    return true;
}

}  // namespace

IntegralResult pv_limit(const std::function<double(double)>& J, const QuadratureSpec& spec) {
    spec.validate();
    const std::vector<double>& eps = spec.pv_epsilons;
    std::vector<double> Jv;
    Jv.reserve(eps.size());
    for (double e : eps) Jv.push_back(J(e));

    double scale = 0.0;
    for (double v : Jv) scale = std::max(scale, std::fabs(v));
    // Divergence screen: growing tail differences mean no limit.
    size_t n = Jv.size();
    if (n >= 3) {
        double d_prev = std::fabs(Jv[n - 2] - Jv[n - 3]);
        double d_last = std::fabs(Jv[n - 1] - Jv[n - 2]);
        if (d_last > 4.0 * d_prev && d_last > 1e-9 * scale) {
            std::string table = "pv_limit: J_eps sequence diverges;";
            for (size_t i = 0; i < n; ++i) {
                char row[64];
                std::snprintf(row, sizeof row, " J(%.1e)=%.12e", eps[i], Jv[i]);
                table += row;
            }
            throw convergence_error(table);
        }
    }

    std::vector<double> cur = Jv, cur_eps = eps, next, next_eps;
    double last_spread = (n >= 2) ? std::fabs(cur[n - 1] - cur[n - 2]) : 0.0;
    for (int level = 0; level < 2; ++level) {
        if (!eliminate(cur_eps, cur, next_eps, next)) break;
        double spread = std::fabs(next.back() - next[next.size() - 2]);
        if (next.size() < 2 || spread > last_spread) break;
        cur = next;
        cur_eps = next_eps;
        last_spread = spread;
        if (cur.size() < 3) break;
    }
    return {cur.back(), last_spread, 0};
}

}  // namespace fracplap::quadrature
