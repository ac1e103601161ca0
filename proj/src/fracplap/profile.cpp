#include "fracplap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracplap::profile {

namespace {

// exp(-1/x) continued by 0, and its first two derivatives.
struct Bump {
    double e, d1, d2;
};

Bump bump(double x) {
    if (x < 2e-3) return {0.0, 0.0, 0.0};
    double e = std::exp(-1.0 / x);
    double ix2 = 1.0 / (x * x);
    return {e, e * ix2, e * (ix2 * ix2 - 2.0 * ix2 / x)};
}

// S(x) = e(x) / (e(x) + e(1-x)) on [0,1].
struct Smoothstep {
    double s, d1, d2;
};

Smoothstep smoothstep(double x) {
    if (x <= 2e-3) return {0.0, 0.0, 0.0};
    if (x >= 1.0 - 2e-3) return {1.0, 0.0, 0.0};
    Bump e1 = bump(x);
    Bump e2 = bump(1.0 - x);
    double D = e1.e + e2.e;
    double Dp = e1.d1 - e2.d1;
    double Dpp = e1.d2 + e2.d2;
    double s = e1.e / D;
    double s1 = (e1.d1 * D - e1.e * Dp) / (D * D);
    double s2 = (e1.d2 * D - e1.e * Dpp) / (D * D) - 2.0 * s1 * Dp / D;
    return {s, s1, s2};
}

Smoothstep mu_all(double t) {
    // mu(t) = S(2(1-t)) on (1/2, 1); 1 below, 0 above.
    if (t <= 0.5) return {1.0, 0.0, 0.0};
    if (t >= 1.0) return {0.0, 0.0, 0.0};
    Smoothstep s = smoothstep(2.0 * (1.0 - t));
    return {s.s, -2.0 * s.d1, 4.0 * s.d2};
}

}  // namespace

double smooth_cutoff(double t) { return mu_all(t).s; }
double smooth_cutoff_d1(double t) { return mu_all(t).d1; }
double smooth_cutoff_d2(double t) { return mu_all(t).d2; }

double Piece::eval(double r) const {
    switch (kind) {
        case PieceKind::Constant:
            return offset;
        case PieceKind::Power:
            return coeff * std::pow(r, exponent) + offset;
        case PieceKind::ShiftedPower:
            return coeff * std::pow(shift + r, exponent) + offset;
        case PieceKind::Log:
            return coeff * std::log(r) + offset;
        case PieceKind::SmoothCutoff:
            return coeff * fracplap::profile::smooth_cutoff(r / shift) + offset;
    }
    return offset;
}

double Piece::growth_exponent() const {
    switch (kind) {
        case PieceKind::Power:
        case PieceKind::ShiftedPower:
            return coeff != 0.0 && exponent > 0.0 ? exponent : 0.0;
        default:
            return 0.0;
    }
}

RadialProfile::RadialProfile(std::vector<double> breaks, std::vector<Piece> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (breaks_.empty() || breaks_.size() != pieces_.size())
        throw domain_error("RadialProfile: need one breakpoint per piece");
    if (breaks_.front() != 0.0) throw domain_error("RadialProfile: first breakpoint must be 0");
    for (size_t i = 1; i < breaks_.size(); ++i) {
        if (!(breaks_[i] > breaks_[i - 1]))
            throw domain_error("RadialProfile: breakpoints must be strictly increasing");
        double left = pieces_[i - 1].eval(breaks_[i]);
        double right = pieces_[i].eval(breaks_[i]);
        double scale = std::max({1.0, std::fabs(left), std::fabs(right)});
        if (std::fabs(left - right) > 1e-12 * scale)
            throw domain_error("RadialProfile: discontinuity at breakpoint r = " +
                               std::to_string(breaks_[i]) + " (left " + std::to_string(left) +
                               ", right " + std::to_string(right) + ")");
    }
}

size_t RadialProfile::piece_index(double r) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), r);
    return static_cast<size_t>(std::distance(breaks_.begin(), it)) - 1;
}

double RadialProfile::operator()(double r) const {
    if (r < 0.0) throw domain_error("RadialProfile: negative radius");
    if (r == 0.0) {
        const Piece& p0 = pieces_.front();
        if (p0.kind == PieceKind::Log) {
            if (pieces_.size() == 1) return -std::numeric_limits<double>::infinity();
            throw domain_error("RadialProfile: log piece is unbounded at r = 0");
        }
        if (p0.kind == PieceKind::Power && p0.exponent < 0.0 && p0.coeff != 0.0) {
            if (pieces_.size() == 1)
                return p0.coeff > 0 ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
            throw domain_error("RadialProfile: negative power piece is unbounded at r = 0");
        }
    }
    return pieces_[piece_index(r)].eval(r);
}

std::vector<double> RadialProfile::quadrature_breakpoints() const {
    std::vector<double> pts(breaks_.begin() + 1, breaks_.end());
    for (size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].kind != PieceKind::SmoothCutoff) continue;
        double lo = breaks_[i];
        double hi = i + 1 < breaks_.size() ? breaks_[i + 1] : std::numeric_limits<double>::infinity();
        for (double join : {0.5 * pieces_[i].shift, pieces_[i].shift})
            if (join > lo && join < hi) pts.push_back(join);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double RadialProfile::head_growth_exponent() const {
    const Piece& p0 = pieces_.front();
    if (p0.kind == PieceKind::Power && p0.coeff != 0.0 && p0.exponent < 0.0) return p0.exponent;
    return 0.0;
}

void RadialProfile::validate_tail(const FracParams& params) const {
    double gamma = tail_growth_exponent();
    if (!(gamma < params.beta_max()))
        throw domain_error("RadialProfile: tail growth exponent " + std::to_string(gamma) +
                           " >= ps/(p-1) = " + std::to_string(params.beta_max()) +
                           "; profile is not in L_s^{p-1}");
}

double RadialProfile::breakpoint_distance(double r) const {
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < breaks_.size(); ++i) d = std::min(d, std::fabs(r - breaks_[i]));
    return d / r;
}

namespace {

double log_cosh(double x) {
    // cosh - 1 = 2 sinh^2(x/2) keeps full precision when cosh(x) rounds to 1.
    if (std::fabs(x) < 1.0) {
        double s = std::sinh(0.5 * x);
        return std::log1p(2.0 * s * s);
    }
    return std::log(std::cosh(x));
}

}  // namespace

LocalDiffs RadialProfile::local_diffs(size_t piece, double r, double w) const {
    const Piece& p = pieces_[piece];
    double L = std::log1p(-w);  // ln(1-w)
    switch (p.kind) {
        case PieceKind::Constant:
            return {0.0, 0.0, 0.0};
        case PieceKind::Log: {
            double u = -p.coeff * L;
            return {u, -u, 0.0};
        }
        case PieceKind::Power: {
            double g = p.exponent;
            double cg = p.coeff * std::pow(r, g);
            double sh = std::sinh(0.5 * g * L);
            return {-cg * std::expm1(g * L), -cg * std::expm1(-g * L), -4.0 * cg * sh * sh};
        }
        case PieceKind::ShiftedPower: {
            double g = p.exponent;
            double A = p.shift + r;
            double cg = p.coeff * std::pow(A, g);
            double a = r * w / A;
            double b = r * w / ((1.0 - w) * A);
            double L1 = g * std::log1p(-a);
            double L2 = g * std::log1p(b);
            // e^{L1} + e^{L2} - 2 via the half-sum/half-difference split;
            // the half-sum needs (1-a)(1+b) - 1 = w^2 r shift / (A^2 (1-w)),
            // which is a stable product.
            double S = 0.5 * g * std::log1p(r * w * w * p.shift / (A * A * (1.0 - w)));
            double D = 0.5 * (L1 - L2);
            return {-cg * std::expm1(L1), -cg * std::expm1(L2),
                    -2.0 * cg * std::expm1(S + log_cosh(D))};
        }
        case PieceKind::SmoothCutoff: {
            double x = r / p.shift;
            if (w < 1e-4) {
                Smoothstep m = mu_all(x);
                double wt = w / (1.0 - w);
                double u1 = p.coeff * (m.d1 * x * w - 0.5 * m.d2 * x * x * w * w);
                double u2 = -p.coeff * (m.d1 * x * wt + 0.5 * m.d2 * x * x * wt * wt);
                // second difference through O(w^3); the mu''' terms cancel
                return {u1, u2, -p.coeff * x * w * w * (m.d1 + m.d2 * x) * (1.0 + w)};
            }
            double f0 = p.coeff * smooth_cutoff(x);
            double u1 = f0 - p.coeff * smooth_cutoff(x * (1.0 - w));
            double u2 = f0 - p.coeff * smooth_cutoff(x / (1.0 - w));
            return {u1, u2, u1 + u2};
        }
    }
    return {0.0, 0.0, 0.0};
}

RadialProfile power_profile(double beta) { return RadialProfile({0.0}, {Piece::power(1.0, beta)}); }
RadialProfile log_profile(double offset) { return RadialProfile({0.0}, {Piece::log(1.0, offset)}); }
RadialProfile constant_profile(double c) { return RadialProfile({0.0}, {Piece::constant(c)}); }

}  // namespace fracplap::profile
