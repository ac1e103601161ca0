#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracplap/params.hpp"

namespace fracplap::profile {

// C-infinity cutoff bridge: mu = 1 on [0,1/2], 0 on [1,inf), nonincreasing.
// Realized as the normalized mollifier bridge mu(t) = S(2(1-t)) with
// S(x) = e(x)/(e(x)+e(1-x)), e(x) = exp(-1/x); every derivative vanishes at
// both joins, so the glue to the constant pieces is smooth.
double smooth_cutoff(double t);
double smooth_cutoff_d1(double t);
double smooth_cutoff_d2(double t);

enum class PieceKind { Constant, Power, ShiftedPower, Log, SmoothCutoff };

// One radial piece. Evaluation by kind:
//   Constant:     offset
//   Power:        coeff * r^exponent + offset
//   ShiftedPower: coeff * (shift + r)^exponent + offset
//   Log:          coeff * ln(r) + offset
//   SmoothCutoff: coeff * mu(r / shift) + offset     (shift = cutoff radius)
struct Piece {
    PieceKind kind = PieceKind::Constant;
    double coeff = 0.0;
    double exponent = 0.0;
    double shift = 0.0;
    double offset = 0.0;

    static Piece constant(double v) { return {PieceKind::Constant, 0.0, 0.0, 0.0, v}; }
    static Piece power(double coeff, double exponent, double offset = 0.0) {
        return {PieceKind::Power, coeff, exponent, 0.0, offset};
    }
    static Piece shifted_power(double coeff, double exponent, double shift, double offset = 0.0) {
        return {PieceKind::ShiftedPower, coeff, exponent, shift, offset};
    }
    static Piece log(double coeff, double offset = 0.0) {
        return {PieceKind::Log, coeff, 0.0, 0.0, offset};
    }
    static Piece smooth_cutoff(double amplitude, double radius, double offset = 0.0) {
        return {PieceKind::SmoothCutoff, amplitude, 0.0, radius, offset};
    }

    double eval(double r) const;
    // Growth exponent gamma of this piece as r -> inf (0 for bounded kinds;
    // log counts as 0, its growth is below every power).
    double growth_exponent() const;
};

// f(r) - f(r(1-w)), f(r) - f(r/(1-w)) and their sum, all inside one piece,
// evaluated through expm1/log1p/sinh forms so the second-order cancellation
// in the sum survives down to w near machine precision.
struct LocalDiffs {
    double u_inner;  // f(r) - f(r * (1-w))
    double u_outer;  // f(r) - f(r / (1-w))
    double second;   // u_inner + u_outer = 2 f(r) - f(r(1-w)) - f(r/(1-w))
};

// A continuous piecewise radial function on [0, inf). breaks[i] is the start
// of piece i (breaks[0] == 0); the last piece extends to infinity.
class RadialProfile {
public:
    RadialProfile(std::vector<double> breaks, std::vector<Piece> pieces);

    double operator()(double r) const;
    size_t piece_index(double r) const;
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    // Piece boundaries plus the interior joins of smooth-cutoff pieces;
    // quadrature split points in r-space.
    std::vector<double> quadrature_breakpoints() const;

    double tail_growth_exponent() const { return pieces_.back().growth_exponent(); }

    // f(rho=0+) divergence exponent: for a leading negative power piece the
    // value grows like r^exponent; 0 otherwise (Log treated as 0).
    double head_growth_exponent() const;
    bool head_is_log() const { return pieces_.front().kind == PieceKind::Log; }

    // The operator requires the profile to lie in L_s^{p-1}: the tail growth
    // exponent must stay below ps/(p-1).
    void validate_tail(const FracParams& params) const;

    // Distance from r to the nearest breakpoint, in units of r.
    double breakpoint_distance(double r) const;

    LocalDiffs local_diffs(size_t piece, double r, double w) const;

private:
    std::vector<double> breaks_;
    std::vector<Piece> pieces_;
};

// Convenience profiles.
RadialProfile power_profile(double beta);              // |x|^beta
RadialProfile log_profile(double offset = 0.0);        // log|x| + offset
RadialProfile constant_profile(double c);

}  // namespace fracplap::profile
