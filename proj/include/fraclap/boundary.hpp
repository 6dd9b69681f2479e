#pragma once

#include "fraclap/core.hpp"

#include <optional>

namespace fraclap {

/// Predicted boundary exponent for G(delta^beta), or inadmissibility.
struct AlphaPrediction {
    bool admissible = false;
    std::optional<double> alpha;
    bool log_flag = false;
};

/// Exponent table for G(delta^beta) ~ delta^alpha:
///   beta < gamma-2s  ->  alpha = beta+2s      (only reachable for gamma > s-1/2)
///   beta = gamma-2s  ->  alpha = gamma, with logarithmic weight
///   beta > gamma-2s  ->  alpha = gamma
/// Inadmissible when beta + gamma <= -1.
AlphaPrediction predict_alpha(double beta, double gamma, double s);

/// Boundary rate of the canonical harmonic solution:
/// alpha = (2s-gamma-1) ∧ gamma, with a log correction exactly at gamma = s-1/2.
AlphaPrediction predict_u_star_rate(double gamma, double s);

/// The remainder profile Theta(eta, x) entering the sharp boundary estimate
/// for G(delta^beta chi_{delta<eta}), by the three gamma regimes.
double predict_theta(double beta, double gamma, double s, double eta, double delta);

/// Three-term boundary profile delta^{beta+2s} + eta^{beta+gamma+1} delta^gamma + Theta.
double sharp_boundary_profile(double beta, double gamma, double s, double eta, double delta);

enum class Side { Left, Right, Combined };

struct FitWindow {
    int exclude_nearest = 2;   // nodes dropped at each boundary
    double delta_max = 0.0;    // <= 0 selects the default, a quarter of the half-width
};

struct RateFit {
    double alpha = 0;
    bool log_correction = false;
    double r_squared = 0;
    double window_lo = 0;  // delta range actually used
    double window_hi = 0;
    Side side = Side::Left;
};

/// Log-log least-squares fit of u against delta on the boundary window.
/// Fits both a pure power delta^alpha and a power with logarithmic weight
/// delta^alpha (1 + |ln delta|); returns the better model by r^2 (the log
/// model must improve r^2 by at least 1e-3 to be selected).
RateFit fit_boundary_rate(const GridFunction& u, Side side, const FitWindow& window = {});

struct BoundaryExtrapolation {
    double value;   // linear-in-delta extrapolation to delta = 0
    double spread;  // relative disagreement between the 2-node and 3-node estimates
};

/// Extrapolates nodal values to an endpoint through the three nodes nearest
/// it, skipping the very first node (the scheme's boundary layer).
BoundaryExtrapolation extrapolate_to_boundary(const GridFunction& v, Side side);

/// gamma-normal derivative at an endpoint: u(x)/delta(x)^gamma extrapolated
/// linearly in delta to delta = 0 through the three nodes nearest the endpoint,
/// skipping the very first node. Throws when the 2-node and 3-node estimates
/// disagree by more than 50% (unresolved boundary layer).
double d_gamma(const GridFunction& u, double gamma, Side side);

/// Averaged boundary trace over the strip {delta < eta}, with the weight
/// selected by the regime of gamma relative to s - 1/2.
double averaged_trace(const GridFunction& u, double gamma, double s, double eta);

}  // namespace fraclap
