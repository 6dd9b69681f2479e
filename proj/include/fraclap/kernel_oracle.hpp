#pragma once

#include "fraclap/quadrature.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fraclap::oracle {

/// Parameters of the analytic model kernel on the interval (a, b).
///
/// The pair (s, gamma) is taken at face value: for 2s > 1 the kernel no longer
/// corresponds to a Green function in one dimension and results are flagged as
/// a formal model (this is the only way to reach the gamma <= s - 1/2 regimes).
struct ModelKernelParams {
    double s;
    double gamma;
    double a = -1.0;
    double b = 1.0;

    double half_width() const { return 0.5 * (b - a); }
    double dist(double x) const { return x - a < b - x ? x - a : b - x; }
    bool formal_model() const { return 2.0 * s > 1.0; }
};

/// Model kernel |x-y|^{2s-1} (delta(x) delta(y)/|x-y|^2 ∧ 1)^gamma.
/// Throws on x == y.
double model_kernel(double x, double y, const ModelKernelParams& p);

/// Adaptive quadrature of  integral  model_kernel(x,y) delta(y)^beta  over
/// {y : delta(y) < eta} (the whole interval when eta is absent).
double quad_green_apply(const ModelKernelParams& p, double beta, std::optional<double> eta,
                        double x, const quad::Options& opt = {});

struct OracleProfileReport {
    double c_low = 0;        // extremes of quadrature / profile over {delta < eta/2}
    double c_high = 0;
    double interior_max = 0;           // max of the quadrature over {delta > eta/2}
    double interior_weighted_max = 0;  // max of value / (eta^{beta+gamma+1} delta^gamma), gamma < s-1/2 only
    bool formal_model = false;
    int n_boundary_samples = 0;
    std::vector<double> sample_delta;  // boundary samples behind c_low/c_high
    std::vector<double> sample_value;
    std::vector<double> sample_profile;
};

/// Ratio extremes of the strip quadrature against the three-term boundary
/// profile, plus the interior bounds on {delta > eta/2}.
OracleProfileReport oracle_vs_profile(const ModelKernelParams& p, double beta, double eta,
                                      const quad::Options& opt = {});

struct RflSplit {
    double value;          // interior + exterior_tail
    double interior;       // principal-value part over the interval
    double exterior_tail;  // exact tail where u vanishes identically
};

/// Reference evaluation of the singular-integral operator at an interior
/// point x for u supported in [a, b]: symmetric pairing removes the principal
/// value near x, one-sided graded quadrature covers the rest of the interval,
/// and the exterior contributes u(x) ((x-a)^{-2s} + (b-x)^{-2s}) / (2s) exactly.
RflSplit quad_rfl_apply_split(const std::function<double(double)>& u, double a, double b,
                              double x, double s, const quad::Options& opt = {.rel_tol = 1e-8});

double quad_rfl_apply(const std::function<double(double)>& u, double a, double b, double x,
                      double s, const quad::Options& opt = {.rel_tol = 1e-8});

/// u(y) = (1 - y^2)_+^s on (-1,1); the operator maps it to a constant.
std::function<double(double)> getoor_profile(double s);

/// u(y) = 2s (1 - y^2)^{s-1} on (-1,1), zero outside; annihilated by the
/// operator inside the interval while blowing up at the endpoints.
std::function<double(double)> singular_solution_profile(double s);

/// exp(-1/(1-y^2)) bump on (-1,1) and its derivative.
std::function<double(double)> smooth_bump();
std::function<double(double)> smooth_bump_derivative();

}  // namespace fraclap::oracle
