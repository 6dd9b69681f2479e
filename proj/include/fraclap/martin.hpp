#pragma once

#include "fraclap/boundary.hpp"
#include "fraclap/green.hpp"

#include <vector>

namespace fraclap {

/// Boundary kernels at the two endpoints, obtained by extrapolating
/// kernel(x, .) / delta(x)^gamma to each endpoint column by column.
struct MartinKernel {
    OperatorSpec spec;
    Grid grid;
    GridFunction left;   // kernel limit at the left endpoint
    GridFunction right;  // kernel limit at the right endpoint
    Eigen::VectorXd left_spread;   // per-column extrapolation diagnostics
    Eigen::VectorXd right_spread;
};

/// Throws when more than 10% of columns show an extrapolation spread above
/// 50% (unresolved boundary layer).
MartinKernel martin_kernel(const GreenMatrix& G);

/// Canonical harmonic solution: boundary integral of the kernel with unit
/// density, which on an interval is the two-endpoint sum.
GridFunction u_star(const MartinKernel& M);

/// Data concentrating on the strip {1/j < delta < 2/j}. The default is the
/// power normalization (j/2)^{1+gamma} on the strip; `exact_form` selects
/// 2 chi / (|strip| delta^gamma), whose delta^gamma-weighted mass is exactly
/// the boundary measure 2.
GridFunction concentration_sequence(const Grid& grid, double gamma, int j,
                                    bool exact_form = false);

struct MartinLimitResult {
    std::vector<int> j_list;
    std::vector<GridFunction> iterates;
    std::vector<double> cauchy;     // sup distance between consecutive iterates on the compact
    double rel_diff_to_u_star = 0;  // final iterate vs u_star, pointwise relative, on the compact
};

/// Solves against the concentrating sequence (exact normalization) and checks
/// convergence toward u_star on the fixed compact {delta > quarter width}.
MartinLimitResult martin_limit(const GreenMatrix& G, const std::vector<int>& j_list);

/// Harmonic solution with boundary density (h_left, h_right):
/// u = h_left * left + h_right * right.
GridFunction martin_solve(const MartinKernel& M, double h_left, double h_right);

struct TraceReport {
    double left_limit = 0;   // extrapolated boundary limits of u / u_star
    double right_limit = 0;
    std::vector<double> etas;
    std::vector<double> averaged_const;   // eta^-1 strip average of (u/u_star) phi, phi = 1
    std::vector<double> averaged_linear;  // phi = x
    double expected_const = 0;            // h_left + h_right
    double expected_linear = 0;           // h_left a + h_right b
};

/// Pointwise and averaged boundary traces of u against u_star. The averaged
/// functional is normalized so that u = u_star with phi = 1 returns the
/// boundary measure 2.
TraceReport check_martin_trace(const GridFunction& u, const GridFunction& ustar,
                               double h_left, double h_right,
                               std::vector<double> etas = {0.2, 0.1, 0.05});

}  // namespace fraclap
