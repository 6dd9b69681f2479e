#pragma once

#include "fraclap/discrete_ops.hpp"

#include <string>

namespace fraclap {

/// Discrete Green kernel: kernel(i,j) approximates the continuum G(x_i, y_j),
/// normalized so that (G f)(x_i) = sum_j kernel(i,j) f_j h.
struct GreenMatrix {
    OperatorSpec spec;
    Grid grid;
    Eigen::MatrixXd kernel;
};

/// Inverts the operator matrix (dense Cholesky) and divides by h. For the
/// censored kind the stored Dirichlet closure is applied first; for the
/// composed kind the kernel is assembled as the k-fold product of the base
/// solve operators.
GreenMatrix green_matrix(const OperatorMatrix& L);

GridFunction solve(const GreenMatrix& G, const GridFunction& f);

/// Green function with a unit Dirac at node j (column j of the kernel).
GridFunction solve_point_mass(const GreenMatrix& G, int j);

struct K2Report {
    bool ran = false;
    std::string reason;   // set when skipped
    double c_low = 0;     // extremes of kernel / model over off-diagonal pairs
    double c_high = 0;
};

/// Two-sided comparison of the kernel against the analytic model expression.
/// Skipped (with reason) when the effective order violates 2s < 1, the model
/// bound's validity range on an interval.
K2Report check_k2(const GreenMatrix& G);

/// min over pairs of kernel(i,j) / (delta_i delta_j)^gamma.
double hopf_ratio(const GreenMatrix& G);

struct Eigenpair {
    double lambda;
    GridFunction phi;  // positive, unit norm
};

/// Smallest eigenvalue and eigenfunction by inverse power iteration.
Eigenpair first_eigenpair(const OperatorMatrix& L, int max_iterations = 5000,
                          double tol = 1e-13);

}  // namespace fraclap
