#pragma once

#include "fraclap/core.hpp"

#include <Eigen/Dense>

namespace fraclap {

/// Dense discrete operator on the interior nodes of a grid.
///
/// For the censored kind the entries annihilate the constant vector exactly
/// (the operator identity defining it); `dirichlet_closure` then holds the
/// boundary-node killing rates that the Green construction adds back to
/// encode the zero trace condition. It is empty for every other kind.
struct OperatorMatrix {
    OperatorSpec spec;
    Grid grid;
    Eigen::MatrixXd entries;
    Eigen::VectorXd dirichlet_closure;
};

/// Matrix with the Dirichlet closure applied (equals `entries` for all kinds
/// except the censored one).
Eigen::MatrixXd closed_matrix(const OperatorMatrix& L);

/// Operator application, L f, on nodal values.
GridFunction apply(const OperatorMatrix& L, const GridFunction& f);

/// Restricted operator with zero exterior data. Symmetric pairs of nodes at
/// distance k h carry the lattice weight c_{1,s} h^{-2s} w(k); everything at
/// or beyond the boundary collapses into the exact closed-form tail sums.
OperatorMatrix build_rfl(const Grid& grid, double s);

/// Spectral power of the second-difference Dirichlet matrix through its
/// analytic sine eigenbasis.
OperatorMatrix build_sfl(const Grid& grid, double s);

/// Censored operator via the identity L_cfl u = L_rfl u - u L_rfl(1): the
/// returned entries have exactly zero row sums, and the killing rates toward
/// the two boundary nodes are stored as the Dirichlet closure.
OperatorMatrix build_cfl(const Grid& grid, double s);

/// Dispatch over the whole family.
OperatorMatrix build_operator(const OperatorSpec& spec, const Grid& grid);

/// tridiag(-1, 2, -1) / h^2 on the interior nodes.
Eigen::MatrixXd dirichlet_laplacian(const Grid& grid);

// Lattice weights of the restricted operator (exposed for tests).
double rfl_pair_weight(double s, long k);      // w(k) = Gamma(k-s) / Gamma(k+1+s)
double rfl_tail_sum(double s, long k0);        // sum_{k >= k0} w(k), closed form
double sfl_eigenvalue(const Grid& grid, int k);
Eigen::VectorXd sfl_eigenvector(const Grid& grid, int k);  // unit length

}  // namespace fraclap
