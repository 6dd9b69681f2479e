#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace fraclap {

inline constexpr const char* kVersion = "0.1.0";

/// Uniform mesh of interior nodes on the interval (a, b).
///
/// Nodes are x_i = a + i*h for i = 1..n_interior with h = (b-a)/(n_interior+1).
/// The endpoints a and b are not nodes; grid functions are implicitly zero
/// there and outside the interval.
class Grid {
public:
    Grid(double a, double b, int n_interior);

    double a() const { return a_; }
    double b() const { return b_; }
    int n_interior() const { return n_; }
    double h() const { return h_; }
    double node(int i) const { return a_ + i * h_; }  // 1-based, i in [1, n_interior]
    double half_width() const { return 0.5 * (b_ - a_); }
    double midpoint() const { return 0.5 * (a_ + b_); }

    Eigen::VectorXd nodes() const;

private:
    double a_;
    double b_;
    double h_;
    int n_;
};

struct GridFunction {
    Grid grid;
    Eigen::VectorXd values;  // one value per interior node

    GridFunction(const Grid& g, Eigen::VectorXd v);
};

/// Distance to the boundary, delta(x) = min(x - a, b - x), at the nodes.
GridFunction delta(const Grid& grid);

/// delta^beta at the nodes, truncated at `cap` when given (delta^beta ∧ cap).
GridFunction power_data(const Grid& grid, double beta,
                        std::optional<double> cap = std::nullopt);

enum class OperatorKind {
    Rfl,            // restricted fractional Laplacian, gamma = s
    Sfl,            // spectral fractional Laplacian, gamma = 1
    Cfl,            // censored fractional Laplacian, gamma = 2s-1, s in (1/2,1)
    RflSum,         // sum of two restricted operators, gamma = s1
    SpectralOfRfl,  // spectral sigma2 power of an RFL of order sigma1
    ComposedRfl     // k-fold composition of RFL(s/k) solves, gamma = s/k (conjectural)
};

struct OperatorSpec {
    OperatorKind kind;
    double s = 0;    // primary order: s, s1, sigma1, or total order for ComposedRfl
    double s2 = 0;   // secondary order: s2 or sigma2
    int k = 0;       // composition depth for ComposedRfl
    double gamma = 0;        // boundary exponent of the Green kernel
    double effective_s = 0;  // interior order entering the kernel bound
    bool conjectural = false;  // ComposedRfl exponents are reported, never asserted

    std::string name() const;
};

/// Boundary exponent gamma for the given family member. Throws
/// std::invalid_argument on out-of-range parameters.
double gamma_of(OperatorKind kind, double p1, double p2 = 0, int k = 0);

OperatorSpec rfl(double s);
OperatorSpec sfl(double s);
OperatorSpec cfl(double s);
OperatorSpec rfl_sum(double s1, double s2);
OperatorSpec spectral_of_rfl(double sigma1, double sigma2);
OperatorSpec composed_rfl(double s_total, int k);

/// Data class admissibility: delta^beta is usable iff beta + gamma > -1.
inline bool admissible_beta(double beta, double gamma) { return beta + gamma > -1.0; }

/// Normalization constant of the one-dimensional singular-integral operator,
/// c_{1,s} = 4^s Gamma(1/2+s) s / (sqrt(pi) Gamma(1-s)).
double rfl_constant(double s);

}  // namespace fraclap
