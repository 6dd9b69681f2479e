#include "fraclap/discrete_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fraclap {

Eigen::MatrixXd closed_matrix(const OperatorMatrix& L) {
    Eigen::MatrixXd m = L.entries;
    if (L.dirichlet_closure.size() > 0) m.diagonal() += L.dirichlet_closure;
    return m;
}

GridFunction apply(const OperatorMatrix& L, const GridFunction& f) {
    if (f.grid.n_interior() != L.grid.n_interior())
        throw std::invalid_argument("apply: grid mismatch");
    return GridFunction(L.grid, L.entries * f.values);
}

double rfl_pair_weight(double s, long k) {
    return std::exp(std::lgamma(k - s) - std::lgamma(k + 1 + s));
}

double rfl_tail_sum(double s, long k0) {
    // w(k) telescopes: Gamma(k-s)/Gamma(k+s) - Gamma(k+1-s)/Gamma(k+1+s) = 2s w(k)
    return std::exp(std::lgamma(k0 - s) - std::lgamma(k0 + s)) / (2 * s);
}

namespace {

// Off-diagonal pattern shared by the restricted and censored kinds:
// entries(i,j) = -c h^{-2s} w(|i-j|).
void fill_offdiagonal(Eigen::MatrixXd& m, const Grid& grid, double s) {
    const int n = grid.n_interior();
    const double scale = rfl_constant(s) * std::pow(grid.h(), -2 * s);
    std::vector<double> w(n);
    for (int k = 1; k < n; ++k) w[k] = scale * rfl_pair_weight(s, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) m(i, j) = -w[std::abs(i - j)];
}

}  // namespace

OperatorMatrix build_rfl(const Grid& grid, double s) {
    if (!(s > 0 && s < 1)) throw std::invalid_argument("build_rfl: s must lie in (0,1)");
    const int n = grid.n_interior();
    const double scale = rfl_constant(s) * std::pow(grid.h(), -2 * s);

    Eigen::MatrixXd m(n, n);
    fill_offdiagonal(m, grid, s);
    // Row i sees every pair distance once per side; pairs reaching the zero
    // region contribute only to the diagonal, so the diagonal carries the
    // full two-sided sum 2 sum_{k>=1} w(k), constant across rows.
    const double diag = scale * 2.0 * rfl_tail_sum(s, 1);
    m.diagonal().setConstant(diag);

    return {rfl(s), grid, std::move(m), {}};
}

OperatorMatrix build_cfl(const Grid& grid, double s) {
    if (!(s > 0.5 && s < 1)) throw std::invalid_argument("build_cfl: s must lie in (1/2,1)");
    const int n = grid.n_interior();
    const double scale = rfl_constant(s) * std::pow(grid.h(), -2 * s);

    Eigen::MatrixXd m(n, n);
    fill_offdiagonal(m, grid, s);
    // Zero row sums to the last ulp: the diagonal is the compensated negated
    // sum of the stored off-diagonal entries.
    for (int i = 0; i < n; ++i) {
        double sum = 0, comp = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double y = -m(i, j) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        m(i, i) = sum;
    }

    // Jump rates onto the two boundary nodes, where the zero condition kills
    // the process; restores invertibility for the Dirichlet problem.
    Eigen::VectorXd killing(n);
    for (int i = 1; i <= n; ++i)
        killing[i - 1] = scale * (rfl_pair_weight(s, i) + rfl_pair_weight(s, n + 1 - i));

    return {cfl(s), grid, std::move(m), std::move(killing)};
}

double sfl_eigenvalue(const Grid& grid, int k) {
    const int n = grid.n_interior();
    const double t = std::sin(0.5 * k * M_PI / (n + 1));
    return 4.0 / (grid.h() * grid.h()) * t * t;
}

Eigen::VectorXd sfl_eigenvector(const Grid& grid, int k) {
    const int n = grid.n_interior();
    Eigen::VectorXd v(n);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int i = 1; i <= n; ++i) v[i - 1] = norm * std::sin(i * k * M_PI / (n + 1));
    return v;
}

OperatorMatrix build_sfl(const Grid& grid, double s) {
    if (!(s > 0 && s <= 1)) throw std::invalid_argument("build_sfl: s must lie in (0,1]");
    const int n = grid.n_interior();

    Eigen::MatrixXd v(n, n);
    Eigen::VectorXd lam(n);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int k = 1; k <= n; ++k) {
        lam[k - 1] = std::pow(sfl_eigenvalue(grid, k), s);
        for (int i = 1; i <= n; ++i) v(i - 1, k - 1) = norm * std::sin(i * k * M_PI / (n + 1));
    }
    Eigen::MatrixXd m = v * lam.asDiagonal() * v.transpose();
    m = 0.5 * (m + m.transpose()).eval();

    return {sfl(s), grid, std::move(m), {}};
}

Eigen::MatrixXd dirichlet_laplacian(const Grid& grid) {
    const int n = grid.n_interior();
    const double ih2 = 1.0 / (grid.h() * grid.h());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = 2 * ih2;
        if (i > 0) a(i, i - 1) = -ih2;
        if (i + 1 < n) a(i, i + 1) = -ih2;
    }
    return a;
}

namespace {

Eigen::MatrixXd symmetric_power(const Eigen::MatrixXd& base, double p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(base);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("symmetric_power: eigendecomposition failed");
    Eigen::VectorXd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) {
        if (!(lam[i] > 0))
            throw std::runtime_error("symmetric_power: base matrix not positive definite");
        lam[i] = std::pow(lam[i], p);
    }
    Eigen::MatrixXd m = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (m + m.transpose()).eval();
}

}  // namespace

OperatorMatrix build_operator(const OperatorSpec& spec, const Grid& grid) {
    switch (spec.kind) {
        case OperatorKind::Rfl:
            return build_rfl(grid, spec.s);
        case OperatorKind::Sfl:
            return build_sfl(grid, spec.s);
        case OperatorKind::Cfl:
            return build_cfl(grid, spec.s);
        case OperatorKind::RflSum: {
            OperatorMatrix a = build_rfl(grid, spec.s);
            OperatorMatrix b = build_rfl(grid, spec.s2);
            return {spec, grid, a.entries + b.entries, {}};
        }
        case OperatorKind::SpectralOfRfl: {
            if (spec.s == 1.0) return {spec, grid, build_sfl(grid, spec.s2).entries, {}};
            OperatorMatrix base = build_rfl(grid, spec.s);
            return {spec, grid, symmetric_power(base.entries, spec.s2), {}};
        }
        case OperatorKind::ComposedRfl: {
            OperatorMatrix base = build_rfl(grid, spec.s / spec.k);
            Eigen::MatrixXd m = base.entries;
            for (int i = 1; i < spec.k; ++i) m = (m * base.entries).eval();
            m = 0.5 * (m + m.transpose()).eval();
            return {spec, grid, std::move(m), {}};
        }
    }
    throw std::invalid_argument("build_operator: unknown kind");
}

}  // namespace fraclap
