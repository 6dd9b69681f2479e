#include "fraclap/green.hpp"

#include "fraclap/kernel_oracle.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace fraclap {

namespace {

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("green_matrix: operator matrix is singular or indefinite");
    const auto n = m.rows();
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
    return 0.5 * (inv + inv.transpose()).eval();
}

}  // namespace

GreenMatrix green_matrix(const OperatorMatrix& L) {
    const double h = L.grid.h();
    if (L.spec.kind == OperatorKind::ComposedRfl) {
        // kernel of the composition = k-fold product of the base solve operator
        OperatorMatrix base = build_rfl(L.grid, L.spec.s / L.spec.k);
        Eigen::MatrixXd g1 = spd_inverse(base.entries);
        Eigen::MatrixXd g = g1;
        for (int i = 1; i < L.spec.k; ++i) g = (g * g1).eval();
        g = 0.5 * (g + g.transpose()).eval();
        return {L.spec, L.grid, g / h};
    }
    return {L.spec, L.grid, spd_inverse(closed_matrix(L)) / h};
}

GridFunction solve(const GreenMatrix& G, const GridFunction& f) {
    if (f.grid.n_interior() != G.grid.n_interior())
        throw std::invalid_argument("solve: grid mismatch");
    return GridFunction(G.grid, G.kernel * f.values * G.grid.h());
}

GridFunction solve_point_mass(const GreenMatrix& G, int j) {
    if (j < 1 || j > G.grid.n_interior())
        throw std::invalid_argument("solve_point_mass: node index out of range");
    return GridFunction(G.grid, G.kernel.col(j - 1));
}

K2Report check_k2(const GreenMatrix& G) {
    K2Report rep;
    if (G.spec.effective_s >= 0.5) {
        rep.ran = false;
        rep.reason = "model-bound check skipped: 2s < 1 violated on an interval";
        return rep;
    }
    const oracle::ModelKernelParams p{G.spec.effective_s, G.spec.gamma, G.grid.a(), G.grid.b()};
    const int n = G.grid.n_interior();
    bool first = true;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const double q =
                G.kernel(i - 1, j - 1) / oracle::model_kernel(G.grid.node(i), G.grid.node(j), p);
            if (first) {
                rep.c_low = rep.c_high = q;
                first = false;
            } else {
                rep.c_low = std::min(rep.c_low, q);
                rep.c_high = std::max(rep.c_high, q);
            }
        }
    }
    rep.ran = true;
    return rep;
}

double hopf_ratio(const GreenMatrix& G) {
    const GridFunction d = delta(G.grid);
    const double gamma = G.spec.gamma;
    const int n = G.grid.n_interior();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double wi = std::pow(d.values[i], gamma);
        for (int j = 0; j < n; ++j)
            best = std::min(best, G.kernel(i, j) / (wi * std::pow(d.values[j], gamma)));
    }
    return best;
}

Eigenpair first_eigenpair(const OperatorMatrix& L, int max_iterations, double tol) {
    Eigen::LLT<Eigen::MatrixXd> llt(closed_matrix(L));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("first_eigenpair: operator matrix is singular or indefinite");

    const int n = L.grid.n_interior();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    double mu_prev = 0;
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd w = llt.solve(v);
        const double mu = v.dot(w);
        w /= w.norm();
        if (std::abs(mu - mu_prev) <= tol * std::abs(mu)) {
            if (w.sum() < 0) w = -w;
            return {1.0 / mu, GridFunction(L.grid, std::move(w))};
        }
        mu_prev = mu;
        v = std::move(w);
    }
    throw std::runtime_error("first_eigenpair: inverse power iteration did not converge");
}

}  // namespace fraclap
