#include "fraclap/core.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclap {

Grid::Grid(double a, double b, int n_interior) : a_(a), b_(b), n_(n_interior) {
    if (!(b > a)) throw std::invalid_argument("Grid: requires b > a");
    if (n_interior < 1) throw std::invalid_argument("Grid: requires n_interior >= 1");
    h_ = (b - a) / (n_interior + 1);
}

Eigen::VectorXd Grid::nodes() const {
    Eigen::VectorXd x(n_);
    for (int i = 1; i <= n_; ++i) x[i - 1] = node(i);
    return x;
}

GridFunction::GridFunction(const Grid& g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
    if (values.size() != g.n_interior())
        throw std::invalid_argument("GridFunction: length does not match grid");
    if (!values.allFinite())
        throw std::invalid_argument("GridFunction: non-finite values");
}

GridFunction delta(const Grid& grid) {
    Eigen::VectorXd d(grid.n_interior());
    for (int i = 1; i <= grid.n_interior(); ++i) {
        const double x = grid.node(i);
        d[i - 1] = std::min(x - grid.a(), grid.b() - x);
    }
    return GridFunction(grid, std::move(d));
}

GridFunction power_data(const Grid& grid, double beta, std::optional<double> cap) {
    if (cap && !(*cap > 0)) throw std::invalid_argument("power_data: cap must be positive");
    GridFunction d = delta(grid);
    Eigen::VectorXd v(grid.n_interior());
    for (int i = 0; i < grid.n_interior(); ++i) {
        double val = std::pow(d.values[i], beta);
        if (cap) val = std::min(val, *cap);
        v[i] = val;
    }
    return GridFunction(grid, std::move(v));
}

namespace {

void validate_params(OperatorKind kind, double p1, double p2, int k) {
    switch (kind) {
        case OperatorKind::Rfl:
            if (!(p1 > 0 && p1 < 1)) throw std::invalid_argument("rfl: s must lie in (0,1)");
            break;
        case OperatorKind::Sfl:
            // s = 1 is the classical Dirichlet Laplacian and is admitted.
            if (!(p1 > 0 && p1 <= 1)) throw std::invalid_argument("sfl: s must lie in (0,1]");
            break;
        case OperatorKind::Cfl:
            if (!(p1 > 0.5 && p1 < 1)) throw std::invalid_argument("cfl: s must lie in (1/2,1)");
            break;
        case OperatorKind::RflSum:
            // s1 = 1 needs dimension >= 3; unreachable on an interval.
            if (!(p2 > 0 && p2 < p1 && p1 < 1))
                throw std::invalid_argument("rfl_sum: requires 0 < s2 < s1 < 1");
            break;
        case OperatorKind::SpectralOfRfl:
            if (!(p1 > 0 && p1 <= 1 && p2 > 0 && p2 <= 1))
                throw std::invalid_argument("spectral_of_rfl: sigma1, sigma2 must lie in (0,1]");
            break;
        case OperatorKind::ComposedRfl:
            if (k < 2) throw std::invalid_argument("composed_rfl: k must be >= 2");
            if (!(p1 / k > 0 && p1 / k < 1))
                throw std::invalid_argument("composed_rfl: s_total/k must lie in (0,1)");
            break;
    }
}

}  // namespace

double gamma_of(OperatorKind kind, double p1, double p2, int k) {
    validate_params(kind, p1, p2, k);
    switch (kind) {
        case OperatorKind::Rfl: return p1;
        case OperatorKind::Sfl: return 1.0;
        case OperatorKind::Cfl: return 2.0 * p1 - 1.0;
        case OperatorKind::RflSum: return p1;          // dominant term
        case OperatorKind::SpectralOfRfl: return p1;   // gamma = sigma1, effective s = sigma1*sigma2
        case OperatorKind::ComposedRfl: return p1 / k; // conjectural
    }
    throw std::invalid_argument("gamma_of: unknown kind");
}

std::string OperatorSpec::name() const {
    auto num = [](double v) {
        std::string t = std::to_string(v);
        t.erase(t.find_last_not_of('0') + 1);
        if (!t.empty() && t.back() == '.') t.pop_back();
        return t;
    };
    switch (kind) {
        case OperatorKind::Rfl: return "rfl(s=" + num(s) + ")";
        case OperatorKind::Sfl: return "sfl(s=" + num(s) + ")";
        case OperatorKind::Cfl: return "cfl(s=" + num(s) + ")";
        case OperatorKind::RflSum: return "rflsum(s1=" + num(s) + ",s2=" + num(s2) + ")";
        case OperatorKind::SpectralOfRfl:
            return "spectral-of-rfl(sigma1=" + num(s) + ",sigma2=" + num(s2) + ")";
        case OperatorKind::ComposedRfl:
            return "composed-rfl(s=" + num(s) + ",k=" + std::to_string(k) + ")";
    }
    return "unknown";
}

OperatorSpec rfl(double s) {
    return {OperatorKind::Rfl, s, 0, 0, gamma_of(OperatorKind::Rfl, s), s, false};
}

OperatorSpec sfl(double s) {
    return {OperatorKind::Sfl, s, 0, 0, gamma_of(OperatorKind::Sfl, s), s, false};
}

OperatorSpec cfl(double s) {
    return {OperatorKind::Cfl, s, 0, 0, gamma_of(OperatorKind::Cfl, s), s, false};
}

OperatorSpec rfl_sum(double s1, double s2) {
    return {OperatorKind::RflSum, s1, s2, 0, gamma_of(OperatorKind::RflSum, s1, s2), s1, false};
}

OperatorSpec spectral_of_rfl(double sigma1, double sigma2) {
    return {OperatorKind::SpectralOfRfl, sigma1, sigma2, 0,
            gamma_of(OperatorKind::SpectralOfRfl, sigma1, sigma2), sigma1 * sigma2, false};
}

OperatorSpec composed_rfl(double s_total, int k) {
    return {OperatorKind::ComposedRfl, s_total, 0, k,
            gamma_of(OperatorKind::ComposedRfl, s_total, 0, k), s_total, true};
}

double rfl_constant(double s) {
    if (!(s > 0 && s < 1)) throw std::invalid_argument("rfl_constant: s must lie in (0,1)");
    return std::pow(4.0, s) * std::tgamma(0.5 + s) * s /
           (std::sqrt(M_PI) * std::tgamma(1.0 - s));
}

}  // namespace fraclap
