#include "fraclap/martin.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclap {

MartinKernel martin_kernel(const GreenMatrix& G) {
    const Grid& g = G.grid;
    const int n = g.n_interior();
    const double gamma = G.spec.gamma;
    const GridFunction d = delta(g);

    Eigen::VectorXd left(n), right(n), ls(n), rs(n);
    Eigen::VectorXd ratio(n);
    int bad = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i)
            ratio[i] = G.kernel(i, j) / std::pow(d.values[i], gamma);
        const GridFunction col(g, ratio);
        const BoundaryExtrapolation el = extrapolate_to_boundary(col, Side::Left);
        const BoundaryExtrapolation er = extrapolate_to_boundary(col, Side::Right);
        left[j] = el.value;
        right[j] = er.value;
        ls[j] = el.spread;
        rs[j] = er.spread;
        if (el.spread > 0.5) ++bad;
        if (er.spread > 0.5) ++bad;
    }
    if (bad > 0.1 * 2 * n)
        throw std::runtime_error("martin_kernel: unresolved boundary layer, refine the grid");

    return {G.spec, g, GridFunction(g, std::move(left)), GridFunction(g, std::move(right)),
            std::move(ls), std::move(rs)};
}

GridFunction u_star(const MartinKernel& M) {
    return GridFunction(M.grid, M.left.values + M.right.values);
}

GridFunction concentration_sequence(const Grid& grid, double gamma, int j, bool exact_form) {
    if (!(2.0 / j < grid.half_width()))
        throw std::invalid_argument("concentration_sequence: strip exceeds the half width");
    const GridFunction d = delta(grid);
    const double lo = 1.0 / j, hi = 2.0 / j;

    int per_side = 0;
    for (int i = 0; i < grid.n_interior(); ++i)
        if (grid.node(i + 1) < grid.midpoint() && d.values[i] > lo && d.values[i] < hi)
            ++per_side;
    if (per_side < 2)
        throw std::invalid_argument("concentration_sequence: strip unresolved at this grid");

    const double strip_measure = 2.0 / j;  // both one-sided strips of width 1/j
    const double amp = std::pow(0.5 * j, 1.0 + gamma);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(grid.n_interior());
    for (int i = 0; i < grid.n_interior(); ++i) {
        if (!(d.values[i] > lo && d.values[i] < hi)) continue;
        f[i] = exact_form ? 2.0 / (strip_measure * std::pow(d.values[i], gamma)) : amp;
    }
    return GridFunction(grid, std::move(f));
}

MartinLimitResult martin_limit(const GreenMatrix& G, const std::vector<int>& j_list) {
    if (j_list.empty()) throw std::invalid_argument("martin_limit: empty j list");
    const Grid& g = G.grid;
    const GridFunction d = delta(g);
    const double compact = 0.25 * g.half_width();

    MartinLimitResult res;
    res.j_list = j_list;
    for (int j : j_list)
        res.iterates.push_back(solve(G, concentration_sequence(g, G.spec.gamma, j, true)));

    for (size_t k = 0; k + 1 < res.iterates.size(); ++k) {
        double diff = 0;
        for (int i = 0; i < g.n_interior(); ++i)
            if (d.values[i] > compact)
                diff = std::max(diff,
                                std::abs(res.iterates[k + 1].values[i] - res.iterates[k].values[i]));
        res.cauchy.push_back(diff);
    }

    const GridFunction ustar = u_star(martin_kernel(G));
    const GridFunction& last = res.iterates.back();
    double rel = 0;
    for (int i = 0; i < g.n_interior(); ++i)
        if (d.values[i] > compact)
            rel = std::max(rel, std::abs(last.values[i] - ustar.values[i]) /
                                    std::abs(ustar.values[i]));
    res.rel_diff_to_u_star = rel;
    return res;
}

GridFunction martin_solve(const MartinKernel& M, double h_left, double h_right) {
    if (!std::isfinite(h_left) || !std::isfinite(h_right))
        throw std::invalid_argument("martin_solve: boundary data must be finite");
    return GridFunction(M.grid, h_left * M.left.values + h_right * M.right.values);
}

TraceReport check_martin_trace(const GridFunction& u, const GridFunction& ustar,
                               double h_left, double h_right, std::vector<double> etas) {
    const Grid& g = u.grid;
    if (ustar.grid.n_interior() != g.n_interior())
        throw std::invalid_argument("check_martin_trace: grid mismatch");
    const GridFunction d = delta(g);

    Eigen::VectorXd ratio(g.n_interior());
    for (int i = 0; i < g.n_interior(); ++i) ratio[i] = u.values[i] / ustar.values[i];
    const GridFunction r(g, ratio);

    TraceReport rep;
    rep.left_limit = extrapolate_to_boundary(r, Side::Left).value;
    rep.right_limit = extrapolate_to_boundary(r, Side::Right).value;
    rep.expected_const = h_left + h_right;
    rep.expected_linear = h_left * g.a() + h_right * g.b();
    rep.etas = etas;

    for (double eta : etas) {
        double acc1 = 0, accx = 0;
        for (int i = 0; i < g.n_interior(); ++i) {
            if (d.values[i] >= eta) continue;
            acc1 += ratio[i] * g.h();
            accx += ratio[i] * g.node(i + 1) * g.h();
        }
        rep.averaged_const.push_back(acc1 / eta);
        rep.averaged_linear.push_back(accx / eta);
    }
    return rep;
}

}  // namespace fraclap
