#include "fraclap/boundary.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fraclap {

namespace {
constexpr double kTieTol = 1e-12;
}

AlphaPrediction predict_alpha(double beta, double gamma, double s) {
    if (!(gamma > 0 && gamma <= 1) || !(s > 0 && s <= 1))
        throw std::invalid_argument("predict_alpha: gamma, s must lie in (0,1]");
    if (!admissible_beta(beta, gamma)) return {false, std::nullopt, false};
    const double crit = gamma - 2 * s;
    if (std::abs(beta - crit) < kTieTol) return {true, gamma, true};
    if (beta < crit) return {true, beta + 2 * s, false};
    return {true, gamma, false};
}

AlphaPrediction predict_u_star_rate(double gamma, double s) {
    if (!(gamma > 0 && gamma <= 1) || !(s > 0 && s <= 1))
        throw std::invalid_argument("predict_u_star_rate: gamma, s must lie in (0,1]");
    const bool log_flag = std::abs(gamma - (s - 0.5)) < kTieTol;
    return {true, std::min(2 * s - gamma - 1, gamma), log_flag};
}

double predict_theta(double beta, double gamma, double s, double eta, double delta) {
    if (!admissible_beta(beta, gamma))
        throw std::invalid_argument("predict_theta: inadmissible beta");
    if (!(delta > 0 && delta < 0.5 * eta))
        throw std::invalid_argument("predict_theta: requires 0 < delta < eta/2");
    const double half = s - 0.5;
    if (gamma < half - kTieTol) return std::pow(delta, beta + 2 * gamma + 1);
    if (std::abs(gamma - half) < kTieTol) {
        return std::pow(delta, beta + 2 * s) * std::abs(std::log(delta)) +
               std::pow(eta, beta + gamma + 1) * std::abs(std::log(eta)) * std::pow(delta, gamma);
    }
    const double crit = gamma - 2 * s;
    if (std::abs(beta - crit) < kTieTol)
        return std::pow(delta, beta + 2 * s) * std::abs(std::log(delta / eta));
    if (beta < crit) return 0.0;
    return std::pow(eta, beta + 2 * s - gamma) * std::pow(delta, gamma);
}

double sharp_boundary_profile(double beta, double gamma, double s, double eta, double delta) {
    return std::pow(delta, beta + 2 * s) +
           std::pow(eta, beta + gamma + 1) * std::pow(delta, gamma) +
           predict_theta(beta, gamma, s, eta, delta);
}

namespace {

struct LinFit {
    double slope;
    double intercept;
    double ss_res;  // residual against the supplied targets
};

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - (slope * x[i] + intercept);
        ss += r * r;
    }
    return {slope, intercept, ss};
}

// Window nodes for one side: (delta, value) pairs ordered outward.
void collect_side(const GridFunction& u, bool left, int exclude, double delta_max,
                  std::vector<double>& ds, std::vector<double>& vs) {
    const Grid& g = u.grid;
    const int n = g.n_interior();
    for (int k = exclude + 1; k <= n; ++k) {
        const int i = left ? k : n + 1 - k;
        const double x = g.node(i);
        const double d = left ? x - g.a() : g.b() - x;
        if (d > delta_max) break;
        ds.push_back(d);
        vs.push_back(u.values[i - 1]);
    }
}

}  // namespace

RateFit fit_boundary_rate(const GridFunction& u, Side side, const FitWindow& window) {
    const Grid& g = u.grid;
    const double delta_max =
        window.delta_max > 0 ? window.delta_max : 0.25 * g.half_width();

    std::vector<double> ds, vs;
    if (side == Side::Left || side == Side::Combined)
        collect_side(u, true, window.exclude_nearest, delta_max, ds, vs);
    if (side == Side::Right || side == Side::Combined)
        collect_side(u, false, window.exclude_nearest, delta_max, ds, vs);

    if (ds.size() < 6) throw std::invalid_argument("fit_boundary_rate: window too small");

    std::vector<double> lx(ds.size()), ly(ds.size());
    double lo = ds[0], hi = ds[0];
    for (size_t i = 0; i < ds.size(); ++i) {
        if (!(vs[i] > 0))
            throw std::invalid_argument("fit_boundary_rate: non-positive value in window");
        lx[i] = std::log(ds[i]);
        ly[i] = std::log(vs[i]);
        lo = std::min(lo, ds[i]);
        hi = std::max(hi, ds[i]);
    }

    double mean = 0;
    for (double y : ly) mean += y;
    mean /= ly.size();
    double ss_tot = 0;
    for (double y : ly) ss_tot += (y - mean) * (y - mean);
    ss_tot = std::max(ss_tot, 1e-300);

    const LinFit pure = least_squares(lx, ly);

    // same data with the fixed multiplicative weight (1 + |ln delta|) removed
    std::vector<double> ly2(ly.size());
    for (size_t i = 0; i < ly.size(); ++i)
        ly2[i] = ly[i] - std::log1p(std::abs(lx[i]));
    const LinFit logm = least_squares(lx, ly2);
    // residual of the log model measured against the original ln u
    double ss_log = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        const double pred = logm.slope * lx[i] + logm.intercept + std::log1p(std::abs(lx[i]));
        ss_log += (ly[i] - pred) * (ly[i] - pred);
    }

    const double r2_pure = 1.0 - pure.ss_res / ss_tot;
    const double r2_log = 1.0 - ss_log / ss_tot;

    RateFit fit;
    fit.side = side;
    fit.window_lo = lo;
    fit.window_hi = hi;
    if (r2_log > r2_pure + 1e-3) {
        fit.alpha = logm.slope;
        fit.log_correction = true;
        fit.r_squared = r2_log;
    } else {
        fit.alpha = pure.slope;
        fit.log_correction = false;
        fit.r_squared = r2_pure;
    }
    return fit;
}

BoundaryExtrapolation extrapolate_to_boundary(const GridFunction& v, Side side) {
    if (side == Side::Combined)
        throw std::invalid_argument("extrapolate_to_boundary: pick one endpoint");
    const Grid& g = v.grid;
    const int n = g.n_interior();
    if (n < 6) throw std::invalid_argument("extrapolate_to_boundary: grid too coarse");

    // nodes 2,3,4 from the endpoint; the nearest node sits in the scheme's
    // boundary layer and is skipped
    double dv[3], rv[3];
    for (int k = 0; k < 3; ++k) {
        const int offset = k + 2;
        const int i = side == Side::Left ? offset : n + 1 - offset;
        dv[k] = offset * g.h();
        rv[k] = v.values[i - 1];
    }
    // line through the two nearest, and least-squares line through all three
    const double two_pt = rv[0] - dv[0] * (rv[1] - rv[0]) / (dv[1] - dv[0]);
    std::vector<double> xs(dv, dv + 3), ys(rv, rv + 3);
    const LinFit l = least_squares(xs, ys);
    const double three_pt = l.intercept;

    const double scale = std::max(std::abs(two_pt), std::abs(three_pt));
    const double spread = scale > 0 ? std::abs(three_pt - two_pt) / scale : 0.0;
    return {three_pt, spread};
}

double d_gamma(const GridFunction& u, double gamma, Side side) {
    const Grid& g = u.grid;
    const GridFunction d = delta(g);
    Eigen::VectorXd ratio(g.n_interior());
    for (int i = 0; i < g.n_interior(); ++i)
        ratio[i] = u.values[i] / std::pow(d.values[i], gamma);
    const BoundaryExtrapolation e = extrapolate_to_boundary(GridFunction(g, ratio), side);
    if (e.spread > 0.5)
        throw std::runtime_error("d_gamma: unresolved boundary layer, refine the grid");
    return e.value;
}

double averaged_trace(const GridFunction& u, double gamma, double s, double eta) {
    const Grid& g = u.grid;
    if (!(eta >= 3 * g.h()))
        throw std::invalid_argument("averaged_trace: strip thinner than 3h");
    const GridFunction d = delta(g);

    const double half = s - 0.5;
    double acc = 0;
    int count = 0;
    for (int i = 0; i < g.n_interior(); ++i) {
        if (d.values[i] >= eta) continue;
        ++count;
        const double w = (gamma > half + kTieTol) ? std::pow(d.values[i], 2 * s - gamma - 1)
                                                  : std::pow(d.values[i], gamma);
        acc += std::abs(u.values[i]) / w * g.h();
    }
    if (count == 0) throw std::invalid_argument("averaged_trace: empty strip");

    if (std::abs(gamma - half) < kTieTol) return acc / (eta * std::abs(std::log(eta)));
    return acc / eta;
}

}  // namespace fraclap
