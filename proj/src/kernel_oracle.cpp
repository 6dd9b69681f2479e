#include "fraclap/kernel_oracle.hpp"

#include "fraclap/boundary.hpp"
#include "fraclap/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fraclap::oracle {

double model_kernel(double x, double y, const ModelKernelParams& p) {
    const double r = std::abs(x - y);
    if (r == 0) throw std::invalid_argument("model_kernel: singular point x = y");
    const double sat = std::min(p.dist(x) * p.dist(y) / (r * r), 1.0);
    return std::pow(r, 2 * p.s - 1) * std::pow(sat, p.gamma);
}

namespace {

// Kink candidates of y -> model_kernel(x,y): the midpoint (delta switches
// side) and the saturation points where delta(x)delta(y) = |x-y|^2. The
// saturation points are solved on the linear piece of delta containing x;
// stray candidates are harmless, the quadrature only uses them as breakpoints.
std::vector<double> kernel_kinks(double x, const ModelKernelParams& p) {
    std::vector<double> kinks{0.5 * (p.a + p.b)};
    const double dx = p.dist(x);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);  // golden section of the quadratic
    kinks.push_back(x - dx * phi);
    kinks.push_back(x + dx * phi);
    kinks.push_back(x - dx * (phi + 1.0));
    kinks.push_back(x + dx * (phi + 1.0));
    return kinks;
}

}  // namespace

double quad_green_apply(const ModelKernelParams& p, double beta, std::optional<double> eta,
                        double x, const quad::Options& opt) {
    if (!admissible_beta(beta, p.gamma))
        throw std::invalid_argument("quad_green_apply: inadmissible beta");
    if (!(x > p.a && x < p.b))
        throw std::invalid_argument("quad_green_apply: x outside the interval");
    if (eta && !(*eta > 0)) throw std::invalid_argument("quad_green_apply: eta must be positive");

    auto f = [&](double y) { return model_kernel(x, y, p) * std::pow(p.dist(y), beta); };

    std::vector<std::pair<double, double>> pieces;
    if (!eta || *eta >= p.half_width()) {
        pieces.push_back({p.a, p.b});
    } else {
        pieces.push_back({p.a, p.a + *eta});
        pieces.push_back({p.b - *eta, p.b});
    }

    const std::vector<double> kinks = kernel_kinks(x, p);
    double total = 0;
    for (auto [lo, hi] : pieces) {
        std::vector<double> singular{lo, hi};
        if (x > lo && x < hi) singular.push_back(x);
        total += quad::integrate_singular(f, lo, hi, singular, kinks, opt);
    }
    return total;
}

OracleProfileReport oracle_vs_profile(const ModelKernelParams& p, double beta, double eta,
                                      const quad::Options& opt) {
    if (!(eta > 0 && eta < 0.5 * p.half_width()))
        throw std::invalid_argument("oracle_vs_profile: eta must be below the quarter width");
    if (!admissible_beta(beta, p.gamma))
        throw std::invalid_argument("oracle_vs_profile: inadmissible beta");

    OracleProfileReport rep;
    rep.formal_model = p.formal_model();

    // log-spaced boundary samples with delta < eta/2
    const int nb = 14;
    const double d_hi = 0.45 * eta;
    const double d_lo = eta / 150.0;
    const double ratio = std::pow(d_lo / d_hi, 1.0 / (nb - 1));
    double d = d_hi;
    for (int j = 0; j < nb; ++j, d *= ratio) {
        const double value = quad_green_apply(p, beta, eta, p.a + d, opt);
        const double prof = sharp_boundary_profile(beta, p.gamma, p.s, eta, d);
        const double q = value / prof;
        rep.sample_delta.push_back(d);
        rep.sample_value.push_back(value);
        rep.sample_profile.push_back(prof);
        if (j == 0) {
            rep.c_low = rep.c_high = q;
        } else {
            rep.c_low = std::min(rep.c_low, q);
            rep.c_high = std::max(rep.c_high, q);
        }
    }
    rep.n_boundary_samples = nb;

    // interior bound on {delta > eta/2}; for gamma < s-1/2 also the weighted form
    const bool small_gamma = p.gamma < p.s - 0.5 - 1e-12;
    for (double mult : {0.6, 0.8, 1.0, 1.5, 2.0, 4.0, 8.0}) {
        const double di = mult * eta;
        if (di >= 0.95 * p.half_width()) break;
        const double value = quad_green_apply(p, beta, eta, p.a + di, opt);
        rep.interior_max = std::max(rep.interior_max, value);
        if (small_gamma) {
            const double bound = std::pow(eta, beta + p.gamma + 1) * std::pow(di, p.gamma);
            rep.interior_weighted_max = std::max(rep.interior_weighted_max, value / bound);
        }
    }
    return rep;
}

RflSplit quad_rfl_apply_split(const std::function<double(double)>& u, double a, double b,
                              double x, double s, const quad::Options& opt) {
    if (!(x > a && x < b)) throw std::invalid_argument("quad_rfl_apply: x must be interior");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("quad_rfl_apply: s must lie in (0,1)");

    const double c = rfl_constant(s);
    const double ux = u(x);
    const double dl = x - a;
    const double dr = b - x;
    const double r = 0.5 * std::min(dl, dr);
    const double expo = -1.0 - 2.0 * s;

    // symmetric pairing over (0, r) cancels the principal value
    auto paired = [&](double t) {
        return (2.0 * ux - u(x + t) - u(x - t)) * std::pow(t, expo);
    };
    double interior = quad::integrate_singular(paired, 0.0, r, {0.0}, {}, opt);

    // one-sided remainders up to the boundary on each side
    auto right = [&](double t) { return (ux - u(x + t)) * std::pow(t, expo); };
    auto left = [&](double t) { return (ux - u(x - t)) * std::pow(t, expo); };
    interior += quad::integrate_singular(right, r, dr, {dr}, {}, opt);
    interior += quad::integrate_singular(left, r, dl, {dl}, {}, opt);

    const double tail = ux * (std::pow(dr, -2 * s) + std::pow(dl, -2 * s)) / (2 * s);

    RflSplit out;
    out.interior = c * interior;
    out.exterior_tail = c * tail;
    out.value = out.interior + out.exterior_tail;
    return out;
}

double quad_rfl_apply(const std::function<double(double)>& u, double a, double b, double x,
                      double s, const quad::Options& opt) {
    return quad_rfl_apply_split(u, a, b, x, s, opt).value;
}

std::function<double(double)> getoor_profile(double s) {
    return [s](double y) {
        const double t = 1.0 - y * y;
        return t > 0 ? std::pow(t, s) : 0.0;
    };
}

std::function<double(double)> singular_solution_profile(double s) {
    return [s](double y) {
        const double t = 1.0 - y * y;
        return t > 0 ? 2.0 * s * std::pow(t, s - 1.0) : 0.0;
    };
}

std::function<double(double)> smooth_bump() {
    return [](double y) {
        const double t = 1.0 - y * y;
        return t > 0 ? std::exp(-1.0 / t) : 0.0;
    };
}

std::function<double(double)> smooth_bump_derivative() {
    return [](double y) {
        const double t = 1.0 - y * y;
        if (t <= 0) return 0.0;
        return std::exp(-1.0 / t) * (-2.0 * y / (t * t));
    };
}

}  // namespace fraclap::oracle
