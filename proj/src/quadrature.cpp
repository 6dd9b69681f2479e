#include "fraclap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fraclap::quad {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
constexpr double kKronrodWeights[8] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
constexpr double kGaussWeights[4] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate g7k15(const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double f0 = f(mid);
    double k15 = kKronrodWeights[0] * f0;
    double g7 = kGaussWeights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = hw * kKronrodNodes[i];
        const double fs = f(mid - dx) + f(mid + dx);
        k15 += kKronrodWeights[i] * fs;
        if (i % 2 == 0) g7 += kGaussWeights[i / 2] * fs;
    }
    k15 *= hw;
    g7 *= hw;
    return {k15, std::abs(k15 - g7)};
}

// Adaptive bisection on [a, b] against an absolute tolerance.
double adapt(const Integrand& f, double a, double b, double tol_abs, const Options& opt) {
    struct Interval {
        double a, b, value, error;
    };
    PanelEstimate first = g7k15(f, a, b);
    if (!std::isfinite(first.value))
        throw std::runtime_error("quadrature: non-finite integrand value");
    std::vector<Interval> stack{{a, b, first.value, first.error}};
    double total = first.value;
    double total_err = first.error;
    int used = 1;
    while (total_err > tol_abs) {
        // split the worst interval
        auto worst = std::max_element(stack.begin(), stack.end(),
                                      [](const Interval& u, const Interval& v) {
                                          return u.error < v.error;
                                      });
        if (worst == stack.end() || used >= opt.max_intervals)
            throw std::runtime_error("quadrature: tolerance not reached within interval budget");
        Interval iv = *worst;
        stack.erase(worst);
        const double m = 0.5 * (iv.a + iv.b);
        if (!(m > iv.a && m < iv.b)) {
            // interval collapsed to rounding width; accept its estimate
            stack.push_back({iv.a, iv.b, iv.value, 0.0});
            total_err -= iv.error;
            continue;
        }
        PanelEstimate l = g7k15(f, iv.a, m);
        PanelEstimate r = g7k15(f, m, iv.b);
        if (!std::isfinite(l.value) || !std::isfinite(r.value))
            throw std::runtime_error("quadrature: non-finite integrand value");
        total += l.value + r.value - iv.value;
        total_err += l.error + r.error - iv.error;
        stack.push_back({iv.a, m, l.value, l.error});
        stack.push_back({m, iv.b, r.value, r.error});
        used += 2;
    }
    double sum = 0;
    for (const auto& iv : stack) sum += iv.value;
    return sum;
}

// Graded geometric panels from the singular end `sing` toward `far`.
// Assumes an integrable power singularity at `sing`; the remainder past the
// panel floor is estimated from the measured geometric decay of contributions.
// A panel whose adaptive integration stalls (cancellation noise in the
// integrand dominating the requested tolerance) is likewise folded into the
// power-law remainder.
double graded(const Integrand& f, double sing, double far, double tol_abs, const Options& opt) {
    const double len = std::abs(far - sing);
    const double sign = far > sing ? 1.0 : -1.0;
    double acc = 0;
    double prev = 0, prev2 = 0;
    double width_frac = 0.5;  // current panel is [sing + len*w/2, sing + len*w]
    for (int m = 0; m < opt.max_graded_panels; ++m) {
        const double outer = sing + sign * len * (m == 0 ? 1.0 : 2.0 * width_frac);
        const double inner = sing + sign * len * width_frac;
        const double lo = std::min(inner, outer);
        const double hi = std::max(inner, outer);
        double piece;
        try {
            piece = adapt(f, lo, hi, tol_abs * 0.25, opt);
        } catch (const std::runtime_error&) {
            if (m < 2 || prev2 == 0 || prev == 0) throw;
            const double r = std::abs(prev / prev2);
            if (r >= 0.97) throw;
            return acc + prev * (r / (1.0 - r));  // remainder from this panel inward
        }
        acc += piece;
        const bool at_floor = width_frac * 0.5 < opt.endpoint_floor;
        const bool negligible = m >= 4 && std::abs(piece) < tol_abs * 0.25;
        if (at_floor || negligible) {
            // power-law remainder: contributions scale by a fixed ratio per halving
            if (prev != 0 && piece != 0) {
                const double r = std::abs(piece / prev);
                if (r < 0.97) acc += piece * (r / (1.0 - r));
                else if (!negligible)
                    throw std::runtime_error("quadrature: singularity too strong at panel floor");
            }
            return acc;
        }
        prev2 = prev;
        prev = piece;
        width_frac *= 0.5;
    }
    throw std::runtime_error("quadrature: graded panel budget exhausted");
}

}  // namespace

double integrate(const Integrand& f, double a, double b, const Options& opt) {
    if (!(b > a)) return 0.0;
    PanelEstimate rough = g7k15(f, a, b);
    const double scale = std::max(std::abs(rough.value), 1e-300);
    return adapt(f, a, b, std::max(opt.abs_tol, opt.rel_tol * scale), opt);
}

double integrate_singular(const Integrand& f, double a, double b,
                          std::vector<double> singular_points, std::vector<double> kinks,
                          const Options& opt) {
    if (!(b > a)) return 0.0;

    std::vector<double> cuts{a, b};
    auto add = [&](double p) {
        if (p > a && p < b) cuts.push_back(p);
    };
    for (double p : singular_points) add(p);
    for (double p : kinks) add(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double u, double v) { return std::abs(u - v) < 1e-14 * (b - a); }),
               cuts.end());

    auto is_singular = [&](double p) {
        for (double q : singular_points)
            if (std::abs(p - q) < 1e-14 * (b - a)) return true;
        return false;
    };

    // rough scale over the regular interiors of the pieces for tolerance apportioning
    double scale = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        const double pad = 0.25 * (hi - lo);
        scale += std::abs(g7k15(f, lo + pad, hi - pad).value) * 2.0;
    }
    scale = std::max(scale, 1e-300);
    const double tol_piece =
        std::max(opt.abs_tol, opt.rel_tol * scale) / static_cast<double>(cuts.size() - 1);

    double total = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        const bool sl = is_singular(lo);
        const bool sr = is_singular(hi);
        if (sl && sr) {
            const double m = 0.5 * (lo + hi);
            total += graded(f, lo, m, 0.5 * tol_piece, opt);
            total += graded(f, hi, m, 0.5 * tol_piece, opt);
        } else if (sl) {
            total += graded(f, lo, hi, tol_piece, opt);
        } else if (sr) {
            total += graded(f, hi, lo, tol_piece, opt);
        } else {
            total += adapt(f, lo, hi, tol_piece, opt);
        }
    }
    return total;
}

}  // namespace fraclap::quad
