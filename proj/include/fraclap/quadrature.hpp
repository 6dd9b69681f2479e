#pragma once

#include <functional>
#include <vector>

namespace fraclap::quad {

struct Options {
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    int max_intervals = 20000;       // adaptive bisection budget per piece
    int max_graded_panels = 64;      // geometric panels toward a singular endpoint
    double endpoint_floor = 1e-8;    // relative stop distance at a singular endpoint
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// The integrand must be finite on the open interval; endpoints are never
/// evaluated. Throws std::runtime_error if the tolerance cannot be met.
double integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Integration over [a, b] for integrands with integrable power singularities.
///
/// `singular_points` mark locations (endpoints or interior) where f may blow
/// up with an exponent > -1; these are handled by geometrically graded panels
/// (ratio 1/2) with a power-law estimate for the remainder past the panel
/// floor. `kinks` are finite but non-smooth points used as forced breakpoints.
double integrate_singular(const Integrand& f, double a, double b,
                          std::vector<double> singular_points,
                          std::vector<double> kinks, const Options& opt = {});

}  // namespace fraclap::quad
