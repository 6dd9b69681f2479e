#pragma once

#include "fraclap/boundary.hpp"
#include "fraclap/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fraclap::cli {

struct ExperimentConfig {
    std::string experiment;  // solve | sweep-beta | martin-limit | verify-kernel |
                             // eigen | harmonic-checks | oracle | traces
    OperatorSpec spec = rfl(0.5);
    double a = -1.0;
    double b = 1.0;
    int n = 512;
    std::vector<double> betas;            // empty: per-operator defaults
    std::optional<double> cap_level;      // empty: bound within the excluded layer
    std::vector<int> js = {8, 16, 32, 64};
    std::vector<double> etas = {0.2, 0.1, 0.05, 0.025};
    double quad_tol = 1e-6;
    int fit_exclude = -1;        // <0: per-regime default
    double fit_delta_max = 0.0;  // <=0: per-regime default
    unsigned long long seed = 12345;
    std::string output_dir = "out";

    void validate() const;  // throws ConfigError
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CheckResult {
    std::string name;
    std::string paper_anchor;  // claim tag the check is keyed to
    double value = 0;
    std::optional<double> expected;
    std::optional<double> tolerance;
    std::string status;  // pass | fail | recorded
};

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 check failure, 2 config error, 3 numerical failure
    std::vector<CheckResult> checks;
    std::vector<std::string> files_written;
    double wall_seconds = 0;
};

/// Runs the experiment, writes the CSVs and the run summary JSON into
/// output_dir, and returns the per-check outcomes.
RunResult run(const ExperimentConfig& config);

/// Fit window for the exponent sweep, chosen by the predicted regime of the
/// data: the logarithmic row gets a long lever arm, the singular-dominated
/// rows an inner window past the scheme's boundary layer, the remaining rows
/// a near-asymptotic window.
FitWindow sweep_window(double beta, double gamma, double s, const Grid& grid);

/// Six admissible exponents spanning every reachable row of the rate table
/// for this operator.
std::vector<double> default_betas(const OperatorSpec& spec);

/// Cap level for delta^beta data (beta < 0) that binds only within the
/// excluded boundary layer of the grid.
double default_cap(double beta, const Grid& grid);

/// Shortest round-trip decimal formatting used for all CSV output.
std::string format_double(double v);

}  // namespace fraclap::cli
