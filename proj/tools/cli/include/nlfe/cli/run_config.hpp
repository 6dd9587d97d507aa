#pragma once

#include "nlfe/oracles.hpp"
#include "nlfe/problem.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace nlfe::cli {

/// Everything a run needs, after flags and the optional --config file are merged.
struct RunConfig {
    std::string command;                  ///< solve | certify | picard | study | interp-check
    std::string problem = "paradise";     ///< paradise | section5 | cusp | custom
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> gamma;

    std::optional<std::string> manufactured;  ///< oracle used as manufactured target
    std::optional<std::string> oracle;        ///< oracle compared against

    std::size_t n = 64;
    std::size_t nmin = 16;
    std::size_t nmax = 4096;
    std::size_t fit_min_n = 16;
    std::size_t samples = 4097;           ///< study error samples
    std::size_t norm_samples = 513;       ///< Hölder-norm samples (certify, interp-check)
    std::optional<int> smoothness;

    double tol = 1e-12;
    std::size_t max_iter = 1000;
    std::optional<int> depth;             ///< picard: exact recursion depth
    double t = 0.5;

    std::optional<double> norm_phi;
    std::optional<double> norm_phi1;
    std::optional<double> norm_phi2;

    std::string phi_file;
    std::string phi1_file;
    std::string phi2_file;
    std::string source_file;

    std::size_t trials = 50;
    std::uint64_t seed = 12345;

    std::string output_csv;
    std::string plot;
    bool csv_timings = false;
    bool analytic_norms = false;          ///< certify: use closed-form family norms
};

/// key=value lines; blank lines and '#' comments ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Overwrites fields named by `entries` (keys are flag names without the dashes,
/// e.g. "alpha", "fit-min-n"). Unknown keys or bad values raise ValidationError.
void apply_config(RunConfig& config, const std::map<std::string, std::string>& entries);

struct ProblemSetup {
    ProblemSpec problem;
    std::optional<FunctionHandle> exact;
    int smoothness = 0;
    /// Analytic norms when the family has them in closed form.
    NormOverrides analytic_norms;
};

/// Builds the problem, its exact solution (if any) and the family defaults
/// for α, β, γ. Throws ValidationError for inadmissible parameters.
ProblemSetup build_problem(const RunConfig& config);

} // namespace nlfe::cli
