#pragma once

#include "nlfe/function.hpp"
#include "nlfe/grid_interp.hpp"
#include "nlfe/oracles.hpp"
#include "nlfe/problem.hpp"
#include "nlfe/svg_plot.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nlfe {

struct StudyRung {
    std::size_t n = 0;
    double h = 0.0;
    double sup_error = 0.0;
    double runtime_seconds = 0.0;
};

struct OrderFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::size_t points_used = 0;
    std::size_t points_excluded = 0;  ///< nonpositive or non-finite errors
};

/// Ordinary least squares of log(error) on log(h). Nonpositive errors are
/// dropped; fewer than two survivors raise FitError.
OrderFit fit_order(std::span<const std::pair<double, double>> points);

struct ConvergenceReport {
    std::string problem_label;
    double gamma = 1.0;
    std::vector<StudyRung> ladder;
    double fitted_order = 0.0;
    double fit_residual = 0.0;
    double theory_order = 0.0;         ///< smoothness + γ
    std::size_t fit_points = 0;
    std::vector<std::string> notes;
    std::optional<std::string> failure;  ///< set when a rung failed; ladder is partial
};

struct StudyOptions {
    /// Uniform error samples j/(m-1).
    std::size_t error_samples = 4097;
    /// Extra samples at fractions 1/(q+1)..q/(q+1) of every mesh interval.
    std::size_t per_interval_samples = 7;
    /// Rungs with N below this are reported but left out of the fit.
    std::size_t fit_min_n = 16;
    /// k in the predicted order k + γ.
    int smoothness = 0;
    /// Solve rungs concurrently.
    bool parallel = false;
};

/// N = nmin, 2·nmin, ..., <= nmax.
std::vector<std::size_t> doubling_ladder(std::size_t nmin, std::size_t nmax);

/// Sampled ||exact - f_h||_∞ over the study's error sample set for f_h's grid.
double sampled_sup_error(const PiecewiseLinear& approx, const FunctionHandle& exact,
                         const StudyOptions& options = {});

ConvergenceReport run_study(const ProblemSpec& p, const FunctionHandle& exact,
                            std::span<const std::size_t> ladder, const StudyOptions& options = {});
ConvergenceReport run_study(const ManufacturedProblem& mp, std::span<const std::size_t> ladder,
                            const StudyOptions& options = {});

/// CSV "N,h,error" (plus ",runtime" when include_runtime), 17 significant digits.
void write_report_csv(std::ostream& os, const ConvergenceReport& r, bool include_runtime = false);
/// One line: fitted_order, theory_order, fit_residual (+ label and notes on later lines).
void write_summary(std::ostream& os, const ConvergenceReport& r);

/// Log-log error plot with a reference line of slope theory_order.
PlotSpec convergence_plot(const ConvergenceReport& r);

} // namespace nlfe
