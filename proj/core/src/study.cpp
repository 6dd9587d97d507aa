#include "nlfe/study.hpp"

#include "nlfe/collocation.hpp"
#include "nlfe/errors.hpp"
#include "nlfe/holder_space.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nlfe {

OrderFit fit_order(std::span<const std::pair<double, double>> points) {
    std::vector<std::pair<double, double>> logs;
    OrderFit fit;
    for (const auto& [h, e] : points) {
        if (!(h > 0.0) || !(e > 0.0) || !std::isfinite(h) || !std::isfinite(e)) {
            ++fit.points_excluded;
            continue;
        }
        logs.emplace_back(std::log(h), std::log(e));
    }
    if (logs.size() < 2)
        throw FitError("order fit needs at least two positive (h, error) points, got " +
                       std::to_string(logs.size()));

    const double count = static_cast<double>(logs.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : logs) {
        mx += x;
        my += y;
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (!(sxx > 0.0)) throw FitError("order fit needs at least two distinct mesh widths");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (const auto& [x, y] : logs) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / count);
    fit.points_used = logs.size();
    return fit;
}

std::vector<std::size_t> doubling_ladder(std::size_t nmin, std::size_t nmax) {
    if (nmin < 2) throw ValidationError("ladder must start at N >= 2");
    if (nmax < nmin) throw ValidationError("ladder nmax is below nmin");
    std::vector<std::size_t> out;
    for (std::size_t n = nmin; n <= nmax; n *= 2) out.push_back(n);
    return out;
}

double sampled_sup_error(const PiecewiseLinear& approx, const FunctionHandle& exact,
                         const StudyOptions& options) {
    double worst = 0.0;
    auto probe = [&](double t) { worst = std::max(worst, std::abs(exact(t) - approx.evaluate(t))); };
    for (double t : uniform_samples(options.error_samples)) probe(t);

    const auto& grid = approx.grid();
    const std::size_t q = options.per_interval_samples;
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double a = grid.node(i);
        const double b = grid.node(i + 1);
        for (std::size_t j = 1; j <= q; ++j) {
            const double theta = static_cast<double>(j) / static_cast<double>(q + 1);
            probe(a + theta * (b - a));
        }
    }
    return worst;
}

namespace {

StudyRung run_rung(const ProblemSpec& p, const FunctionHandle& exact, std::size_t n,
                   const StudyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    CollocationOptions co;
    co.validate_problem = false;
    const auto sol = solve_collocation(p, n, co);
    StudyRung rung;
    rung.n = n;
    rung.h = sol.grid().h();
    rung.sup_error = sampled_sup_error(sol.solution, exact, options);
    rung.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rung;
}

} // namespace

ConvergenceReport run_study(const ProblemSpec& p, const FunctionHandle& exact,
                            std::span<const std::size_t> ladder, const StudyOptions& options) {
    if (ladder.size() < 4) throw ValidationError("a refinement study needs at least 4 ladder entries");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i] < 2) throw ValidationError("ladder entries must be >= 2");
        if (i > 0 && ladder[i] <= ladder[i - 1])
            throw ValidationError("ladder must be strictly increasing");
    }
    if (options.smoothness != 0 && options.smoothness != 1)
        throw ValidationError("smoothness must be 0 or 1");
    const std::size_t fit_candidates = static_cast<std::size_t>(std::count_if(
        ladder.begin(), ladder.end(), [&](std::size_t n) { return n >= options.fit_min_n; }));
    if (fit_candidates < 4)
        throw ValidationError("fewer than 4 ladder entries have N >= " + std::to_string(options.fit_min_n));
    validate(p);

    ConvergenceReport r;
    r.problem_label = p.label;
    r.gamma = p.gamma;
    r.theory_order = static_cast<double>(options.smoothness) + p.gamma;

    if (options.parallel) {
        std::vector<std::future<StudyRung>> futures;
        for (std::size_t n : ladder)
            futures.push_back(std::async(std::launch::async, run_rung, std::cref(p), std::cref(exact), n,
                                         std::cref(options)));
        for (std::size_t i = 0; i < futures.size(); ++i) {
            try {
                auto rung = futures[i].get();
                if (!r.failure) r.ladder.push_back(rung);
            } catch (const Error& e) {
                if (!r.failure) r.failure = "N = " + std::to_string(ladder[i]) + ": " + e.what();
            }
        }
    } else {
        for (std::size_t n : ladder) {
            try {
                r.ladder.push_back(run_rung(p, exact, n, options));
            } catch (const Error& e) {
                r.failure = "N = " + std::to_string(n) + ": " + e.what();
                break;
            }
        }
    }

    std::vector<std::pair<double, double>> points;
    for (const auto& rung : r.ladder) {
        if (rung.n < options.fit_min_n) continue;
        if (!(rung.sup_error > 0.0)) {
            r.notes.push_back("N = " + std::to_string(rung.n) + " has zero error; excluded from fit");
            continue;
        }
        points.emplace_back(rung.h, rung.sup_error);
    }
    if (r.ladder.size() < ladder.size() || points.size() < 4)
        r.notes.push_back("fit uses " + std::to_string(points.size()) + " rungs (4 requested)");
    if (points.size() >= 2) {
        const auto fit = fit_order(points);
        r.fitted_order = fit.slope;
        r.fit_residual = fit.rms_residual;
        r.fit_points = fit.points_used;
    } else {
        r.fitted_order = std::nan("");
        r.fit_residual = std::nan("");
        r.notes.push_back("not enough rungs to fit an order");
    }
    const std::size_t below = static_cast<std::size_t>(std::count_if(
        r.ladder.begin(), r.ladder.end(), [&](const StudyRung& s) { return s.n < options.fit_min_n; }));
    if (below > 0)
        r.notes.push_back(std::to_string(below) + " rung(s) with N < " +
                          std::to_string(options.fit_min_n) + " reported but not fitted");
    return r;
}

ConvergenceReport run_study(const ManufacturedProblem& mp, std::span<const std::size_t> ladder,
                            const StudyOptions& options) {
    return run_study(mp.problem, mp.exact, ladder, options);
}

void write_report_csv(std::ostream& os, const ConvergenceReport& r, bool include_runtime) {
    const auto old = os.precision(17);
    os << (include_runtime ? "N,h,error,runtime\n" : "N,h,error\n");
    for (const auto& rung : r.ladder) {
        os << rung.n << ',' << rung.h << ',' << rung.sup_error;
        if (include_runtime) os << ',' << rung.runtime_seconds;
        os << '\n';
    }
    os.precision(old);
}

void write_summary(std::ostream& os, const ConvergenceReport& r) {
    const auto old = os.precision(6);
    os << "fitted_order=" << r.fitted_order << " theory_order=" << r.theory_order
       << " fit_residual=" << r.fit_residual << " fit_points=" << r.fit_points << '\n';
    os << "problem=" << r.problem_label << " gamma=" << r.gamma << '\n';
    for (const auto& n : r.notes) os << "note: " << n << '\n';
    if (r.failure) os << "failure: " << *r.failure << '\n';
    os.precision(old);
}

PlotSpec convergence_plot(const ConvergenceReport& r) {
    PlotSpec plot;
    std::ostringstream title;
    title << "Collocation error, " << r.problem_label;
    plot.title = title.str();
    plot.x_label = "h = 1/N";
    plot.y_label = "max error";
    plot.log_x = true;
    plot.log_y = true;

    PlotSeries errors;
    std::ostringstream lbl;
    lbl << "error (fitted order " << std::setprecision(3) << r.fitted_order << ")";
    errors.label = lbl.str();
    errors.markers = true;
    for (const auto& rung : r.ladder) {
        errors.x.push_back(rung.h);
        errors.y.push_back(rung.sup_error);
    }

    PlotSeries reference;
    std::ostringstream ref;
    ref << "reference h^" << std::setprecision(3) << r.theory_order;
    reference.label = ref.str();
    reference.color = "#d62728";
    reference.dashed = true;
    if (!r.ladder.empty()) {
        // Anchor the reference line at the coarsest rung.
        const double h0 = r.ladder.front().h;
        const double e0 = r.ladder.front().sup_error > 0.0 ? r.ladder.front().sup_error : 1.0;
        for (const auto& rung : r.ladder) {
            reference.x.push_back(rung.h);
            reference.y.push_back(e0 * std::pow(rung.h / h0, r.theory_order));
        }
    }
    plot.series = {errors, reference};
    return plot;
}

} // namespace nlfe
