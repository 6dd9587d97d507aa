#include "nlfe/cli/cli.hpp"

#include "nlfe/cli/run_config.hpp"
#include "nlfe/collocation.hpp"
#include "nlfe/errors.hpp"
#include "nlfe/grid_interp.hpp"
#include "nlfe/holder_space.hpp"
#include "nlfe/oracles.hpp"
#include "nlfe/picard.hpp"
#include "nlfe/problem.hpp"
#include "nlfe/study.hpp"
#include "nlfe/svg_plot.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace nlfe::cli {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot write '" + path + "'");
    return os;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

void add_common_options(CLI::App& sub, RunConfig& c, std::string& config_path) {
    sub.add_option("--config", config_path, "key=value file; its entries override flags");
    sub.add_option("--problem", c.problem, "paradise | section5 | cusp | custom")
        ->check(CLI::IsMember({"paradise", "section5", "cusp", "custom"}));
    sub.add_option("--alpha", c.alpha, "family parameter α");
    sub.add_option("--beta", c.beta, "family parameter β (paradise)");
    sub.add_option("--gamma", c.gamma, "Hölder exponent γ in (0,1]");
    sub.add_option("--manufactured", c.manufactured, "oracle used as manufactured exact solution");
    sub.add_option("--phi-file", c.phi_file, "custom: tabulated φ (CSV t,value)");
    sub.add_option("--phi1-file", c.phi1_file, "custom: tabulated φ₁");
    sub.add_option("--phi2-file", c.phi2_file, "custom: tabulated φ₂");
    sub.add_option("--source-file", c.source_file, "custom: tabulated source k");
}

CLI::App* add_solve(CLI::App& app, RunConfig& c, std::string& cfg) {
    auto* sub = app.add_subcommand("solve", "collocation solve on a uniform grid");
    add_common_options(*sub, c, cfg);
    sub->add_option("--n", c.n, "number of mesh intervals");
    sub->add_option("--oracle", c.oracle, "reference solution to compare against");
    sub->add_option("--samples", c.samples, "uniform samples for the deviation");
    sub->add_option("--output-csv", c.output_csv, "solution CSV path");
    sub->add_option("--plot", c.plot, "SVG function graph path");
    return sub;
}

CLI::App* add_certify(CLI::App& app, RunConfig& c, std::string& cfg) {
    auto* sub = app.add_subcommand("certify", "contraction certificate for a problem");
    add_common_options(*sub, c, cfg);
    sub->add_option("--norm-samples", c.norm_samples, "samples for Hölder norm estimates");
    sub->add_option("--norm-phi", c.norm_phi, "override ||φ||_γ");
    sub->add_option("--norm-phi1", c.norm_phi1, "override ||φ₁||_1");
    sub->add_option("--norm-phi2", c.norm_phi2, "override ||φ₂||_1");
    sub->add_flag("--analytic-norms", c.analytic_norms, "use the family's closed-form norms");
    return sub;
}

CLI::App* add_picard(CLI::App& app, RunConfig& c, std::string& cfg) {
    auto* sub = app.add_subcommand("picard", "Picard iteration (grid, or exact recursion with --depth)");
    add_common_options(*sub, c, cfg);
    sub->add_option("--n", c.n, "number of mesh intervals");
    sub->add_option("--tol", c.tol, "increment tolerance");
    sub->add_option("--max-iter", c.max_iter, "iteration cap");
    sub->add_option("--depth", c.depth, "exact recursion depth");
    sub->add_option("--t", c.t, "evaluation point for the exact recursion");
    sub->add_option("--output-csv", c.output_csv, "trace CSV path");
    return sub;
}

CLI::App* add_study(CLI::App& app, RunConfig& c, std::string& cfg) {
    auto* sub = app.add_subcommand("study", "convergence study over a doubling ladder");
    add_common_options(*sub, c, cfg);
    sub->add_option("--oracle", c.oracle, "exact solution to measure against");
    sub->add_option("--nmin", c.nmin, "smallest N");
    sub->add_option("--nmax", c.nmax, "largest N");
    sub->add_option("--fit-min-n", c.fit_min_n, "smallest N used in the fit");
    sub->add_option("--samples", c.samples, "uniform error samples");
    sub->add_option("--smoothness", c.smoothness, "k in the predicted order k+γ");
    sub->add_option("--output-csv", c.output_csv, "report CSV path (default: standard output)");
    sub->add_flag("--csv-timings", c.csv_timings, "add a runtime column to the CSV");
    sub->add_option("--plot", c.plot, "SVG log-log error plot path");
    return sub;
}

CLI::App* add_interp_check(CLI::App& app, RunConfig& c, std::string& cfg) {
    auto* sub = app.add_subcommand("interp-check", "interpolation error and projector norm checks");
    sub->add_option("--config", cfg, "key=value file; its entries override flags");
    sub->add_option("--gamma", c.gamma, "Hölder exponent γ in (0,1]");
    sub->add_option("--beta", c.beta, "product oracle parameter");
    sub->add_option("--oracle", c.oracle, "function to interpolate (default cusp)");
    sub->add_option("--n", c.n, "number of mesh intervals");
    sub->add_option("--norm-samples", c.norm_samples, "samples for Hölder norm estimates");
    sub->add_option("--trials", c.trials, "random trial functions for the projector norm");
    sub->add_option("--seed", c.seed, "trial RNG seed");
    return sub;
}

void print_kv(std::ostream& out, const char* key, double v) { out << key << '=' << v << '\n'; }

int cmd_solve(const RunConfig& c, std::ostream& out) {
    const auto setup = build_problem(c);
    const auto sol = solve_collocation(setup.problem, c.n);
    out << "problem=" << setup.problem.label << '\n';
    out << "h=" << sol.grid().h() << '\n';
    write_stats(out, sol);
    if (c.oracle) {
        StudyOptions so;
        so.error_samples = c.samples;
        print_kv(out, "sup_deviation", sampled_sup_error(sol.solution, *setup.exact, so));
    }
    if (!c.output_csv.empty()) {
        auto os = open_output(c.output_csv);
        write_csv(os, sol.solution);
    }
    if (!c.plot.empty()) {
        PlotSpec plot{"collocation solution, " + setup.problem.label, "t", "f(t)", false, false, {}};
        PlotSeries s{"f_h (N=" + std::to_string(c.n) + ")", {}, {}, "#1f77b4", false, false};
        for (std::size_t i = 0; i <= c.n; ++i) {
            s.x.push_back(sol.grid().node(i));
            s.y.push_back(sol.solution.value(i));
        }
        plot.series.push_back(std::move(s));
        if (setup.exact) {
            PlotSeries e{"exact", {}, {}, "#d62728", false, true};
            for (double t : uniform_samples(1025)) {
                e.x.push_back(t);
                e.y.push_back((*setup.exact)(t));
            }
            plot.series.push_back(std::move(e));
        }
        write_svg_file(c.plot, plot);
    }
    return kSuccess;
}

int cmd_certify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto setup = build_problem(c);
    NormOverrides ov{c.norm_phi, c.norm_phi1, c.norm_phi2};
    if (c.analytic_norms) {
        if (c.problem == "custom") throw ValidationError("--analytic-norms: custom problems have no closed-form norms");
        if (!ov.norm_phi_gamma) ov.norm_phi_gamma = setup.analytic_norms.norm_phi_gamma;
        if (!ov.norm_phi1_lip) ov.norm_phi1_lip = setup.analytic_norms.norm_phi1_lip;
        if (!ov.norm_phi2_lip) ov.norm_phi2_lip = setup.analytic_norms.norm_phi2_lip;
    }
    const auto cert = certify(setup.problem, c.norm_samples, ov);
    if (cert.used_sampled_norms)
        err << "warning: certificate uses sampled norm estimates (lower bounds); "
               "certification is heuristic. Pass --norm-phi/--norm-phi1/--norm-phi2 "
               "or --analytic-norms for a rigorous check.\n";
    out << "problem=" << setup.problem.label << '\n';
    print_kv(out, "gamma", cert.gamma);
    print_kv(out, "norm_phi_gamma", cert.norm_phi_gamma);
    print_kv(out, "norm_phi1_lip", cert.norm_phi1_lip);
    print_kv(out, "norm_phi2_lip", cert.norm_phi2_lip);
    print_kv(out, "phi1_at_zero", cert.phi1_at_zero);
    print_kv(out, "lipschitz_factor", cert.lipschitz_factor);
    print_kv(out, "fixed_point_factor", cert.fixed_point_factor);
    print_kv(out, "collocation_threshold", cert.collocation_threshold);
    out << "satisfies_existence=" << yes_no(cert.satisfies_existence) << '\n';
    out << "satisfies_stated_bound=" << yes_no(cert.satisfies_stated_bound) << '\n';
    out << "satisfies_collocation=" << yes_no(cert.satisfies_collocation) << '\n';
    out << "used_sampled_norms=" << yes_no(cert.used_sampled_norms) << '\n';
    if (c.problem == "paradise") {
        const double alpha = c.alpha.value_or(0.05);
        const double beta = c.beta.value_or(0.2);
        if (alpha > 0.0 && alpha <= beta) {
            const auto cr = check_corollary_conditions(alpha, beta, cert.gamma);
            out << "corollary_condition_a=" << yes_no(cr.condition_a) << '\n';
            out << "corollary_condition_b=" << yes_no(cr.condition_b) << '\n';
        }
    }
    return kSuccess;
}

int cmd_picard(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto setup = build_problem(c);
    out << "problem=" << setup.problem.label << '\n';
    if (c.depth) {
        const UniformGrid coarse(1);
        const auto f0 = boundary_interpolant(setup.problem, coarse).as_function();
        const auto r = picard_exact_counted(setup.problem, f0, *c.depth, c.t);
        out << "depth=" << *c.depth << '\n';
        print_kv(out, "t", c.t);
        print_kv(out, "value", r.value);
        out << "initial_evaluations=" << r.initial_evaluations << '\n';
        out << "coefficient_evaluations=" << r.coefficient_evaluations << '\n';
        out << "path_evaluations=" << r.path_evaluations() << '\n';
        return kSuccess;
    }
    const UniformGrid grid(c.n);
    const auto trace = picard_grid(setup.problem, grid, boundary_interpolant(setup.problem, grid), c.tol,
                                   c.max_iter);
    if (!c.output_csv.empty()) {
        auto os = open_output(c.output_csv);
        write_trace_csv(os, trace);
    }
    out << "iterations=" << trace.iterations() << '\n';
    out << "converged=" << yes_no(trace.converged) << '\n';
    if (!trace.increments.empty()) print_kv(out, "final_increment", trace.increments.back());
    if (trace.contraction_ratios.size() > 1) {
        // Ratios from the second iteration on; the first one reflects the start.
        const auto tail = std::span(trace.contraction_ratios).subspan(1);
        print_kv(out, "max_ratio", *std::max_element(tail.begin(), tail.end()));
    }
    if (!trace.converged) {
        err << "error: Picard iteration did not reach tol=" << c.tol << " within " << c.max_iter
            << " iterations\n";
        return kNumericalFailure;
    }
    return kSuccess;
}

int cmd_study(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto setup = build_problem(c);
    if (!setup.exact)
        throw ValidationError("study needs an exact solution: use --oracle, --manufactured or --problem cusp");
    StudyOptions so;
    so.error_samples = c.samples;
    so.fit_min_n = c.fit_min_n;
    so.smoothness = setup.smoothness;
    const auto ladder = doubling_ladder(c.nmin, c.nmax);
    const auto start = std::chrono::steady_clock::now();
    const auto report = run_study(setup.problem, *setup.exact, ladder, so);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (c.output_csv.empty()) {
        write_report_csv(out, report, c.csv_timings);
    } else {
        auto os = open_output(c.output_csv);
        write_report_csv(os, report, c.csv_timings);
    }
    if (report.failure) {
        err << "error: " << *report.failure << '\n';
        return kNumericalFailure;
    }
    write_summary(out, report);
    out << "wall_seconds=" << std::setprecision(3) << seconds << '\n';
    if (!c.plot.empty()) write_svg_file(c.plot, convergence_plot(report));
    return kSuccess;
}

int cmd_interp_check(const RunConfig& c, std::ostream& out) {
    const double gamma = c.gamma.value_or(0.5);
    const OracleDefaults defaults{gamma, c.beta.value_or(0.2)};
    const std::string name = c.oracle.value_or("cusp");
    const auto f = named_oracle(name, defaults);
    const UniformGrid grid(c.n);

    const auto norm = estimate_hoelder_norm(f, gamma, c.norm_samples);
    const auto e = measure_interp_error(f, grid, gamma);
    const double bound = sup_error_bound(norm.norm, gamma, 0, grid.h());
    out << "function=" << name << '\n';
    out << "N=" << c.n << '\n';
    print_kv(out, "gamma", gamma);
    print_kv(out, "sup_error", e.sup_error);
    print_kv(out, "sup_error_bound", bound);
    out << "bound_uses_sampled_norm=true\n";
    out << "within_bound=" << yes_no(e.sup_error <= bound * (1.0 + 1e-12)) << '\n';
    print_kv(out, "hoelder_error", e.hoelder_error);

    const auto trials = random_cusp_trials(c.trials, gamma, c.seed);
    std::vector<FunctionHandle> fs;
    fs.reserve(trials.size());
    for (const auto& tr : trials) fs.push_back(tr.f);
    const auto pn = measure_projector_norm(gamma, grid, fs, c.norm_samples);
    const double limit = 1.0 + std::pow(2.0, 1.0 - gamma);
    print_kv(out, "projector_ratio", pn.ratio);
    print_kv(out, "projector_limit", limit);
    out << "projector_trials=" << pn.trials_used << '\n';
    out << "projector_within_limit=" << yes_no(pn.ratio <= limit + 1e-9) << '\n';
    for (const auto& w : pn.warnings) out << "note=" << w << '\n';
    return kSuccess;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string config_path;
    CLI::App app{"Solver for nonlocal functional equations with vanishing delays", "nlfe"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");
    CLI::App* subs[] = {add_solve(app, config, config_path), add_certify(app, config, config_path),
                        add_picard(app, config, config_path), add_study(app, config, config_path),
                        add_interp_check(app, config, config_path)};

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kValidationFailure;
    }
    for (auto* s : subs)
        if (s->parsed()) config.command = s->get_name();

    const auto old_precision = out.precision(12);
    try {
        if (!config_path.empty()) apply_config(config, read_config_file(config_path));
        int code = kSuccess;
        if (config.command == "solve") code = cmd_solve(config, out);
        else if (config.command == "certify") code = cmd_certify(config, out, err);
        else if (config.command == "picard") code = cmd_picard(config, out, err);
        else if (config.command == "study") code = cmd_study(config, out, err);
        else code = cmd_interp_check(config, out);
        out.precision(old_precision);
        return code;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
    } catch (const EvaluationError& e) {
        err << "numerical failure: " << e.what() << '\n';
    } catch (const Error& e) {
        out.precision(old_precision);
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
    }
    out.precision(old_precision);
    return kNumericalFailure;
}

} // namespace nlfe::cli
