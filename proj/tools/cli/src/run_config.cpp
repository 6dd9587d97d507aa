#include "nlfe/cli/run_config.hpp"

#include "nlfe/errors.hpp"
#include "nlfe/grid_interp.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>

namespace nlfe::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::logic_error&) {
        throw ValidationError("config key '" + key + "': '" + v + "' is not a number");
    }
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        if (!v.empty() && v.front() == '-') throw std::invalid_argument(v);
        const unsigned long long x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::logic_error&) {
        throw ValidationError("config key '" + key + "': '" + v + "' is not a non-negative integer");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ValidationError("config key '" + key + "': '" + v + "' is not a boolean");
}

FunctionHandle tabulated(const std::string& path, const std::string& label) {
    if (path.empty()) throw ValidationError("custom problem needs --" + label + "-file");
    auto table = read_csv_file(path);
    return FunctionHandle([table = std::move(table)](double t) { return table.evaluate(t); },
                          label + "[" + path + "]");
}

} // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t row = 0;
    while (std::getline(is, line)) {
        ++row;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(row) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& entries) {
    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto size = [](std::size_t& field) {
        return Setter([&field](const std::string& k, const std::string& v) {
            field = static_cast<std::size_t>(parse_unsigned(k, v));
        });
    };
    auto real = [](double& field) {
        return Setter([&field](const std::string& k, const std::string& v) { field = parse_double(k, v); });
    };
    auto opt_real = [](std::optional<double>& field) {
        return Setter([&field](const std::string& k, const std::string& v) { field = parse_double(k, v); });
    };
    auto text = [](std::string& field) {
        return Setter([&field](const std::string&, const std::string& v) { field = v; });
    };
    auto opt_text = [](std::optional<std::string>& field) {
        return Setter([&field](const std::string&, const std::string& v) { field = v; });
    };
    auto flag = [](bool& field) {
        return Setter([&field](const std::string& k, const std::string& v) { field = parse_bool(k, v); });
    };
    auto opt_int = [](std::optional<int>& field) {
        return Setter([&field](const std::string& k, const std::string& v) {
            const auto x = parse_unsigned(k, v);
            if (x > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
                throw ValidationError("config key '" + k + "' out of range");
            field = static_cast<int>(x);
        });
    };

    const std::map<std::string, Setter> setters = {
        {"problem", text(c.problem)},
        {"alpha", opt_real(c.alpha)},
        {"beta", opt_real(c.beta)},
        {"gamma", opt_real(c.gamma)},
        {"manufactured", opt_text(c.manufactured)},
        {"oracle", opt_text(c.oracle)},
        {"n", size(c.n)},
        {"nmin", size(c.nmin)},
        {"nmax", size(c.nmax)},
        {"fit-min-n", size(c.fit_min_n)},
        {"samples", size(c.samples)},
        {"norm-samples", size(c.norm_samples)},
        {"smoothness", opt_int(c.smoothness)},
        {"tol", real(c.tol)},
        {"max-iter", size(c.max_iter)},
        {"depth", opt_int(c.depth)},
        {"t", real(c.t)},
        {"norm-phi", opt_real(c.norm_phi)},
        {"norm-phi1", opt_real(c.norm_phi1)},
        {"norm-phi2", opt_real(c.norm_phi2)},
        {"phi-file", text(c.phi_file)},
        {"phi1-file", text(c.phi1_file)},
        {"phi2-file", text(c.phi2_file)},
        {"source-file", text(c.source_file)},
        {"trials", size(c.trials)},
        {"seed", Setter([&c](const std::string& k, const std::string& v) { c.seed = parse_unsigned(k, v); })},
        {"output-csv", text(c.output_csv)},
        {"plot", text(c.plot)},
        {"csv-timings", flag(c.csv_timings)},
        {"analytic-norms", flag(c.analytic_norms)},
    };
    for (const auto& [key, value] : entries) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ValidationError("unknown config key '" + key + "'");
        it->second(key, value);
    }
}

ProblemSetup build_problem(const RunConfig& c) {
    ProblemSetup setup{paradise_fish(0.0, 0.2, 1.0), std::nullopt, 0, {}};
    std::optional<FunctionHandle> natural_exact;
    int natural_smoothness = 0;

    if (c.problem == "paradise") {
        const double alpha = c.alpha.value_or(0.05);
        const double beta = c.beta.value_or(0.2);
        const double gamma = c.gamma.value_or(1.0);
        setup.problem = paradise_fish(alpha, beta, gamma);
        setup.analytic_norms = NormOverrides{1.0, 1.0, beta};
        if (alpha == 0.0 && beta > 0.0 && beta < 1.0) {
            natural_exact = product_solution(beta);
            natural_smoothness = 1;
        }
    } else if (c.problem == "section5" || c.problem == "cusp") {
        const double alpha = c.alpha.value_or(0.02);
        const double gamma = c.gamma.value_or(0.5);
        setup.problem = section5_family(alpha, gamma);
        setup.analytic_norms = NormOverrides{1.0, 1.0, alpha / 2.0};
        if (c.problem == "section5") {
            // T t = t for this family, so the identity solves the original form.
            natural_exact = FunctionHandle::identity();
            natural_smoothness = 1;
        }
    } else if (c.problem == "custom") {
        setup.problem = ProblemSpec{tabulated(c.phi_file, "phi"),
                                    tabulated(c.phi1_file, "phi1"),
                                    tabulated(c.phi2_file, "phi2"),
                                    std::nullopt,
                                    0.0,
                                    1.0,
                                    c.gamma.value_or(1.0),
                                    "custom"};
        if (!c.source_file.empty()) {
            setup.problem.source = tabulated(c.source_file, "source");
            setup.problem.boundary_right = 0.0;
        }
    } else {
        throw ValidationError("unknown problem '" + c.problem + "' (expected paradise, section5, cusp or custom)");
    }

    const OracleDefaults defaults{setup.problem.gamma, c.beta.value_or(0.2)};
    std::optional<std::string> target = c.manufactured;
    if (c.problem == "cusp") {
        if (target && target->rfind("cusp", 0) != 0)
            throw ValidationError("--problem cusp fixes the manufactured target to the cusp");
        if (!target) target = "cusp";
    }
    if (target) {
        auto mp = manufacture(named_oracle(*target, defaults), setup.problem);
        setup.problem = std::move(mp.problem);
        natural_exact = mp.exact;
        natural_smoothness = target->rfind("cusp", 0) == 0 ? 0 : 1;
    }

    setup.exact = natural_exact;
    setup.smoothness = natural_smoothness;
    if (c.oracle) {
        setup.exact = named_oracle(*c.oracle, defaults);
        setup.smoothness = c.oracle->rfind("cusp", 0) == 0 ? 0 : 1;
    }
    if (c.smoothness) {
        if (*c.smoothness != 0 && *c.smoothness != 1) throw ValidationError("--smoothness must be 0 or 1");
        setup.smoothness = *c.smoothness;
    }
    validate(setup.problem);
    return setup;
}

} // namespace nlfe::cli
