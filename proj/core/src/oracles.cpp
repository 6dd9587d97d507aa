#include "nlfe/oracles.hpp"

#include "nlfe/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace nlfe {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

double product_formula(double beta, double t, double tol) {
    if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("product formula needs 0 < beta < 1");
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("product formula argument must lie in [0,1]");
    if (!(tol > 0.0)) throw ValidationError("product formula tolerance must be positive");
    double product = 1.0;
    for (double term = t; term >= tol; term *= beta) product *= 1.0 - term;
    return 1.0 - product;
}

FunctionHandle product_solution(double beta, double tol) {
    if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("product formula needs 0 < beta < 1");
    return FunctionHandle([beta, tol](double t) { return product_formula(beta, t, tol); },
                          "product(" + fmt(beta) + ")");
}

FunctionHandle cusp_solution(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("cusp exponent must lie in (0,1)");
    return FunctionHandle(
        [gamma](double t) { return std::pow(0.5 - std::abs(t - 0.5), gamma); },
        "cusp(" + fmt(gamma) + ")");
}

FunctionHandle smooth_parabola() {
    return FunctionHandle([](double t) { return t * (1.0 - t); }, "smooth_parabola");
}

ManufacturedProblem manufacture(const FunctionHandle& target, const FunctionHandle& phi,
                                const FunctionHandle& phi1, const FunctionHandle& phi2,
                                double gamma) {
    const double left = target(0.0);
    const double right = target(1.0);
    if (std::abs(left) > kBoundaryTolerance || std::abs(right) > kBoundaryTolerance) {
        throw ValidationError("manufactured target must vanish at both ends, got f(0) = " +
                              fmt(left) + ", f(1) = " + fmt(right));
    }
    // Same evaluation order as residual(), so the defect is exactly zero.
    FunctionHandle k(
        [target, phi, phi1, phi2](double t) {
            const double w = phi(t);
            return target(t) - w * target(phi1(t)) - (1.0 - w) * target(phi2(t));
        },
        "k[" + target.label() + "]");

    ProblemSpec p{phi, phi1, phi2, std::move(k), 0.0, 0.0, gamma,
                  "manufactured(" + target.label() + ")"};
    validate(p);
    return ManufacturedProblem{std::move(p), target,
                               "exact solution " + target.label() + " with manufactured source"};
}

ManufacturedProblem manufacture(const FunctionHandle& target, const ProblemSpec& coefficients) {
    auto m = manufacture(target, coefficients.phi, coefficients.phi1, coefficients.phi2,
                         coefficients.gamma);
    m.problem.label = coefficients.label + " manufactured(" + target.label() + ")";
    return m;
}

std::vector<TrialFunction> random_cusp_trials(std::size_t count, double gamma, std::uint64_t seed,
                                              std::size_t terms) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in (0,1]");
    if (terms == 0) throw ValidationError("trial functions need at least one term");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> signed_unit(-1.0, 1.0);
    std::uniform_real_distribution<double> exponent(gamma, 1.0);

    std::vector<TrialFunction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double offset = signed_unit(rng);
        std::vector<double> amp(terms), centre(terms), power(terms);
        for (std::size_t j = 0; j < terms; ++j) {
            amp[j] = signed_unit(rng);
            centre[j] = unit(rng);
            power[j] = exponent(rng);
        }
        double at_zero = offset;
        double bound = 0.0;
        for (std::size_t j = 0; j < terms; ++j) {
            at_zero += amp[j] * std::pow(centre[j], power[j]);
            bound += std::abs(amp[j]);
        }
        FunctionHandle f(
            [offset, amp, centre, power](double t) {
                double v = offset;
                for (std::size_t j = 0; j < amp.size(); ++j)
                    v += amp[j] * std::pow(std::abs(t - centre[j]), power[j]);
                return v;
            },
            "trial#" + std::to_string(i));
        out.push_back(TrialFunction{std::move(f), std::abs(at_zero) + bound, std::nullopt});
    }
    return out;
}

std::vector<TrialFunction> random_smooth_trials(std::size_t count, double gamma, std::uint64_t seed,
                                                std::size_t terms) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in (0,1]");
    if (terms == 0) throw ValidationError("trial functions need at least one term");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> signed_unit(-1.0, 1.0);
    std::uniform_real_distribution<double> exponent(gamma, 1.0);

    std::vector<TrialFunction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double offset = signed_unit(rng);
        std::vector<double> amp(terms), centre(terms), power(terms);
        for (std::size_t j = 0; j < terms; ++j) {
            amp[j] = signed_unit(rng);
            centre[j] = unit(rng);
            power[j] = exponent(rng);
        }
        // u'(t) = Σ a_j (1+e_j) sign(t-c_j) |t-c_j|^{e_j}
        double slope_at_zero = 0.0;
        double bound = 0.0;
        for (std::size_t j = 0; j < terms; ++j) {
            slope_at_zero -= amp[j] * (1.0 + power[j]) * std::pow(centre[j], power[j]);
            bound += std::abs(amp[j]) * (1.0 + power[j]) * std::pow(2.0, 1.0 - power[j]);
        }
        FunctionHandle f(
            [offset, amp, centre, power](double t) {
                double v = offset;
                for (std::size_t j = 0; j < amp.size(); ++j)
                    v += amp[j] * std::pow(std::abs(t - centre[j]), 1.0 + power[j]);
                return v;
            },
            "smooth_trial#" + std::to_string(i));
        FunctionHandle df(
            [amp, centre, power](double t) {
                double v = 0.0;
                for (std::size_t j = 0; j < amp.size(); ++j) {
                    const double d = t - centre[j];
                    const double mag = std::pow(std::abs(d), power[j]);
                    v += amp[j] * (1.0 + power[j]) * (d < 0.0 ? -mag : mag);
                }
                return v;
            },
            "smooth_trial#" + std::to_string(i) + "'");
        out.push_back(TrialFunction{std::move(f), std::abs(slope_at_zero) + bound, std::move(df)});
    }
    return out;
}

FunctionHandle named_oracle(std::string_view name, const OracleDefaults& defaults) {
    std::string base(name);
    std::optional<double> arg;
    if (const auto open = base.find('('); open != std::string::npos) {
        if (base.back() != ')') throw ValidationError("malformed oracle name '" + std::string(name) + "'");
        const std::string inner = base.substr(open + 1, base.size() - open - 2);
        try {
            std::size_t used = 0;
            arg = std::stod(inner, &used);
            if (used != inner.size()) throw std::invalid_argument(inner);
        } catch (const std::logic_error&) {
            throw ValidationError("oracle argument '" + inner + "' is not a number");
        }
        base = base.substr(0, open);
    }
    if (base == "cusp") return cusp_solution(arg.value_or(defaults.gamma));
    if (base == "product") return product_solution(arg.value_or(defaults.beta));
    if (base == "smooth_parabola") {
        if (arg) throw ValidationError("smooth_parabola takes no argument");
        return smooth_parabola();
    }
    throw ValidationError("unknown oracle '" + std::string(name) +
                          "' (expected cusp, product or smooth_parabola)");
}

} // namespace nlfe
