#pragma once

// Reference solutions: the α = 0 product formula and manufactured problems.

#include "nlfe/function.hpp"
#include "nlfe/problem.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlfe {

/// 1 - ∏_{n>=0} (1 - βⁿ t), truncated once βⁿ t < tol. Solves
/// f(t) = t + (1-t) f(βt), f(0) = 0, f(1) = 1 (paradise fish with α = 0).
double product_formula(double beta, double t, double tol = 1e-16);
FunctionHandle product_solution(double beta, double tol = 1e-16);

/// (1/2 - |t - 1/2|)^γ: vanishes at both ends, cusp at 1/2, exactly γ-Hölder.
FunctionHandle cusp_solution(double gamma);

/// t(1 - t).
FunctionHandle smooth_parabola();

struct ManufacturedProblem {
    ProblemSpec problem;  ///< nonhomogeneous form
    FunctionHandle exact;
    std::string description;
};

/// k := target - T target, so that `target` solves f = Tf + k exactly.
/// Requires target(0) = target(1) = 0 within kBoundaryTolerance.
ManufacturedProblem manufacture(const FunctionHandle& target, const FunctionHandle& phi,
                                const FunctionHandle& phi1, const FunctionHandle& phi2,
                                double gamma);
/// Same, reusing the coefficients of `coefficients`.
ManufacturedProblem manufacture(const FunctionHandle& target, const ProblemSpec& coefficients);

/// A trial function c₀ + Σ a_j |t - c_j|^{e_j} together with an analytic
/// over-estimate of its γ-norm, |f(0)| + Σ |a_j| (each |t - c|^e with
/// e ∈ [γ,1] has γ-seminorm at most 1 on [0,1]).
struct TrialFunction {
    FunctionHandle f;
    double norm_bound = 0.0;
    std::optional<FunctionHandle> derivative;
};

/// `count` random piecewise-cusp functions with exponents in [γ, 1], reproducible from `seed`.
std::vector<TrialFunction> random_cusp_trials(std::size_t count, double gamma, std::uint64_t seed,
                                              std::size_t terms = 3);

/// Random H^{1,γ} functions c₀ + Σ a_j |t - c_j|^{1+e_j}, e_j ∈ [γ,1]. Here
/// norm_bound over-estimates ||u'||_γ = |u'(0)| + [u']_γ using
/// [sign(x)|x|^e]_γ <= 2^{1-e} for e >= γ; `derivative` is u' in closed form.
std::vector<TrialFunction> random_smooth_trials(std::size_t count, double gamma, std::uint64_t seed,
                                                std::size_t terms = 3);

/// Name lookup for the built-in oracles: "cusp", "cusp(0.5)", "product",
/// "product(0.2)", "smooth_parabola". Parenthesised arguments take precedence
/// over the defaults. Throws ValidationError for unknown names.
struct OracleDefaults {
    double gamma = 0.5;
    double beta = 0.2;
};
FunctionHandle named_oracle(std::string_view name, const OracleDefaults& defaults = {});

} // namespace nlfe
