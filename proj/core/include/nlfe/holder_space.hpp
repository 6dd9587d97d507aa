#pragma once

// Sampled Hölder-space analysis on [0,1].
//
// Every estimate here is a supremum over a finite pair set and is therefore a
// lower bound on the true norm. The inequality checks compare sampled
// quantities built from the same sample set, which is what makes them hold
// pair-by-pair rather than only in the limit.

#include "nlfe/function.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nlfe {

inline constexpr std::size_t kDefaultNormSamples = 513;

/// Pairs closer than this are skipped (the quotient is 0/0 there).
inline constexpr double kCoincidentPairGap = 1e-14;

struct HoelderEstimate {
    double gamma = 1.0;
    double boundary_term = 0.0;  ///< |f(0)|
    double seminorm = 0.0;
    double norm = 0.0;           ///< boundary_term + seminorm
    std::size_t sample_count = 0;
};

/// One sampled inequality lhs <= rhs. margin = rhs - lhs.
struct InequalityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool passed = false;
};

InequalityCheck make_check(std::string name, double lhs, double rhs, double tolerance);

/// Uniform samples t_i = i/(m-1), i = 0..m-1.
std::vector<double> uniform_samples(std::size_t m);

/// Evaluates f on `points`, throwing EvaluationError on the first non-finite value.
std::vector<double> sample(const FunctionHandle& f, std::span<const double> points);

/// Max over pairs of |v_i - v_j| / |t_i - t_j|^gamma on arbitrary points.
double sampled_seminorm(std::span<const double> points, std::span<const double> values,
                        double gamma);

HoelderEstimate estimate_hoelder_norm(const FunctionHandle& f, double gamma,
                                      std::size_t m = kDefaultNormSamples);

double estimate_sup_norm(const FunctionHandle& f, std::size_t m = kDefaultNormSamples);

/// |f(0)| + max pairwise difference quotient (the γ = 1 norm).
double estimate_lipschitz_norm(const FunctionHandle& f, std::size_t m = kDefaultNormSamples);

/// Sampled ||u||_{1,γ} := ||u'||_γ. Without an analytic derivative u' is
/// replaced by central differences with step kDerivativeStep.
inline constexpr double kDerivativeStep = 1e-6;
HoelderEstimate estimate_derivative_hoelder_norm(const FunctionHandle& u, double gamma,
                                                 std::size_t m = kDefaultNormSamples,
                                                 const std::optional<FunctionHandle>& derivative = {});

/// Finite-difference derivative handle used by estimate_derivative_hoelder_norm.
FunctionHandle numerical_derivative(const FunctionHandle& u, double step = kDerivativeStep);

inline constexpr double kCheckTolerance = 1e-12;

struct EmbeddingReport {
    InequalityCheck hoelder_vs_stronger;  ///< ||f||_γ <= ||f||_β
    InequalityCheck sup_vs_hoelder;       ///< ||f||_∞ <= ||f||_γ
    bool passed() const { return hoelder_vs_stronger.passed && sup_vs_hoelder.passed; }
};

/// Embedding H^β ⊂ H^γ ⊂ C on [0,1], 0 < γ < β <= 1.
EmbeddingReport check_embedding_inequality(const FunctionHandle& f, double gamma, double beta,
                                           std::size_t m = kDefaultNormSamples,
                                           double tolerance = kCheckTolerance);

/// Banach-algebra bound: seminorm(f·g) <= ||f||_∞(||g||_γ-|g(0)|) + ||g||_∞(||f||_γ-|f(0)|).
InequalityCheck check_product_bound(const FunctionHandle& f, const FunctionHandle& g, double gamma,
                                    std::size_t m = kDefaultNormSamples,
                                    double tolerance = kCheckTolerance);

struct CompositionReport {
    double composed_norm = 0.0;             ///< sampled ||f∘φ||_γ
    bool composed_norm_finite = false;      ///< item (i)
    InequalityCheck norm_bound;             ///< item (ii)
    std::optional<InequalityCheck> pointwise_bound;  ///< item (iii), only when f(0) = 0
    bool passed() const {
        return composed_norm_finite && norm_bound.passed &&
               (!pointwise_bound || pointwise_bound->passed);
    }
};

/// Composition operator C_φ f = f∘φ for φ: [0,1] → [0,1] Lipschitz.
/// Throws DomainError if φ leaves [0,1] on the samples.
CompositionReport check_composition_bound(const FunctionHandle& f, const FunctionHandle& phi,
                                          double gamma, std::size_t m = kDefaultNormSamples,
                                          double tolerance = kCheckTolerance);

} // namespace nlfe
