#pragma once

// Problem definition for
//
//     f(t) = φ(t) f(φ₁(t)) + (1 - φ(t)) f(φ₂(t)) + k(t),   t ∈ [0,1],
//
// in either the original form (f(0) = 0, f(1) = 1, k ≡ 0) or the
// nonhomogeneous form (f(0) = f(1) = 0, k(0) = k(1) = 0), and the
// contraction certificate for the substitution operator T.

#include "nlfe/function.hpp"
#include "nlfe/holder_space.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nlfe {

inline constexpr double kBoundaryTolerance = 1e-12;

enum class ProblemForm { original, nonhomogeneous };

struct ProblemSpec {
    FunctionHandle phi;
    FunctionHandle phi1;
    FunctionHandle phi2;
    std::optional<FunctionHandle> source;  ///< nullopt means k ≡ 0
    double boundary_left = 0.0;
    double boundary_right = 1.0;
    double gamma = 1.0;
    std::string label;

    /// Form implied by the boundary data; throws ValidationError if neither.
    ProblemForm form() const;
    double source_at(double t) const { return source ? (*source)(t) : 0.0; }
    /// (Tf)(t) + k(t).
    double apply(const FunctionHandle& f, double t) const;
};

/// Returns the list of violated invariants (empty if valid), checked on m samples.
std::vector<std::string> problem_violations(const ProblemSpec& p,
                                            std::size_t m = kDefaultNormSamples);
/// Throws ValidationError listing every violation.
void validate(const ProblemSpec& p, std::size_t m = kDefaultNormSamples);

/// φ(t) = t, φ₁(t) = αt + 1 - α, φ₂(t) = βt, original form.
ProblemSpec paradise_fish(double alpha, double beta, double gamma);

/// φ(t) = t, φ₁(t) = 1 - (α/2)(1 - t), φ₂(t) = (α/2)t, original form.
ProblemSpec section5_family(double alpha, double gamma);

/// Upper end of the α range for which section5_family satisfies the
/// collocation-convergence hypothesis: (2^{2-γ}(1+2^{1-γ}))^{-1/γ}.
double section5_alpha_limit(double gamma);

struct NormOverrides {
    std::optional<double> norm_phi_gamma;
    std::optional<double> norm_phi1_lip;
    std::optional<double> norm_phi2_lip;
};

struct ContractionCertificate {
    double gamma = 1.0;
    double norm_phi_gamma = 0.0;   ///< ||φ||_γ
    double norm_phi1_lip = 0.0;    ///< ||φ₁||_1
    double norm_phi2_lip = 0.0;    ///< ||φ₂||_1
    double phi1_at_zero = 0.0;     ///< φ₁(0)
    /// 2||φ||_γ(||φ₂||_1^γ + (||φ₁||_1 - φ₁(0))^γ): Lipschitz constant of T.
    double lipschitz_factor = 0.0;
    /// ||φ||_γ(2||φ₂||_1^γ + (||φ₁||_1 - φ₁(0))^γ + ||φ₁||_1^γ): the bound on ||Tf||_γ/||f||_γ.
    double fixed_point_factor = 0.0;
    double collocation_threshold = 0.0;  ///< (1 + 2^{1-γ})^{-1}
    /// T is a contraction (lipschitz_factor < 1), so the fixed point exists
    /// and Picard iteration converges.
    bool satisfies_existence = false;
    /// fixed_point_factor < 1. Never holds when φ(0)=0, φ(1)=1, φ₁(1)=1.
    bool satisfies_stated_bound = false;
    /// lipschitz_factor < collocation_threshold.
    bool satisfies_collocation = false;
    bool used_sampled_norms = false;
};

/// Assembles the certificate from already-known norms; applies the derived-field formulas.
ContractionCertificate make_certificate(double gamma, double norm_phi_gamma, double norm_phi1_lip,
                                        double norm_phi2_lip, double phi1_at_zero);

ContractionCertificate certify(const ProblemSpec& p, std::size_t m = kDefaultNormSamples,
                               const NormOverrides& overrides = {});

struct CorollaryReport {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 1.0;
    bool condition_a = false;   ///< α^γ + β^γ < 1/2
    bool condition_b = false;   ///< 0 < β < 4^{-1/γ}
    bool b_implies_a = true;    ///< (b) ⇒ (a) holds for these parameters
};

/// Paradise-fish sufficient conditions; requires 0 < α <= β <= 1, 0 < γ <= 1.
CorollaryReport check_corollary_conditions(double alpha, double beta, double gamma);

/// Original → nonhomogeneous form via g = f - t: k(t) = φ(t)φ₁(t) + (1-φ(t))φ₂(t) - t.
ProblemSpec to_homogeneous(const ProblemSpec& p);

/// max over m uniform samples of |f(t) - (Tf)(t) - k(t)|.
double residual(const ProblemSpec& p, const FunctionHandle& f, std::size_t m = 101);

} // namespace nlfe
