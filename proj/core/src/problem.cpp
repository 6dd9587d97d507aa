#include "nlfe/problem.hpp"

#include "nlfe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlfe {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

bool near(double a, double b) { return std::abs(a - b) <= kBoundaryTolerance; }

void require_unit_interval_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw ValidationError("gamma must lie in (0,1], got " + fmt(gamma));
}

} // namespace

ProblemForm ProblemSpec::form() const {
    if (near(boundary_left, 0.0) && near(boundary_right, 1.0)) return ProblemForm::original;
    if (near(boundary_left, 0.0) && near(boundary_right, 0.0)) return ProblemForm::nonhomogeneous;
    throw ValidationError("boundary values (" + fmt(boundary_left) + ", " + fmt(boundary_right) +
                          ") match neither the original (0,1) nor the nonhomogeneous (0,0) form");
}

double ProblemSpec::apply(const FunctionHandle& f, double t) const {
    const double w = phi(t);
    return w * f(phi1(t)) + (1.0 - w) * f(phi2(t)) + source_at(t);
}

std::vector<std::string> problem_violations(const ProblemSpec& p, std::size_t m) {
    std::vector<std::string> out;
    if (!(p.gamma > 0.0 && p.gamma <= 1.0)) out.push_back("gamma outside (0,1]: " + fmt(p.gamma));

    try {
        const auto t = uniform_samples(m);
        for (double s : t) {
            const double a = p.phi1(s);
            const double b = p.phi2(s);
            if (a < -kBoundaryTolerance || a > 1.0 + kBoundaryTolerance) {
                out.push_back("phi1(" + fmt(s) + ") = " + fmt(a) + " outside [0,1]");
                break;
            }
            if (b < -kBoundaryTolerance || b > 1.0 + kBoundaryTolerance) {
                out.push_back("phi2(" + fmt(s) + ") = " + fmt(b) + " outside [0,1]");
                break;
            }
            (void)p.phi(s);
        }
        if (!near(p.phi1(1.0), 1.0)) out.push_back("phi1(1) = " + fmt(p.phi1(1.0)) + ", expected 1");
        if (!near(p.phi2(0.0), 0.0)) out.push_back("phi2(0) = " + fmt(p.phi2(0.0)) + ", expected 0");

        const bool original = near(p.boundary_left, 0.0) && near(p.boundary_right, 1.0);
        const bool nonhomogeneous = near(p.boundary_left, 0.0) && near(p.boundary_right, 0.0);
        if (original) {
            if (p.source) out.push_back("original form requires k == 0");
        } else if (nonhomogeneous) {
            if (!near(p.source_at(0.0), 0.0)) out.push_back("k(0) = " + fmt(p.source_at(0.0)) + ", expected 0");
            if (!near(p.source_at(1.0), 0.0)) out.push_back("k(1) = " + fmt(p.source_at(1.0)) + ", expected 0");
        } else {
            out.push_back("boundary values (" + fmt(p.boundary_left) + ", " + fmt(p.boundary_right) +
                          ") match neither (0,1) nor (0,0)");
        }
    } catch (const EvaluationError& e) {
        out.push_back(e.what());
    }
    return out;
}

void validate(const ProblemSpec& p, std::size_t m) {
    auto v = problem_violations(p, m);
    if (!v.empty()) throw ValidationError(std::move(v));
}

ProblemSpec paradise_fish(double alpha, double beta, double gamma) {
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0))
        throw ValidationError("paradise fish requires alpha, beta in [0,1]");
    require_unit_interval_gamma(gamma);
    return ProblemSpec{
        FunctionHandle::identity(),
        FunctionHandle([alpha](double t) { return alpha * t + 1.0 - alpha; },
                       fmt(alpha) + "*t + 1 - " + fmt(alpha)),
        FunctionHandle([beta](double t) { return beta * t; }, fmt(beta) + "*t"),
        std::nullopt,
        0.0,
        1.0,
        gamma,
        "paradise_fish(alpha=" + fmt(alpha) + ", beta=" + fmt(beta) + ")",
    };
}

ProblemSpec section5_family(double alpha, double gamma) {
    if (!(alpha >= 0.0 && alpha <= 2.0)) throw ValidationError("section5 family requires alpha in [0,2]");
    require_unit_interval_gamma(gamma);
    const double half = alpha / 2.0;
    return ProblemSpec{
        FunctionHandle::identity(),
        FunctionHandle([half](double t) { return 1.0 - half * (1.0 - t); },
                       "1 - " + fmt(half) + "*(1 - t)"),
        FunctionHandle([half](double t) { return half * t; }, fmt(half) + "*t"),
        std::nullopt,
        0.0,
        1.0,
        gamma,
        "section5(alpha=" + fmt(alpha) + ")",
    };
}

double section5_alpha_limit(double gamma) {
    require_unit_interval_gamma(gamma);
    const double base = std::pow(2.0, 2.0 - gamma) * (1.0 + std::pow(2.0, 1.0 - gamma));
    return std::pow(base, -1.0 / gamma);
}

ContractionCertificate make_certificate(double gamma, double norm_phi_gamma, double norm_phi1_lip,
                                        double norm_phi2_lip, double phi1_at_zero) {
    require_unit_interval_gamma(gamma);
    const double phi1_variation = norm_phi1_lip - phi1_at_zero;
    if (phi1_variation < 0.0 || norm_phi_gamma < 0.0 || norm_phi2_lip < 0.0) {
        throw ValidationError("certificate norms inconsistent: ||phi1||_1 = " + fmt(norm_phi1_lip) +
                              " < phi1(0) = " + fmt(phi1_at_zero) + " or a negative norm");
    }
    ContractionCertificate c;
    c.gamma = gamma;
    c.norm_phi_gamma = norm_phi_gamma;
    c.norm_phi1_lip = norm_phi1_lip;
    c.norm_phi2_lip = norm_phi2_lip;
    c.phi1_at_zero = phi1_at_zero;

    const double phi2_term = std::pow(norm_phi2_lip, gamma);
    const double phi1_term = std::pow(phi1_variation, gamma);
    c.lipschitz_factor = 2.0 * norm_phi_gamma * (phi2_term + phi1_term);
    c.fixed_point_factor =
        norm_phi_gamma * (2.0 * phi2_term + phi1_term + std::pow(norm_phi1_lip, gamma));
    c.collocation_threshold = 1.0 / (1.0 + std::pow(2.0, 1.0 - gamma));
    c.satisfies_existence = c.lipschitz_factor < 1.0;
    c.satisfies_stated_bound = c.fixed_point_factor < 1.0;
    c.satisfies_collocation = c.lipschitz_factor < c.collocation_threshold;
    return c;
}

ContractionCertificate certify(const ProblemSpec& p, std::size_t m, const NormOverrides& overrides) {
    validate(p, m);
    const bool sampled =
        !overrides.norm_phi_gamma || !overrides.norm_phi1_lip || !overrides.norm_phi2_lip;
    const double phi_gamma = overrides.norm_phi_gamma
                                 ? *overrides.norm_phi_gamma
                                 : estimate_hoelder_norm(p.phi, p.gamma, m).norm;
    const double phi1_lip =
        overrides.norm_phi1_lip ? *overrides.norm_phi1_lip : estimate_lipschitz_norm(p.phi1, m);
    const double phi2_lip =
        overrides.norm_phi2_lip ? *overrides.norm_phi2_lip : estimate_lipschitz_norm(p.phi2, m);
    auto c = make_certificate(p.gamma, phi_gamma, phi1_lip, phi2_lip, p.phi1(0.0));
    c.used_sampled_norms = sampled;
    return c;
}

CorollaryReport check_corollary_conditions(double alpha, double beta, double gamma) {
    std::vector<std::string> v;
    if (!(alpha > 0.0)) v.push_back("alpha must be positive");
    if (!(alpha <= beta)) v.push_back("alpha must not exceed beta");
    if (!(beta <= 1.0)) v.push_back("beta must not exceed 1");
    if (!(gamma > 0.0 && gamma <= 1.0)) v.push_back("gamma must lie in (0,1]");
    if (!v.empty()) throw ValidationError(std::move(v));

    CorollaryReport r;
    r.alpha = alpha;
    r.beta = beta;
    r.gamma = gamma;
    r.condition_a = std::pow(alpha, gamma) + std::pow(beta, gamma) < 0.5;
    r.condition_b = beta < std::pow(4.0, -1.0 / gamma);
    r.b_implies_a = !r.condition_b || r.condition_a;
    return r;
}

ProblemSpec to_homogeneous(const ProblemSpec& p) {
    validate(p);
    if (p.form() != ProblemForm::original)
        throw StateError("to_homogeneous: problem '" + p.label + "' is already in nonhomogeneous form");

    const FunctionHandle phi = p.phi;
    const FunctionHandle phi1 = p.phi1;
    const FunctionHandle phi2 = p.phi2;
    FunctionHandle k(
        [phi, phi1, phi2](double t) {
            const double w = phi.raw(t);
            return w * phi1.raw(t) + (1.0 - w) * phi2.raw(t) - t;
        },
        "T(t) - t");

    ProblemSpec out = p;
    out.source = std::move(k);
    out.boundary_left = 0.0;
    out.boundary_right = 0.0;
    out.label = p.label + " [g = f - t]";
    for (double edge : {0.0, 1.0}) {
        if (!near(out.source_at(edge), 0.0))
            throw ValidationError("to_homogeneous: k(" + fmt(edge) + ") = " +
                                  fmt(out.source_at(edge)) + " is not zero");
    }
    return out;
}

double residual(const ProblemSpec& p, const FunctionHandle& f, std::size_t m) {
    double worst = 0.0;
    for (double t : uniform_samples(m)) {
        const double w = p.phi(t);
        const double r = f(t) - w * f(p.phi1(t)) - (1.0 - w) * f(p.phi2(t)) - p.source_at(t);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

} // namespace nlfe
