#include "nlfe/holder_space.hpp"

#include "nlfe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlfe {

namespace {

void require_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        std::ostringstream os;
        os << "Hölder exponent must lie in (0,1], got " << gamma;
        throw ValidationError(os.str());
    }
}

void require_samples(std::size_t m) {
    if (m < 2) throw ValidationError("sample count must be at least 2");
}

double max_abs(std::span<const double> values) {
    double out = 0.0;
    for (double v : values) out = std::max(out, std::abs(v));
    return out;
}

} // namespace

InequalityCheck make_check(std::string name, double lhs, double rhs, double tolerance) {
    InequalityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = rhs - lhs;
    c.passed = lhs <= rhs + tolerance * std::max(1.0, std::abs(rhs));
    return c;
}

std::vector<double> uniform_samples(std::size_t m) {
    require_samples(m);
    std::vector<double> t(m);
    const double denom = static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) t[i] = static_cast<double>(i) / denom;
    return t;
}

std::vector<double> sample(const FunctionHandle& f, std::span<const double> points) {
    std::vector<double> v;
    v.reserve(points.size());
    for (double t : points) v.push_back(f(t));
    return v;
}

double sampled_seminorm(std::span<const double> points, std::span<const double> values,
                        double gamma) {
    require_gamma(gamma);
    if (points.size() != values.size())
        throw ValidationError("sampled_seminorm: points and values differ in length");
    const std::size_t m = points.size();
    double best = 0.0;
    const bool lipschitz = gamma == 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double gap = std::abs(points[i] - points[j]);
            if (gap < kCoincidentPairGap) continue;
            const double diff = std::abs(values[i] - values[j]);
            if (diff == 0.0) continue;
            const double q = lipschitz ? diff / gap : diff / std::pow(gap, gamma);
            best = std::max(best, q);
        }
    }
    return best;
}

HoelderEstimate estimate_hoelder_norm(const FunctionHandle& f, double gamma, std::size_t m) {
    require_gamma(gamma);
    const auto t = uniform_samples(m);
    const auto v = sample(f, t);
    HoelderEstimate e;
    e.gamma = gamma;
    e.boundary_term = std::abs(v.front());
    e.seminorm = sampled_seminorm(t, v, gamma);
    e.norm = e.boundary_term + e.seminorm;
    e.sample_count = m;
    return e;
}

double estimate_sup_norm(const FunctionHandle& f, std::size_t m) {
    const auto t = uniform_samples(m);
    return max_abs(sample(f, t));
}

double estimate_lipschitz_norm(const FunctionHandle& f, std::size_t m) {
    return estimate_hoelder_norm(f, 1.0, m).norm;
}

FunctionHandle numerical_derivative(const FunctionHandle& u, double step) {
    if (!(step > 0.0 && step < 0.25)) throw ValidationError("derivative step must lie in (0, 0.25)");
    return FunctionHandle(
        [u, step](double t) {
            // Stay inside [0,1]: one-sided second-order stencils near the ends.
            if (t - step < 0.0) {
                return (-3.0 * u(t) + 4.0 * u(t + step) - u(t + 2.0 * step)) / (2.0 * step);
            }
            if (t + step > 1.0) {
                return (3.0 * u(t) - 4.0 * u(t - step) + u(t - 2.0 * step)) / (2.0 * step);
            }
            return (u(t + step) - u(t - step)) / (2.0 * step);
        },
        u.label() + "'");
}

HoelderEstimate estimate_derivative_hoelder_norm(const FunctionHandle& u, double gamma,
                                                 std::size_t m,
                                                 const std::optional<FunctionHandle>& derivative) {
    return estimate_hoelder_norm(derivative ? *derivative : numerical_derivative(u), gamma, m);
}

EmbeddingReport check_embedding_inequality(const FunctionHandle& f, double gamma, double beta,
                                           std::size_t m, double tolerance) {
    require_gamma(gamma);
    require_gamma(beta);
    if (!(gamma < beta)) throw ValidationError("embedding check requires gamma < beta");
    const auto t = uniform_samples(m);
    const auto v = sample(f, t);
    const double boundary = std::abs(v.front());
    const double norm_gamma = boundary + sampled_seminorm(t, v, gamma);
    const double norm_beta = boundary + sampled_seminorm(t, v, beta);
    // On [0,1] the constants max{1,(b-a)^{β-γ}} and max{1,(b-a)^γ} are both 1.
    return EmbeddingReport{
        make_check("||f||_gamma <= ||f||_beta", norm_gamma, norm_beta, tolerance),
        make_check("||f||_inf <= ||f||_gamma", max_abs(v), norm_gamma, tolerance),
    };
}

InequalityCheck check_product_bound(const FunctionHandle& f, const FunctionHandle& g, double gamma,
                                    std::size_t m, double tolerance) {
    require_gamma(gamma);
    const auto t = uniform_samples(m);
    const auto fv = sample(f, t);
    const auto gv = sample(g, t);
    std::vector<double> prod(m);
    for (std::size_t i = 0; i < m; ++i) prod[i] = fv[i] * gv[i];

    const double lhs = sampled_seminorm(t, prod, gamma);
    const double rhs = max_abs(fv) * sampled_seminorm(t, gv, gamma) +
                       max_abs(gv) * sampled_seminorm(t, fv, gamma);
    return make_check("seminorm(f*g) <= ||f||_inf[g]_gamma + ||g||_inf[f]_gamma", lhs, rhs,
                      tolerance);
}

CompositionReport check_composition_bound(const FunctionHandle& f, const FunctionHandle& phi,
                                          double gamma, std::size_t m, double tolerance) {
    require_gamma(gamma);
    constexpr double range_slack = 1e-12;
    const auto t = uniform_samples(m);
    const auto phi_v = sample(phi, t);
    for (std::size_t i = 0; i < m; ++i) {
        if (phi_v[i] < -range_slack || phi_v[i] > 1.0 + range_slack) {
            std::ostringstream os;
            os.precision(17);
            os << "composition: " << phi.label() << "(" << t[i] << ") = " << phi_v[i]
               << " lies outside [0,1]";
            throw DomainError(os.str());
        }
    }

    std::vector<double> composed(m);
    for (std::size_t i = 0; i < m; ++i) composed[i] = f(phi_v[i]);

    // ||f||_γ over the grid together with the images φ(t_i).
    std::vector<double> f_points(t.begin(), t.end());
    f_points.insert(f_points.end(), phi_v.begin(), phi_v.end());
    const auto f_values = sample(f, f_points);
    const double f_zero = std::abs(f_values.front());
    const double f_semi = sampled_seminorm(f_points, f_values, gamma);
    const double f_norm = f_zero + f_semi;

    const double phi_zero = std::abs(phi_v.front());
    const double phi_lip = sampled_seminorm(t, phi_v, 1.0);
    const double phi_norm1 = phi_zero + phi_lip;

    CompositionReport r;
    r.composed_norm = std::abs(composed.front()) + sampled_seminorm(t, composed, gamma);
    r.composed_norm_finite = std::isfinite(r.composed_norm);

    const double rhs_ii = std::abs(f(phi_v.front())) + f_semi * std::pow(phi_lip, gamma);
    r.norm_bound = make_check("||f o phi||_gamma <= |f(phi(0))| + [f]_gamma (||phi||_1-|phi(0)|)^gamma",
                              r.composed_norm, rhs_ii, tolerance);

    if (f_zero <= range_slack) {
        r.pointwise_bound = make_check("|f(phi(t))| <= ||f||_gamma ||phi||_1^gamma",
                                       max_abs(composed), f_norm * std::pow(phi_norm1, gamma),
                                       tolerance);
    }
    return r;
}

} // namespace nlfe
