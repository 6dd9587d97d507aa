#include "nlfe/errors.hpp"
#include "nlfe/holder_space.hpp"
#include "nlfe/oracles.hpp"
#include "nlfe/problem.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nlfe {
namespace {

TEST(ProductFormula, Examples) {
    EXPECT_EQ(product_formula(0.2, 1.0), 1.0);
    EXPECT_EQ(product_formula(0.2, 0.0), 0.0);
    EXPECT_NEAR(product_formula(0.2, 0.5), 0.56120, 1e-5);
}

TEST(ProductFormula, PartialProductsByHand) {
    double prod = 1.0, bn = 1.0;
    for (int n = 0; n < 40; ++n, bn *= 0.2) prod *= 1.0 - bn * 0.5;
    EXPECT_NEAR(product_formula(0.2, 0.5), 1.0 - prod, 1e-15);
}

TEST(ProductFormula, SatisfiesFunctionalIdentity) {
    for (double beta : {0.1, 0.2, 0.5, 0.9}) {
        for (double t : uniform_samples(101)) {
            const double lhs = product_formula(beta, t);
            EXPECT_NEAR(lhs, t + (1 - t) * product_formula(beta, beta * t), 1e-12);
        }
    }
}

TEST(ProductFormula, Arguments) {
    EXPECT_THROW(product_formula(0.0, 0.5), ValidationError);
    EXPECT_THROW(product_formula(1.0, 0.5), ValidationError);
    EXPECT_THROW(product_formula(0.2, 1.5), DomainError);
}

TEST(Cusp, Values) {
    const auto f = cusp_solution(0.5);
    EXPECT_EQ(f(0.0), 0.0);
    EXPECT_EQ(f(1.0), 0.0);
    EXPECT_NEAR(f(0.5), 0.70711, 1e-5);
    EXPECT_EQ(cusp_solution(0.3)(0.5), std::pow(0.5, 0.3));
    EXPECT_THROW(cusp_solution(1.0), ValidationError);
    EXPECT_THROW(cusp_solution(0.0), ValidationError);
}

TEST(Cusp, SampledNorm) {
    EXPECT_NEAR(estimate_hoelder_norm(cusp_solution(0.5), 0.5, 513).norm, 1.0, 1e-6);
}

TEST(Cusp, Symmetry) {
    for (double g : {0.25, 0.5, 0.75}) {
        const auto f = cusp_solution(g);
        // Dyadic samples, so t and 1 - t are both exact.
        for (std::size_t i = 0; i <= 1024; ++i) {
            const double t = i / 1024.0;
            const double s = 1.0 - t;
            EXPECT_EQ(f(t), f(s));
        }
    }
}

TEST(Manufacture, ZeroTarget) {
    const auto mp = manufacture(FunctionHandle::zero(), paradise_fish(0.1, 0.2, 1.0));
    for (double t : uniform_samples(11)) EXPECT_EQ(mp.problem.source_at(t), 0.0);
}

TEST(Manufacture, CuspOnSection5) {
    const auto mp = manufacture(cusp_solution(0.5), section5_family(0.02, 0.5));
    EXPECT_EQ(mp.problem.form(), ProblemForm::nonhomogeneous);
    EXPECT_NEAR(mp.problem.source_at(0.0), 0.0, 1e-12);
    EXPECT_NEAR(mp.problem.source_at(1.0), 0.0, 1e-12);
    EXPECT_LE(residual(mp.problem, mp.exact, 101), 1e-12);
    EXPECT_EQ(mp.exact(0.0), 0.0);
    EXPECT_EQ(mp.exact(1.0), 0.0);
}

TEST(Manufacture, ParabolaClosedFormSource) {
    const double a = 0.05, b = 0.2;
    const auto mp = manufacture(smooth_parabola(), paradise_fish(a, b, 1.0));
    auto u = [](double x) { return x * (1 - x); };
    for (double t : uniform_samples(21)) {
        const double p1 = a * t + 1 - a, p2 = b * t;
        EXPECT_NEAR(mp.problem.source_at(t), u(t) - t * u(p1) - (1 - t) * u(p2), 1e-15);
    }
}

TEST(Manufacture, RightInverseOfResidual) {
    for (double g : {0.25, 0.5, 0.75}) {
        for (const auto& tr : random_cusp_trials(10, g, 17)) {
            const FunctionHandle target([f = tr.f](double t) { return f(t) - (1 - t) * f(0.0) - t * f(1.0); },
                                        "pinned");
            const auto mp = manufacture(target, section5_family(0.02, g));
            EXPECT_LE(residual(mp.problem, mp.exact, 101), 1e-12);
        }
    }
}

TEST(Manufacture, TargetMustVanishAtEnds) {
    EXPECT_THROW(manufacture(FunctionHandle::identity(), paradise_fish(0.1, 0.2, 1.0)), ValidationError);
}

TEST(Trials, Reproducible) {
    const auto a = random_cusp_trials(5, 0.5, 3);
    const auto b = random_cusp_trials(5, 0.5, 3);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(a[i].f(0.37), b[i].f(0.37));
        EXPECT_EQ(a[i].norm_bound, b[i].norm_bound);
    }
}

TEST(Trials, NormBoundsDominateSampledNorms) {
    for (double g : {0.25, 0.5, 0.75}) {
        for (const auto& tr : random_cusp_trials(20, g, 4))
            EXPECT_LE(estimate_hoelder_norm(tr.f, g, 257).norm, tr.norm_bound * (1 + 1e-12));
        for (const auto& tr : random_smooth_trials(20, g, 5)) {
            ASSERT_TRUE(tr.derivative);
            EXPECT_LE(estimate_derivative_hoelder_norm(tr.f, g, 257, tr.derivative).norm,
                      tr.norm_bound * (1 + 1e-12));
        }
    }
}

TEST(NamedOracle, Registry) {
    EXPECT_EQ(named_oracle("cusp(0.25)")(0.5), std::pow(0.5, 0.25));
    EXPECT_EQ(named_oracle("cusp", {0.75, 0.2})(0.5), std::pow(0.5, 0.75));
    EXPECT_EQ(named_oracle("product(0.2)")(0.5), product_formula(0.2, 0.5));
    EXPECT_EQ(named_oracle("product", {0.5, 0.4})(0.5), product_formula(0.4, 0.5));
    EXPECT_EQ(named_oracle("smooth_parabola")(0.5), 0.25);
    EXPECT_THROW(named_oracle("unknown"), ValidationError);
    EXPECT_THROW(named_oracle("cusp(x)"), ValidationError);
    EXPECT_THROW(named_oracle("cusp(0.5"), ValidationError);
}

} // namespace
} // namespace nlfe
