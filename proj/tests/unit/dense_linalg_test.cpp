#include "nlfe/collocation.hpp"
#include "nlfe/dense_linalg.hpp"
#include "nlfe/errors.hpp"
#include "nlfe/problem.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace nlfe {
namespace {

DenseMatrix random_well_conditioned(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = u(rng);
            row += std::abs(a(i, j));
        }
        a(i, i) += row;  // strictly diagonally dominant
    }
    return a;
}

TEST(Solve, Identity) {
    const std::vector<double> b{1.5, -2.0, 3.25};
    EXPECT_EQ(solve(DenseMatrix::identity(3), b), b);
}

TEST(Solve, OneByOneCollocationExample) {
    const auto x = solve(DenseMatrix(1, 1, {0.9}), std::vector<double>{0.5});
    EXPECT_NEAR(x[0], 5.0 / 9.0, 1e-15);
}

TEST(Solve, TwoByTwo) {
    const auto x = solve(DenseMatrix(2, 2, {2, 1, 1, 3}), std::vector<double>{3, 4});
    EXPECT_NEAR(x[0], 1.0, 1e-15);
    EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(Solve, PivotingHandlesZeroDiagonal) {
    const auto x = solve(DenseMatrix(2, 2, {0, 1, 1, 0}), std::vector<double>{2, 3});
    EXPECT_EQ(x[0], 3.0);
    EXPECT_EQ(x[1], 2.0);
}

TEST(Solve, SingularReportsStep) {
    try {
        solve(DenseMatrix(3, 3, {1, 2, 3, 2, 4, 6, 0, 0, 1}), std::vector<double>{1, 2, 3});
        FAIL();
    } catch (const SingularMatrixError& e) {
        EXPECT_EQ(e.step(), 1u);
    }
}

TEST(Solve, ShapeErrors) {
    EXPECT_THROW(solve(DenseMatrix(2, 3), std::vector<double>{1, 2}), ValidationError);
    EXPECT_THROW(solve(DenseMatrix::identity(2), std::vector<double>{1}), ValidationError);
    EXPECT_THROW(DenseMatrix(2, 2, {1, 2, 3}), ValidationError);
}

TEST(Solve, ResidualIsSmall) {
    std::mt19937_64 rng(41);
    for (std::size_t n : {1u, 5u, 40u, 64u}) {
        const auto a = random_well_conditioned(n, rng);
        std::vector<double> b(n);
        for (auto& v : b) v = std::uniform_real_distribution<double>(-10, 10)(rng);
        const auto x = solve(a, b);
        const auto ax = a.multiply(x);
        double res = 0.0, bn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            res = std::max(res, std::abs(ax[i] - b[i]));
            bn = std::max(bn, std::abs(b[i]));
        }
        EXPECT_LE(res, 1e-10 * (1 + bn));
    }
}

TEST(Solve, RecoversKnownSolution) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        const auto a = random_well_conditioned(n, rng);
        std::vector<double> x(n);
        for (auto& v : x) v = std::uniform_real_distribution<double>(-1, 1)(rng);
        const auto got = solve(a, a.multiply(x));
        const double cond = condition_estimate(a);
        double xn = 0.0, err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            xn = std::max(xn, std::abs(x[i]));
            err = std::max(err, std::abs(got[i] - x[i]));
        }
        EXPECT_LE(err / xn, cond * 1e-13);
    }
}

TEST(Solve, PermutationInvariance) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng() % 30;
        const auto a = random_well_conditioned(n, rng);
        std::vector<double> b(n);
        for (auto& v : b) v = std::uniform_real_distribution<double>(-1, 1)(rng);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        DenseMatrix pa(n, n);
        std::vector<double> pb(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) pa(i, j) = a(perm[i], j);
            pb[i] = b[perm[i]];
        }
        const auto x = solve(a, b);
        const auto y = solve(pa, pb);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], y[i], 1e-12);
    }
}

TEST(Condition, Examples) {
    EXPECT_EQ(condition_estimate(DenseMatrix::identity(5)), 1.0);
    EXPECT_NEAR(condition_estimate(DenseMatrix(2, 2, {1, 0, 0, 1e-6})), 1e6, 1e-4);
    const auto sys = assemble(paradise_fish(0.0, 0.2, 1.0), UniformGrid(64));
    const double c = condition_estimate(sys.matrix);
    EXPECT_TRUE(std::isfinite(c));
    EXPECT_LT(c, 1e3);
}

TEST(Condition, SingularIsInfinite) {
    EXPECT_TRUE(std::isinf(condition_estimate(DenseMatrix(2, 2, {1, 2, 2, 4}))));
}

TEST(Matrix, NormAndNonzeros) {
    const DenseMatrix a(2, 3, {1, -2, 0, 0, 0, 4});
    EXPECT_EQ(a.norm_inf(), 4.0);
    EXPECT_EQ(a.nonzeros(), 3u);
}

} // namespace
} // namespace nlfe
