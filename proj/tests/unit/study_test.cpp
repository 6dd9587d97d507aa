#include "nlfe/errors.hpp"
#include "nlfe/oracles.hpp"
#include "nlfe/problem.hpp"
#include "nlfe/study.hpp"
#include "nlfe/svg_plot.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

namespace nlfe {
namespace {

using Points = std::vector<std::pair<double, double>>;

TEST(FitOrder, TwoPoints) {
    const Points pts{{0.1, 0.01}, {0.01, 0.0001}};
    EXPECT_NEAR(fit_order(pts).slope, 2.0, 1e-12);
}

TEST(FitOrder, ExactPowerLaw) {
    Points pts;
    for (int i = 0; i < 5; ++i) {
        const double h = std::ldexp(1.0, -3 - i);
        pts.emplace_back(h, 3.0 * std::pow(h, 0.75));
    }
    const auto f = fit_order(pts);
    EXPECT_NEAR(f.slope, 0.75, 1e-12);
    EXPECT_NEAR(f.rms_residual, 0.0, 1e-12);
    EXPECT_EQ(f.points_used, 5u);
}

TEST(FitOrder, NonPositiveErrorsExcluded) {
    const Points pts{{0.1, 0.0}, {0.05, 0.01}, {0.025, 0.0025}, {0.0125, -1.0}};
    const auto f = fit_order(pts);
    EXPECT_EQ(f.points_used, 2u);
    EXPECT_EQ(f.points_excluded, 2u);
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    const Points one{{0.1, 0.0}, {0.05, 0.01}};
    EXPECT_THROW(fit_order(one), FitError);
}

TEST(FitOrder, ScaleInvariant) {
    const Points pts{{0.1, 0.031}, {0.05, 0.017}, {0.025, 0.0072}, {0.0125, 0.0041}};
    Points scaled;
    for (auto [h, e] : pts) scaled.emplace_back(h, 123.4 * e);
    EXPECT_NEAR(fit_order(pts).slope, fit_order(scaled).slope, 1e-12);
}

TEST(Ladder, Doubling) {
    EXPECT_EQ(doubling_ladder(16, 4096), (std::vector<std::size_t>{16, 32, 64, 128, 256, 512, 1024, 2048, 4096}));
    EXPECT_EQ(doubling_ladder(3, 20), (std::vector<std::size_t>{3, 6, 12}));
    EXPECT_THROW(doubling_ladder(1, 8), ValidationError);
    EXPECT_THROW(doubling_ladder(16, 8), ValidationError);
}

TEST(RunStudy, LadderValidation) {
    const auto mp = manufacture(cusp_solution(0.5), section5_family(0.02, 0.5));
    const std::vector<std::size_t> short_ladder{16, 32, 64};
    EXPECT_THROW(run_study(mp, short_ladder), ValidationError);
    const std::vector<std::size_t> unsorted{16, 64, 32, 128};
    EXPECT_THROW(run_study(mp, unsorted), ValidationError);
}

TEST(RunStudy, CuspOrderGamma) {
    const auto mp = manufacture(cusp_solution(0.5), section5_family(0.02, 0.5));
    const auto ladder = doubling_ladder(16, 1024);
    const auto r = run_study(mp, ladder);
    EXPECT_FALSE(r.failure);
    EXPECT_NEAR(r.fitted_order, 0.5, 0.1);
    EXPECT_EQ(r.theory_order, 0.5);
    ASSERT_EQ(r.ladder.size(), ladder.size());
    for (std::size_t i = 1; i < r.ladder.size(); ++i) {
        EXPECT_GT(r.ladder[i].n, r.ladder[i - 1].n);
        EXPECT_LT(r.ladder[i].sup_error, r.ladder[i - 1].sup_error);
    }
}

TEST(RunStudy, SmallRungsRecordedButNotFitted) {
    const auto mp = manufacture(cusp_solution(0.5), section5_family(0.02, 0.5));
    const std::vector<std::size_t> ladder{4, 8, 16, 32, 64, 128};
    const auto r = run_study(mp, ladder);
    EXPECT_EQ(r.ladder.size(), 6u);
    EXPECT_EQ(r.fit_points, 4u);
}

TEST(RunStudy, DeterministicReports) {
    const auto mp = manufacture(smooth_parabola(), paradise_fish(0.05, 0.2, 1.0));
    const auto ladder = doubling_ladder(16, 128);
    StudyOptions opt;
    opt.smoothness = 1;
    const auto a = run_study(mp, ladder, opt);
    const auto b = run_study(mp, ladder, opt);
    std::ostringstream sa, sb;
    write_report_csv(sa, a);
    write_report_csv(sb, b);
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_EQ(a.fitted_order, b.fitted_order);
    EXPECT_EQ(a.theory_order, 2.0);
}

TEST(RunStudy, ParallelMatchesSerial) {
    const auto mp = manufacture(cusp_solution(0.75), section5_family(0.05, 0.75));
    const auto ladder = doubling_ladder(16, 256);
    StudyOptions par;
    par.parallel = true;
    const auto a = run_study(mp, ladder);
    const auto b = run_study(mp, ladder, par);
    ASSERT_EQ(a.ladder.size(), b.ladder.size());
    for (std::size_t i = 0; i < a.ladder.size(); ++i) EXPECT_EQ(a.ladder[i].sup_error, b.ladder[i].sup_error);
    EXPECT_EQ(a.fitted_order, b.fitted_order);
}

TEST(RunStudy, FailureKeepsPartialLadder) {
    // φ ≡ 1, φ₁ = id: singular for every N, so the first rung fails.
    ProblemSpec p{FunctionHandle::constant(1.0), FunctionHandle::identity(), FunctionHandle::zero(),
                  std::nullopt, 0.0, 1.0, 1.0, "degenerate"};
    const std::vector<std::size_t> ladder{16, 32, 64, 128};
    const auto r = run_study(p, FunctionHandle::identity(), ladder);
    ASSERT_TRUE(r.failure);
    EXPECT_TRUE(r.ladder.empty());
}

TEST(Output, CsvAndSummary) {
    const auto mp = manufacture(cusp_solution(0.5), section5_family(0.02, 0.5));
    const auto r = run_study(mp, doubling_ladder(16, 128));
    std::ostringstream csv, timed, summary;
    write_report_csv(csv, r);
    write_report_csv(timed, r, true);
    write_summary(summary, r);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "N,h,error");
    EXPECT_EQ(timed.str().substr(0, timed.str().find('\n')), "N,h,error,runtime");
    EXPECT_NE(summary.str().find("fitted_order="), std::string::npos);
    EXPECT_NE(summary.str().find("theory_order=0.5"), std::string::npos);
}

TEST(Output, SvgPlot) {
    const auto mp = manufacture(cusp_solution(0.5), section5_family(0.02, 0.5));
    const auto r = run_study(mp, doubling_ladder(16, 128));
    std::ostringstream os;
    write_svg(os, convergence_plot(r));
    const auto s = os.str();
    EXPECT_NE(s.find("<svg"), std::string::npos);
    EXPECT_NE(s.find("width=\"800\""), std::string::npos);
    EXPECT_NE(s.find("height=\"600\""), std::string::npos);
    EXPECT_NE(s.find("<polyline"), std::string::npos);
}

} // namespace
} // namespace nlfe
