#include "nlfe/cli/cli.hpp"
#include "nlfe/cli/run_config.hpp"
#include "nlfe/errors.hpp"
#include "nlfe/grid_interp.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace nlfe::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "nlfe");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

double value_of(const std::string& text, const std::string& key) {
    const auto pos = text.find(key + "=");
    if (pos == std::string::npos) throw std::runtime_error("missing key " + key);
    return std::stod(text.substr(pos + key.size() + 1));
}

TEST(Cli, CertifyParadiseExample) {
    const auto r = run_cli({"certify", "--problem", "paradise", "--alpha", "0.05", "--beta", "0.2", "--gamma", "1"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_NE(r.out.find("lipschitz_factor=0.5\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("satisfies_existence=true"), std::string::npos);
    EXPECT_NE(r.out.find("corollary_condition_a=true"), std::string::npos);
    EXPECT_NE(r.err.find("heuristic"), std::string::npos);
}

TEST(Cli, CertifyWithAnalyticNormsHasNoWarning) {
    const auto r = run_cli({"certify", "--problem", "section5", "--alpha", "0.02", "--gamma", "0.5", "--analytic-norms"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_TRUE(r.err.empty()) << r.err;
    EXPECT_NEAR(value_of(r.out, "lipschitz_factor"), 0.4, 1e-12);
    EXPECT_NE(r.out.find("satisfies_collocation=true"), std::string::npos);
}

TEST(Cli, SolveProductOracle) {
    const auto r = run_cli({"solve", "--problem", "paradise", "--alpha", "0", "--beta", "0.2", "--n", "1024",
                            "--oracle", "product"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_LE(value_of(r.out, "sup_deviation"), 1e-4);
}

TEST(Cli, SolveCsvRoundTripAndRerunsAreIdentical) {
    const std::string a = "cli_solve_a.csv", b = "cli_solve_b.csv";
    const std::vector<std::string> args{"solve", "--problem", "cusp", "--n", "64", "--output-csv"};
    auto args_a = args, args_b = args;
    args_a.push_back(a);
    args_b.push_back(b);
    ASSERT_EQ(run_cli(args_a).code, kSuccess);
    ASSERT_EQ(run_cli(args_b).code, kSuccess);
    EXPECT_EQ(slurp(a), slurp(b));
    const auto u = read_csv_file(a);
    ASSERT_EQ(u.grid().n(), 64u);
    std::ostringstream os;
    write_csv(os, u);
    EXPECT_EQ(os.str(), slurp(a));
    for (std::size_t i = 0; i <= 64; ++i) EXPECT_EQ(u.evaluate(u.grid().node(i)), u.value(i));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST(Cli, StudyCuspExample) {
    const auto r = run_cli({"study", "--problem", "cusp", "--gamma", "0.5", "--alpha", "0.02", "--nmin", "16",
                            "--nmax", "4096"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "N,h,error");
    EXPECT_NEAR(value_of(r.out, "fitted_order"), 0.5, 0.1);
}

TEST(Cli, StudyCsvIsByteIdenticalAcrossReruns) {
    const std::string a = "cli_study_a.csv", b = "cli_study_b.csv", svg = "cli_study.svg";
    ASSERT_EQ(run_cli({"study", "--problem", "cusp", "--nmax", "256", "--output-csv", a, "--plot", svg}).code,
              kSuccess);
    ASSERT_EQ(run_cli({"study", "--problem", "cusp", "--nmax", "256", "--output-csv", b}).code, kSuccess);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
    for (const auto& f : {a, b, svg}) std::filesystem::remove(f);
}

TEST(Cli, StudyTimingsColumnOnRequest) {
    const auto r = run_cli({"study", "--problem", "cusp", "--nmax", "128", "--csv-timings"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "N,h,error,runtime");
}

TEST(Cli, StudyWithoutExactSolutionIsValidationError) {
    const auto r = run_cli({"study", "--problem", "paradise", "--alpha", "0.05"});
    EXPECT_EQ(r.code, kValidationFailure);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, StudyManufacturedSmooth) {
    const auto r = run_cli({"study", "--problem", "paradise", "--manufactured", "smooth_parabola", "--nmax", "256"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_NEAR(value_of(r.out, "theory_order"), 2.0, 1e-12);
}

TEST(Cli, PicardGridAndExact) {
    const auto g = run_cli({"picard", "--problem", "paradise", "--alpha", "0", "--n", "64"});
    ASSERT_EQ(g.code, kSuccess) << g.err;
    EXPECT_NE(g.out.find("converged=true"), std::string::npos);

    const auto e = run_cli({"picard", "--problem", "paradise", "--alpha", "0", "--depth", "20", "--t", "0.5"});
    ASSERT_EQ(e.code, kSuccess) << e.err;
    EXPECT_NEAR(value_of(e.out, "value"), 0.56120, 1e-4);
    EXPECT_EQ(value_of(e.out, "path_evaluations"), (2 << 20) - 1);
}

TEST(Cli, PicardNonConvergenceExitsTwo) {
    const auto r = run_cli({"picard", "--problem", "paradise", "--max-iter", "2", "--tol", "1e-15"});
    EXPECT_EQ(r.code, kNumericalFailure);
    EXPECT_NE(r.err.find("did not reach"), std::string::npos);
}

TEST(Cli, PicardDepthAboveCapExitsOne) {
    EXPECT_EQ(run_cli({"picard", "--depth", "30"}).code, kValidationFailure);
}

TEST(Cli, SingularSystemExitsTwo) {
    // Tabulated φ ≡ 1, φ₁ = t, φ₂ ≡ 0: every collocation row is 0 = 0.
    std::ofstream("cli_one.csv") << "t,value\n0,1\n1,1\n";
    std::ofstream("cli_id.csv") << "t,value\n0,0\n1,1\n";
    std::ofstream("cli_zero.csv") << "t,value\n0,0\n1,0\n";
    const auto r = run_cli({"solve", "--problem", "custom", "--phi-file", "cli_one.csv", "--phi1-file", "cli_id.csv",
                            "--phi2-file", "cli_zero.csv", "--n", "8"});
    EXPECT_EQ(r.code, kNumericalFailure) << r.out << r.err;
    EXPECT_NE(r.err.find("singular"), std::string::npos) << r.err;
}

TEST(Cli, CustomTabulatedProblemSolves) {
    std::ofstream("cli_phi.csv") << "t,value\n0,0\n0.5,0.5\n1,1\n";
    std::ofstream("cli_phi1.csv") << "t,value\n0,0.9\n0.5,0.95\n1,1\n";
    std::ofstream("cli_phi2.csv") << "t,value\n0,0\n0.5,0.1\n1,0.2\n";
    const auto r = run_cli({"solve", "--problem", "custom", "--phi-file", "cli_phi.csv", "--phi1-file",
                            "cli_phi1.csv", "--phi2-file", "cli_phi2.csv", "--n", "32"});
    EXPECT_EQ(r.code, kSuccess) << r.err;
    const auto direct = run_cli({"solve", "--problem", "paradise", "--alpha", "0.1", "--n", "32",
                                 "--output-csv", "cli_direct.csv"});
    const auto tab = run_cli({"solve", "--problem", "custom", "--phi-file", "cli_phi.csv", "--phi1-file",
                              "cli_phi1.csv", "--phi2-file", "cli_phi2.csv", "--n", "32", "--output-csv",
                              "cli_tab.csv"});
    ASSERT_EQ(direct.code, kSuccess);
    ASSERT_EQ(tab.code, kSuccess);
    const auto u = read_csv_file("cli_direct.csv");
    const auto v = read_csv_file("cli_tab.csv");
    for (std::size_t i = 0; i <= 32; ++i) EXPECT_NEAR(u.value(i), v.value(i), 1e-12);
}

TEST(Cli, UnknownFlagPrintsUsage) {
    const auto r = run_cli({"solve", "--bogus", "1"});
    EXPECT_EQ(r.code, kValidationFailure);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, ShortFlagsAreRejected) {
    EXPECT_EQ(run_cli({"solve", "-n", "8"}).code, kValidationFailure);
}

TEST(Cli, MissingSubcommand) {
    EXPECT_EQ(run_cli({}).code, kValidationFailure);
}

TEST(Cli, BadProblemParameters) {
    EXPECT_EQ(run_cli({"solve", "--problem", "paradise", "--alpha", "1.5"}).code, kValidationFailure);
    EXPECT_EQ(run_cli({"solve", "--problem", "nope"}).code, kValidationFailure);
    EXPECT_EQ(run_cli({"solve", "--problem", "cusp", "--gamma", "1"}).code, kValidationFailure);
    EXPECT_EQ(run_cli({"solve", "--n", "1"}).code, kValidationFailure);
}

TEST(Cli, ConfigFileOverridesFlags) {
    std::ofstream("cli_config.txt") << "# certify recipe\nproblem = paradise\nalpha=0.1\nbeta = 0.2\n";
    const auto r = run_cli({"certify", "--alpha", "0.4", "--config", "cli_config.txt"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_NEAR(value_of(r.out, "lipschitz_factor"), 0.6, 1e-12);
}

TEST(Cli, ConfigUnknownKeyRejected) {
    std::ofstream("cli_bad_config.txt") << "alpah=0.1\n";
    const auto r = run_cli({"certify", "--config", "cli_bad_config.txt"});
    EXPECT_EQ(r.code, kValidationFailure);
    EXPECT_NE(r.err.find("alpah"), std::string::npos);
    EXPECT_EQ(run_cli({"certify", "--config", "does_not_exist.txt"}).code, kValidationFailure);
}

TEST(Cli, InterpCheck) {
    const auto r = run_cli({"interp-check", "--gamma", "0.5", "--n", "8", "--trials", "50", "--seed", "7"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_NE(r.out.find("within_bound=true"), std::string::npos);
    EXPECT_NE(r.out.find("projector_within_limit=true"), std::string::npos);
    const auto again = run_cli({"interp-check", "--gamma", "0.5", "--n", "8", "--trials", "50", "--seed", "7"});
    EXPECT_EQ(r.out, again.out);
}

TEST(RunConfigParsing, ApplyConfig) {
    RunConfig c;
    apply_config(c, {{"n", "128"}, {"tol", "1e-9"}, {"csv-timings", "true"}, {"oracle", "cusp(0.25)"}});
    EXPECT_EQ(c.n, 128u);
    EXPECT_EQ(c.tol, 1e-9);
    EXPECT_TRUE(c.csv_timings);
    EXPECT_EQ(*c.oracle, "cusp(0.25)");
    EXPECT_THROW(apply_config(c, {{"n", "-3"}}), ValidationError);
    EXPECT_THROW(apply_config(c, {{"tol", "abc"}}), ValidationError);
    EXPECT_THROW(apply_config(c, {{"csv-timings", "maybe"}}), ValidationError);
}

TEST(RunConfigParsing, FamilyDefaults) {
    RunConfig c;
    c.problem = "cusp";
    const auto s = build_problem(c);
    EXPECT_EQ(s.problem.gamma, 0.5);
    ASSERT_TRUE(s.exact);
    EXPECT_EQ(s.smoothness, 0);
    c.problem = "paradise";
    c.alpha = 0.0;
    const auto p = build_problem(c);
    ASSERT_TRUE(p.exact);
    EXPECT_EQ(p.problem.gamma, 1.0);
}

} // namespace
} // namespace nlfe::cli
