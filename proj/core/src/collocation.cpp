#include "nlfe/collocation.hpp"

#include "nlfe/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

namespace nlfe {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Stencil checked_stencil(const UniformGrid& grid, double x, const char* which, std::size_t node) {
    try {
        return stencil_at(grid, x);
    } catch (const DomainError&) {
        std::ostringstream os;
        os.precision(17);
        os << which << "(t_" << node << ") = " << x << " lies outside [0,1]";
        throw DomainError(os.str());
    }
}

} // namespace

CollocationSystem assemble(const ProblemSpec& p, const UniformGrid& grid) {
    const std::size_t n = grid.n();
    if (n < 2) throw ValidationError("collocation needs at least 2 subintervals");
    const std::size_t dim = n - 1;
    CollocationSystem sys{DenseMatrix(dim, dim), std::vector<double>(dim, 0.0), 0};

    const double boundary[2] = {p.boundary_left, p.boundary_right};
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t row = i - 1;
        const double t = grid.node(i);
        const double w = p.phi(t);
        sys.matrix(row, row) += 1.0;
        sys.rhs[row] += p.source_at(t);

        const Stencil delayed[2] = {checked_stencil(grid, p.phi1(t), "phi1", i),
                                    checked_stencil(grid, p.phi2(t), "phi2", i)};
        const double coefficient[2] = {w, 1.0 - w};
        for (int d = 0; d < 2; ++d) {
            const Stencil& s = delayed[d];
            const std::size_t nodes[2] = {s.left, s.left + 1};
            const double weights[2] = {s.w_left, s.w_right};
            for (int e = 0; e < 2; ++e) {
                const double c = coefficient[d] * weights[e];
                if (c == 0.0) continue;
                const std::size_t q = nodes[e];
                if (q == 0) {
                    sys.rhs[row] += c * boundary[0];
                } else if (q == n) {
                    sys.rhs[row] += c * boundary[1];
                } else {
                    sys.matrix(row, q - 1) -= c;
                }
            }
        }
    }
    sys.nonzeros = sys.matrix.nonzeros();
    return sys;
}

double interior_residual(const ProblemSpec& p, const PiecewiseLinear& u) {
    const auto& grid = u.grid();
    double worst = 0.0;
    for (std::size_t i = 1; i < grid.n(); ++i) {
        const double t = grid.node(i);
        const double w = p.phi(t);
        const double r = u.value(i) - w * u.evaluate(p.phi1(t)) -
                         (1.0 - w) * u.evaluate(p.phi2(t)) - p.source_at(t);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

CollocationSolution solve_collocation(const ProblemSpec& p, std::size_t n,
                                      const CollocationOptions& options) {
    if (options.validate_problem) validate(p);
    const UniformGrid grid(n);

    auto start = Clock::now();
    CollocationSystem sys = assemble(p, grid);
    AssemblyStats stats;
    stats.nonzeros = sys.nonzeros;
    stats.assembly_seconds = seconds_since(start);

    std::optional<double> condition;
    if (n <= options.condition_limit) condition = condition_estimate(sys.matrix);

    start = Clock::now();
    std::vector<double> interior;
    try {
        interior = LuFactorization(std::move(sys.matrix)).solve(sys.rhs);
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError(e.step(), e.pivot(),
                                  "collocation system for '" + p.label + "' with N = " +
                                      std::to_string(n) +
                                      "; check the contraction certificate");
    }
    stats.solve_seconds = seconds_since(start);

    std::vector<double> values;
    values.reserve(n + 1);
    values.push_back(p.boundary_left);
    values.insert(values.end(), interior.begin(), interior.end());
    values.push_back(p.boundary_right);

    CollocationSolution out{PiecewiseLinear(grid, std::move(values)), condition, stats, 0.0};
    out.max_interior_residual = interior_residual(p, out.solution);

    double scale = 1.0;
    for (double v : out.solution.values()) scale = std::max(scale, std::abs(v));
    if (!(out.max_interior_residual <= options.residual_tolerance * scale)) {
        std::ostringstream os;
        os << "collocation residual " << out.max_interior_residual << " exceeds tolerance "
           << options.residual_tolerance * scale << " at N = " << n;
        if (out.condition) os << " (condition estimate " << *out.condition << ")";
        throw NumericalError(os.str());
    }
    return out;
}

void write_stats(std::ostream& os, const CollocationSolution& s) {
    const auto old = os.precision(17);
    os << "n=" << s.grid().n() << '\n'
       << "nonzeros=" << s.stats.nonzeros << '\n'
       << "assembly_seconds=" << s.stats.assembly_seconds << '\n'
       << "solve_seconds=" << s.stats.solve_seconds << '\n'
       << "condition=";
    if (s.condition) os << *s.condition;
    else os << "skipped";
    os << '\n' << "max_interior_residual=" << s.max_interior_residual << '\n';
    os.precision(old);
}

} // namespace nlfe
