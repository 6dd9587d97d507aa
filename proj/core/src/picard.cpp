#include "nlfe/picard.hpp"

#include "nlfe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace nlfe {

namespace {

struct ExactRecursion {
    const ProblemSpec& p;
    const FunctionHandle& f0;
    std::uint64_t initial = 0;
    std::uint64_t coefficient = 0;

    double operator()(int depth, double t) {
        if (depth == 0) {
            ++initial;
            return f0(t);
        }
        ++coefficient;
        const double w = p.phi(t);
        const double x1 = p.phi1(t);
        const double x2 = p.phi2(t);
        const double k = p.source_at(t);
        return w * (*this)(depth - 1, x1) + (1.0 - w) * (*this)(depth - 1, x2) + k;
    }
};

struct NodeUpdate {
    double weight = 0.0;
    Stencil first;
    Stencil second;
    double source = 0.0;
};

double interpolate(std::span<const double> u, const Stencil& s) {
    if (s.w_right == 0.0) return u[s.left];
    if (s.w_left == 0.0) return u[s.left + 1];
    return s.w_left * u[s.left] + s.w_right * u[s.left + 1];
}

} // namespace

ExactPicardResult picard_exact_counted(const ProblemSpec& p, const FunctionHandle& f0, int depth,
                                       double t) {
    if (depth < 0) throw ValidationError("Picard depth must be non-negative");
    if (depth > kMaxExactPicardDepth)
        throw CostGuardError("exact Picard depth " + std::to_string(depth) + " exceeds cap " +
                             std::to_string(kMaxExactPicardDepth) + " (cost 2^depth evaluations)");
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("exact Picard argument must lie in [0,1]");
    ExactRecursion rec{p, f0};
    ExactPicardResult r;
    r.value = rec(depth, t);
    r.initial_evaluations = rec.initial;
    r.coefficient_evaluations = rec.coefficient;
    return r;
}

double picard_exact(const ProblemSpec& p, const FunctionHandle& f0, int depth, double t) {
    return picard_exact_counted(p, f0, depth, t).value;
}

PiecewiseLinear boundary_interpolant(const ProblemSpec& p, const UniformGrid& grid) {
    std::vector<double> v(grid.node_count());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = grid.node(i);
        v[i] = (1.0 - t) * p.boundary_left + t * p.boundary_right;
    }
    v.front() = p.boundary_left;
    v.back() = p.boundary_right;
    return PiecewiseLinear(grid, std::move(v));
}

PicardTrace picard_grid(const ProblemSpec& p, const UniformGrid& grid, const PiecewiseLinear& f0,
                        double tol, std::size_t max_iter, const PicardOptions& options) {
    if (!(tol > 0.0)) throw ValidationError("Picard tolerance must be positive");
    if (!(f0.grid() == grid)) throw ValidationError("initial iterate lives on a different grid");
    if (f0.value(0) != p.boundary_left || f0.value(grid.n()) != p.boundary_right)
        throw ValidationError("initial iterate does not match the boundary values");

    const std::size_t n = grid.n();
    std::vector<NodeUpdate> updates(n + 1);
    for (std::size_t i = 1; i < n; ++i) {
        const double t = grid.node(i);
        updates[i] = NodeUpdate{p.phi(t), stencil_at(grid, p.phi1(t)), stencil_at(grid, p.phi2(t)),
                                p.source_at(t)};
    }

    PicardTrace trace{f0, {}, {}, {}, false, false};
    if (options.record_iterates) trace.iterates.push_back(f0);

    std::vector<double> current(f0.values().begin(), f0.values().end());
    std::vector<double> next = current;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        double increment = 0.0;
        // Jacobi: every node reads only the frozen previous iterate.
        for (std::size_t i = 1; i < n; ++i) {
            const NodeUpdate& u = updates[i];
            next[i] = u.weight * interpolate(current, u.first) +
                      (1.0 - u.weight) * interpolate(current, u.second) + u.source;
            increment = std::max(increment, std::abs(next[i] - current[i]));
        }
        if (!std::isfinite(increment))
            throw NumericalError("Picard iteration diverged at sweep " + std::to_string(iter + 1));
        current.swap(next);
        if (!trace.increments.empty()) {
            const double prev = trace.increments.back();
            trace.contraction_ratios.push_back(prev > 0.0 ? increment / prev : 0.0);
        }
        trace.increments.push_back(increment);
        if (options.record_iterates) trace.iterates.emplace_back(grid, current);
        if (increment < tol) {
            trace.converged = true;
            break;
        }
    }
    trace.reached_max_iter = !trace.converged;
    trace.solution = PiecewiseLinear(grid, std::move(current));
    return trace;
}

void write_trace_csv(std::ostream& os, const PicardTrace& trace) {
    const auto old = os.precision(17);
    os << "iteration,increment,ratio\n";
    for (std::size_t i = 0; i < trace.increments.size(); ++i) {
        os << (i + 1) << ',' << trace.increments[i] << ',';
        if (i > 0) os << trace.contraction_ratios[i - 1];
        os << '\n';
    }
    os.precision(old);
}

} // namespace nlfe
