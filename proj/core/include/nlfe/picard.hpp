#pragma once

#include "nlfe/function.hpp"
#include "nlfe/grid_interp.hpp"
#include "nlfe/problem.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nlfe {

/// Hard cap on exact-Picard depth; the cost is 2^depth evaluations of f0.
inline constexpr int kMaxExactPicardDepth = 25;

struct ExactPicardResult {
    double value = 0.0;
    std::uint64_t initial_evaluations = 0;      ///< calls into f0 (2^depth)
    std::uint64_t coefficient_evaluations = 0;  ///< points where φ, φ₁, φ₂, k are read (2^depth - 1)
    /// Nodes of the recursion tree: 2^{depth+1} - 1.
    std::uint64_t path_evaluations() const { return initial_evaluations + coefficient_evaluations; }
};

/// f_depth(t) for f_n = T f_{n-1} + k by direct recursion. No memoization: the
/// exponential cost is the point. Throws CostGuardError for depth > kMaxExactPicardDepth.
ExactPicardResult picard_exact_counted(const ProblemSpec& p, const FunctionHandle& f0, int depth,
                                       double t);
double picard_exact(const ProblemSpec& p, const FunctionHandle& f0, int depth, double t);

struct PicardTrace {
    PiecewiseLinear solution;                 ///< last iterate
    std::vector<PiecewiseLinear> iterates;    ///< f_0, f_1, ... when recorded
    std::vector<double> increments;           ///< ||u^{n+1} - u^n||_∞ over nodes
    std::vector<double> contraction_ratios;   ///< increments[n+1] / increments[n]
    bool converged = false;
    bool reached_max_iter = false;
    std::size_t iterations() const { return increments.size(); }
};

struct PicardOptions {
    bool record_iterates = false;
};

/// Jacobi sweeps u_i ← φ(t_i) u(φ₁(t_i)) + (1-φ(t_i)) u(φ₂(t_i)) + k(t_i) at interior
/// nodes, boundary values pinned, until the max-norm increment drops below tol.
/// Hitting max_iter returns the partial trace with reached_max_iter set.
PicardTrace picard_grid(const ProblemSpec& p, const UniformGrid& grid, const PiecewiseLinear& f0,
                        double tol, std::size_t max_iter, const PicardOptions& options = {});

/// Linear interpolant of the boundary data on the grid (the identity for the original form).
PiecewiseLinear boundary_interpolant(const ProblemSpec& p, const UniformGrid& grid);

/// CSV "iteration,increment,ratio"; ratio is empty on the first row.
void write_trace_csv(std::ostream& os, const PicardTrace& trace);

} // namespace nlfe
