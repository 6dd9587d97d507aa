#pragma once

// Piecewise-linear collocation for f = Tf + k with prescribed boundary values.
//
// The ansatz is continuous and linear on each [t_{i-1}, t_i], so it is fully
// described by its nodal values u_0..u_N. Boundary conditions pin u_0 and u_N
// and continuity is automatic, leaving the N-1 collocation equations
//
//     u_i - φ(t_i)·(P_h u)(φ₁(t_i)) - (1-φ(t_i))·(P_h u)(φ₂(t_i)) = k(t_i)
//
// in the interior unknowns. Each (P_h u)(x) touches at most two nodal
// values, so each row has at most five nonzeros.

#include "nlfe/dense_linalg.hpp"
#include "nlfe/grid_interp.hpp"
#include "nlfe/problem.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace nlfe {

struct CollocationSystem {
    DenseMatrix matrix;        ///< (N-1)×(N-1), unknowns u_1..u_{N-1}
    std::vector<double> rhs;
    std::size_t nonzeros = 0;
};

/// Throws DomainError (naming the node) if φ₁ or φ₂ leaves [0,1] beyond the clamp tolerance.
CollocationSystem assemble(const ProblemSpec& p, const UniformGrid& grid);

struct AssemblyStats {
    std::size_t nonzeros = 0;
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
};

struct CollocationSolution {
    PiecewiseLinear solution;
    std::optional<double> condition;  ///< only computed for N <= condition_limit
    AssemblyStats stats;
    double max_interior_residual = 0.0;

    const UniformGrid& grid() const noexcept { return solution.grid(); }
};

struct CollocationOptions {
    std::size_t condition_limit = 512;
    /// Interior residual tolerance, relative to max(1, max|u_i|).
    double residual_tolerance = 1e-9;
    bool validate_problem = true;
};

/// Solves the collocation system. Singular systems surface as SingularMatrixError;
/// an interior residual above tolerance raises NumericalError.
CollocationSolution solve_collocation(const ProblemSpec& p, std::size_t n,
                                      const CollocationOptions& options = {});

/// max_i |u_i - (T f_h)(t_i) - k(t_i)| over interior nodes.
double interior_residual(const ProblemSpec& p, const PiecewiseLinear& u);

/// "key=value" lines: n, nonzeros, assembly_seconds, solve_seconds, condition, max_interior_residual.
void write_stats(std::ostream& os, const CollocationSolution& s);

} // namespace nlfe
