#pragma once

#include "nlfe/function.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nlfe {

/// Arguments within this distance outside [0,1] are clamped onto it.
inline constexpr double kClampTolerance = 1e-12;

/// Uniform mesh t_i = i/N on [0,1], i = 0..N.
class UniformGrid {
public:
    explicit UniformGrid(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    std::size_t node_count() const noexcept { return n_ + 1; }
    double node(std::size_t i) const { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Index i of the subinterval [t_i, t_{i+1}] containing t, with
    /// node(i) <= t < node(i+1) except t = 1, which maps to N-1.
    /// Clamps within kClampTolerance, throws DomainError beyond.
    std::size_t locate(double t) const;

    bool operator==(const UniformGrid& other) const noexcept { return n_ == other.n_; }

private:
    std::size_t n_;
    double h_;
    std::vector<double> nodes_;
};

/// Two-point interpolation weights at an argument: value = w_left*u[left] + w_right*u[left+1].
struct Stencil {
    std::size_t left = 0;
    double w_left = 1.0;
    double w_right = 0.0;
};

Stencil stencil_at(const UniformGrid& grid, double t);

/// Continuous piecewise-linear function given by nodal values on a uniform grid.
class PiecewiseLinear {
public:
    PiecewiseLinear(UniformGrid grid, std::vector<double> values);

    const UniformGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double value(std::size_t i) const { return values_[i]; }

    /// Exact at nodes; linear in between.
    double evaluate(double t) const;
    double operator()(double t) const { return evaluate(t); }

    FunctionHandle as_function(std::string label = "P_h u") const;

private:
    UniformGrid grid_;
    std::vector<double> values_;
};

/// Interpolant P_h f: nodal values f(t_i).
PiecewiseLinear project(const FunctionHandle& f, const UniformGrid& grid);

/// Interpolation error bound 2^{-γ-(2-γ)k} h^{k+γ} ||u||_{k,γ}, k ∈ {0,1}.
double sup_error_bound(double norm_kgamma, double gamma, int k, double h);

struct InterpError {
    double sup_error = 0.0;
    double hoelder_error = 0.0;  ///< sampled γ-norm of P_h f - f
    std::size_t sample_count = 0;
};

/// Default error sample count: 32N + 1, capped at kMaxInterpSamples.
inline constexpr std::size_t kMaxInterpSamples = 4097;
std::size_t default_interp_samples(const UniformGrid& grid);

InterpError measure_interp_error(const FunctionHandle& f, const UniformGrid& grid,
                                 std::size_t m, double gamma);
InterpError measure_interp_error(const FunctionHandle& f, const UniformGrid& grid, double gamma);

struct ProjectorNormEstimate {
    double ratio = 0.0;            ///< max sampled ||P_h f||_γ / ||f||_γ
    std::size_t trials_used = 0;
    std::vector<std::string> warnings;
};

/// Lower bound on the operator norm of P_h on H^γ from a trial set.
ProjectorNormEstimate measure_projector_norm(double gamma, const UniformGrid& grid,
                                             std::span<const FunctionHandle> trials, std::size_t m);

/// CSV with header "t,value", 17 significant digits.
void write_csv(std::ostream& os, const PiecewiseLinear& u);
void write_csv_file(const std::string& path, const PiecewiseLinear& u);
/// Parses write_csv output; rejects non-uniform or unsorted t columns.
PiecewiseLinear read_csv(std::istream& is);
PiecewiseLinear read_csv_file(const std::string& path);

} // namespace nlfe
