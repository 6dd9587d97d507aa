#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlfe {

/// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> entries() const noexcept { return data_; }

    std::vector<double> multiply(std::span<const double> x) const;
    /// Max absolute row sum.
    double norm_inf() const;
    std::size_t nonzeros() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Pivots with magnitude below this are treated as zero.
inline constexpr double kSingularPivot = 1e-300;

/// LU factorization with row (partial) pivoting, PA = LU, stored in place.
class LuFactorization {
public:
    /// Throws SingularMatrixError carrying the elimination step on pivot breakdown.
    explicit LuFactorization(DenseMatrix a);

    std::size_t size() const noexcept { return lu_.rows(); }
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

std::vector<double> solve(DenseMatrix a, std::span<const double> rhs);

/// Largest dimension accepted by condition_estimate.
inline constexpr std::size_t kMaxConditionDimension = 4097;

/// ||A||_∞ ||A^{-1}||_∞ with A^{-1} formed column by column.
/// Returns +infinity if A is singular.
double condition_estimate(const DenseMatrix& a);

} // namespace nlfe
