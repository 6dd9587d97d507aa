#include "nlfe/dense_linalg.hpp"

#include "nlfe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace nlfe {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        throw ValidationError("matrix entries: expected " + std::to_string(rows * cols) + ", got " +
                              std::to_string(data_.size()));
    for (double v : data_) {
        if (!std::isfinite(v)) throw ValidationError("matrix entries must be finite");
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
    if (x.size() != cols_) throw ValidationError("matrix-vector size mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto r = row(i);
        y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
    }
    return y;
}

double DenseMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (double v : row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

std::size_t DenseMatrix::nonzeros() const {
    return static_cast<std::size_t>(
        std::count_if(data_.begin(), data_.end(), [](double v) { return v != 0.0; }));
}

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    if (!lu_.square()) throw ValidationError("LU factorization needs a square matrix");
    const std::size_t n = lu_.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best < kSingularPivot) throw SingularMatrixError(k, best);
        if (p != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
            std::swap(perm_[k], perm_[p]);
        }

        const double pivot = lu_(k, k);
        const auto pivot_row = lu_.row(k);
        // Collocation rows are sparse, so most multipliers are exactly zero.
        for (std::size_t i = k + 1; i < n; ++i) {
            double& lik = lu_(i, k);
            if (lik == 0.0) continue;
            lik /= pivot;
            const double m = lik;
            auto r = lu_.row(i);
            for (std::size_t j = k + 1; j < n; ++j) r[j] -= m * pivot_row[j];
        }
    }
}

std::vector<double> LuFactorization::solve(std::span<const double> rhs) const {
    const std::size_t n = lu_.rows();
    if (rhs.size() != n) throw ValidationError("right-hand side length does not match matrix");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    // Forward substitution with unit-diagonal L.
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = lu_.row(i);
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= r[j] * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        const auto r = lu_.row(i);
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= r[j] * x[j];
        x[i] = s / r[i];
    }
    return x;
}

std::vector<double> solve(DenseMatrix a, std::span<const double> rhs) {
    if (!a.square()) throw ValidationError("solve needs a square matrix");
    if (rhs.size() != a.rows()) throw ValidationError("right-hand side length does not match matrix");
    return LuFactorization(std::move(a)).solve(rhs);
}

double condition_estimate(const DenseMatrix& a) {
    if (!a.square()) throw ValidationError("condition estimate needs a square matrix");
    const std::size_t n = a.rows();
    if (n > kMaxConditionDimension)
        throw ValidationError("condition estimate limited to dimension " +
                              std::to_string(kMaxConditionDimension));
    if (n == 0) return 1.0;
    try {
        const LuFactorization lu(a);
        std::vector<double> inv_row_sums(n, 0.0);
        std::vector<double> e(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            e[j] = 1.0;
            const auto col = lu.solve(e);
            e[j] = 0.0;
            for (std::size_t i = 0; i < n; ++i) inv_row_sums[i] += std::abs(col[i]);
        }
        const double inv_norm = *std::max_element(inv_row_sums.begin(), inv_row_sums.end());
        return a.norm_inf() * inv_norm;
    } catch (const SingularMatrixError&) {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace nlfe
