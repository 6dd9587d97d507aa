#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlfe {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A function handle produced a non-finite value.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& label, double t, double value);

    double where() const noexcept { return t_; }
    double value() const noexcept { return value_; }

private:
    double t_;
    double value_;
};

/// An argument fell outside the domain an operation accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input data violates a documented invariant. `violations()` lists each one.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    explicit ValidationError(const std::string& violation)
        : ValidationError(std::vector<std::string>{violation}) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Operation invoked on an object in the wrong state (e.g. converting a
/// problem that is already in nonhomogeneous form).
class StateError : public Error {
public:
    using Error::Error;
};

/// Base for failures of the numerics themselves (as opposed to bad input).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Elimination hit a pivot of magnitude below the singularity threshold.
class SingularMatrixError : public NumericalError {
public:
    SingularMatrixError(std::size_t step, double pivot, const std::string& context = {});

    std::size_t step() const noexcept { return step_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::size_t step_;
    double pivot_;
};

/// A requested computation exceeds a hard cost cap.
class CostGuardError : public Error {
public:
    using Error::Error;
};

/// Least-squares order fit could not be formed.
class FitError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace nlfe
