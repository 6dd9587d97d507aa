#pragma once

#include <functional>
#include <string>
#include <utility>

namespace nlfe {

/// A real-valued function on [0,1] paired with a short label.
///
/// Every call checks the result for finiteness and throws EvaluationError
/// (carrying the offending argument) otherwise, so downstream numerics never
/// see NaN or infinity from user callbacks.
class FunctionHandle {
public:
    using Callable = std::function<double(double)>;

    FunctionHandle(Callable eval, std::string label);

    double operator()(double t) const;

    const std::string& label() const noexcept { return label_; }

    /// Unchecked evaluation, for inner loops that validate in bulk.
    double raw(double t) const { return eval_(t); }

    static FunctionHandle constant(double c);
    static FunctionHandle identity();
    static FunctionHandle zero() { return constant(0.0); }

private:
    Callable eval_;
    std::string label_;
};

FunctionHandle operator+(const FunctionHandle& f, const FunctionHandle& g);
FunctionHandle operator-(const FunctionHandle& f, const FunctionHandle& g);
FunctionHandle operator*(const FunctionHandle& f, const FunctionHandle& g);
FunctionHandle operator*(double c, const FunctionHandle& f);

/// f∘g, i.e. t ↦ f(g(t)).
FunctionHandle compose(const FunctionHandle& f, const FunctionHandle& g);

} // namespace nlfe
