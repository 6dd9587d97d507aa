#include "nlfe/function.hpp"

#include "nlfe/errors.hpp"

#include <cmath>
#include <sstream>

namespace nlfe {

namespace {

std::string format_evaluation_error(const std::string& label, double t, double value) {
    std::ostringstream os;
    os.precision(17);
    os << "function '" << label << "' evaluated to " << value << " at t = " << t;
    return os.str();
}

std::string join_violations(const std::vector<std::string>& violations) {
    std::string out = "validation failed";
    for (const auto& v : violations) {
        out += "; ";
        out += v;
    }
    return out;
}

std::string format_singular(std::size_t step, double pivot, const std::string& context) {
    std::ostringstream os;
    os << "singular matrix: pivot " << pivot << " at elimination step " << step;
    if (!context.empty()) os << " (" << context << ")";
    return os.str();
}

} // namespace

EvaluationError::EvaluationError(const std::string& label, double t, double value)
    : Error(format_evaluation_error(label, t, value)), t_(t), value_(value) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

SingularMatrixError::SingularMatrixError(std::size_t step, double pivot, const std::string& context)
    : NumericalError(format_singular(step, pivot, context)), step_(step), pivot_(pivot) {}

FunctionHandle::FunctionHandle(Callable eval, std::string label)
    : eval_(std::move(eval)), label_(std::move(label)) {
    if (!eval_) throw ValidationError("function handle '" + label_ + "' has no callable");
}

double FunctionHandle::operator()(double t) const {
    const double v = eval_(t);
    if (!std::isfinite(v)) throw EvaluationError(label_, t, v);
    return v;
}

FunctionHandle FunctionHandle::constant(double c) {
    std::ostringstream os;
    os << c;
    return FunctionHandle([c](double) { return c; }, os.str());
}

FunctionHandle FunctionHandle::identity() {
    return FunctionHandle([](double t) { return t; }, "t");
}

FunctionHandle operator+(const FunctionHandle& f, const FunctionHandle& g) {
    return FunctionHandle([f, g](double t) { return f.raw(t) + g.raw(t); },
                          "(" + f.label() + " + " + g.label() + ")");
}

FunctionHandle operator-(const FunctionHandle& f, const FunctionHandle& g) {
    return FunctionHandle([f, g](double t) { return f.raw(t) - g.raw(t); },
                          "(" + f.label() + " - " + g.label() + ")");
}

FunctionHandle operator*(const FunctionHandle& f, const FunctionHandle& g) {
    return FunctionHandle([f, g](double t) { return f.raw(t) * g.raw(t); },
                          f.label() + "*" + g.label());
}

FunctionHandle operator*(double c, const FunctionHandle& f) {
    std::ostringstream os;
    os << c << "*" << f.label();
    return FunctionHandle([c, f](double t) { return c * f.raw(t); }, os.str());
}

FunctionHandle compose(const FunctionHandle& f, const FunctionHandle& g) {
    return FunctionHandle([f, g](double t) { return f.raw(g.raw(t)); },
                          f.label() + "(" + g.label() + ")");
}

} // namespace nlfe
