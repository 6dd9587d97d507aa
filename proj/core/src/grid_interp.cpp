#include "nlfe/grid_interp.hpp"

#include "nlfe/errors.hpp"
#include "nlfe/holder_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace nlfe {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

UniformGrid::UniformGrid(std::size_t n) : n_(n), h_(0.0) {
    if (n == 0) throw ValidationError("grid needs at least one subinterval");
    h_ = 1.0 / static_cast<double>(n);
    nodes_.resize(n + 1);
    const double denom = static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) nodes_[i] = static_cast<double>(i) / denom;
}

std::size_t UniformGrid::locate(double t) const {
    if (!(t >= -kClampTolerance && t <= 1.0 + kClampTolerance))
        throw DomainError("argument " + fmt(t) + " outside [0,1]");
    t = std::clamp(t, 0.0, 1.0);
    const double scaled = t * static_cast<double>(n_);
    std::size_t i = std::min(static_cast<std::size_t>(scaled), n_ - 1);
    // t*N may round across a node; settle against the stored nodes.
    while (i > 0 && t < nodes_[i]) --i;
    while (i + 1 < n_ && t >= nodes_[i + 1]) ++i;
    return i;
}

Stencil stencil_at(const UniformGrid& grid, double t) {
    const std::size_t i = grid.locate(t);
    t = std::clamp(t, 0.0, 1.0);
    const double a = grid.node(i);
    const double b = grid.node(i + 1);
    const double theta = (t - a) / (b - a);
    return Stencil{i, 1.0 - theta, theta};
}

PiecewiseLinear::PiecewiseLinear(UniformGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.node_count())
        throw ValidationError("piecewise-linear function needs " +
                              std::to_string(grid_.node_count()) + " values, got " +
                              std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw ValidationError("nodal value " + std::to_string(i) + " is not finite");
    }
}

double PiecewiseLinear::evaluate(double t) const {
    const Stencil s = stencil_at(grid_, t);
    if (s.w_right == 0.0) return values_[s.left];
    if (s.w_left == 0.0) return values_[s.left + 1];
    return s.w_left * values_[s.left] + s.w_right * values_[s.left + 1];
}

FunctionHandle PiecewiseLinear::as_function(std::string label) const {
    auto self = *this;
    return FunctionHandle([u = std::move(self)](double t) { return u.evaluate(t); },
                          std::move(label));
}

PiecewiseLinear project(const FunctionHandle& f, const UniformGrid& grid) {
    std::vector<double> values(grid.node_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
        try {
            values[i] = f(grid.node(i));
        } catch (const EvaluationError& e) {
            throw EvaluationError(f.label() + " at node " + std::to_string(i), e.where(), e.value());
        }
    }
    return PiecewiseLinear(grid, std::move(values));
}

double sup_error_bound(double norm_kgamma, double gamma, int k, double h) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in (0,1]");
    if (k != 0 && k != 1) throw ValidationError("smoothness index k must be 0 or 1");
    if (!(h > 0.0)) throw ValidationError("mesh width must be positive");
    const double kd = static_cast<double>(k);
    return std::pow(2.0, -gamma - (2.0 - gamma) * kd) * std::pow(h, kd + gamma) * norm_kgamma;
}

std::size_t default_interp_samples(const UniformGrid& grid) {
    return std::min<std::size_t>(32 * grid.n() + 1, kMaxInterpSamples);
}

InterpError measure_interp_error(const FunctionHandle& f, const UniformGrid& grid, std::size_t m,
                                 double gamma) {
    const PiecewiseLinear pf = project(f, grid);
    const auto t = uniform_samples(m);
    std::vector<double> err(m);
    InterpError out;
    out.sample_count = m;
    for (std::size_t i = 0; i < m; ++i) {
        err[i] = pf.evaluate(t[i]) - f(t[i]);
        out.sup_error = std::max(out.sup_error, std::abs(err[i]));
    }
    out.hoelder_error = std::abs(err.front()) + sampled_seminorm(t, err, gamma);
    return out;
}

InterpError measure_interp_error(const FunctionHandle& f, const UniformGrid& grid, double gamma) {
    return measure_interp_error(f, grid, default_interp_samples(grid), gamma);
}

ProjectorNormEstimate measure_projector_norm(double gamma, const UniformGrid& grid,
                                             std::span<const FunctionHandle> trials, std::size_t m) {
    if (trials.empty()) throw ValidationError("projector norm needs at least one trial function");
    const auto t = uniform_samples(m);
    ProjectorNormEstimate out;
    for (const auto& f : trials) {
        const auto fv = sample(f, t);
        const double f_norm = std::abs(fv.front()) + sampled_seminorm(t, fv, gamma);
        if (!(f_norm > 0.0)) {
            out.warnings.push_back("trial '" + f.label() + "' has zero sampled norm; skipped");
            continue;
        }
        const PiecewiseLinear pf = project(f, grid);
        std::vector<double> pv(m);
        for (std::size_t i = 0; i < m; ++i) pv[i] = pf.evaluate(t[i]);
        const double p_norm = std::abs(pv.front()) + sampled_seminorm(t, pv, gamma);
        out.ratio = std::max(out.ratio, p_norm / f_norm);
        ++out.trials_used;
    }
    return out;
}

void write_csv(std::ostream& os, const PiecewiseLinear& u) {
    os << "t,value\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < u.grid().node_count(); ++i)
        os << u.grid().node(i) << ',' << u.value(i) << '\n';
}

void write_csv_file(const std::string& path, const PiecewiseLinear& u) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    write_csv(os, u);
    if (!os) throw Error("write to '" + path + "' failed");
}

PiecewiseLinear read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,value") throw ValidationError("CSV header must be 't,value', got '" + line + "'");

    std::vector<double> ts;
    std::vector<double> vs;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError("CSV row " + std::to_string(row) + " lacks a comma");
        try {
            std::size_t used = 0;
            const std::string a = line.substr(0, comma);
            const std::string b = line.substr(comma + 1);
            ts.push_back(std::stod(a, &used));
            if (used != a.size()) throw std::invalid_argument(a);
            vs.push_back(std::stod(b, &used));
            if (used != b.size()) throw std::invalid_argument(b);
        } catch (const std::logic_error&) {
            throw ValidationError("CSV row " + std::to_string(row) + " is not numeric: '" + line + "'");
        }
    }
    if (ts.size() < 2) throw ValidationError("CSV needs at least two rows");

    UniformGrid grid(ts.size() - 1);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (std::abs(ts[i] - grid.node(i)) > kClampTolerance)
            throw ValidationError("CSV t column is not the uniform grid: row " +
                                  std::to_string(i + 2) + " has t = " + fmt(ts[i]) +
                                  ", expected " + fmt(grid.node(i)));
    }
    return PiecewiseLinear(std::move(grid), std::move(vs));
}

PiecewiseLinear read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path + "'");
    return read_csv(is);
}

} // namespace nlfe
