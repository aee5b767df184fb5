#include "weaklip/lipschitz.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace weaklip {

namespace {

// Sampled certificate for the declared constant. The extra absolute slack
// absorbs rounding in f itself when sample points land very close together.
void certify(const std::string& name, const std::function<double(double)>& f, double constant) {
    if (!(constant >= 0.0) || !std::isfinite(constant))
        throw std::invalid_argument("LipschitzFn " + name + ": constant must be finite and >= 0");
    std::mt19937_64 rng(0x11735c7a5eed1ULL);
    const auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53 * 32.0 - 16.0; };
    for (int i = 0; i < 10000; ++i) {
        const double a = uniform();
        const double b = uniform();
        const double fa = f(a);
        const double fb = f(b);
        if (!std::isfinite(fa) || !std::isfinite(fb))
            throw std::invalid_argument("LipschitzFn " + name + ": non-finite sample value");
        const double lhs = std::abs(fa - fb);
        const double rhs = constant * std::abs(a - b);
        const double slack = 1e-12 * rhs + 4e-16 * (std::abs(fa) + std::abs(fb) + constant);
        if (lhs > rhs + slack) {
            std::ostringstream os;
            os << "LipschitzFn " << name << ": sampled pair (" << a << ", " << b
               << ") violates the declared constant " << constant;
            throw std::invalid_argument(os.str());
        }
    }
}

} // namespace

LipschitzFn::LipschitzFn(std::string name, std::function<double(double)> eval, double constant)
    : name_(std::move(name)), eval_(std::move(eval)), constant_(constant) {
    certify(name_, eval_, constant_);
}

double PiecewiseLinear::operator()(double t) const {
    // Integrate slopes away from the anchor breakpoints[0], where f = 0.
    const double anchor = breakpoints[0];
    if (t < anchor)
        return slopes[0] * (t - anchor);
    double x = anchor;
    double y = 0.0;
    size_t seg = 1;
    while (seg < breakpoints.size() && breakpoints[seg] <= t) {
        y += slopes[seg] * (breakpoints[seg] - x);
        x = breakpoints[seg];
        ++seg;
    }
    return y + slopes[seg] * (t - x);
}

void PiecewiseLinear::write_csv(std::ostream& os) const {
    os << "breakpoint,left_slope\n";
    char buf[80];
    for (size_t i = 0; i < breakpoints.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", breakpoints[i], slopes[i]);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g\n", slopes.back());
    os << buf;
}

PiecewiseLinear PiecewiseLinear::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "breakpoint,left_slope")
        throw std::invalid_argument("PiecewiseLinear: missing header");
    PiecewiseLinear p;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("PiecewiseLinear: malformed row '" + line + "'");
        const std::string left = line.substr(0, comma);
        const double slope = std::stod(line.substr(comma + 1));
        if (left.empty()) {
            p.slopes.push_back(slope); // trailing slope row
        } else {
            p.breakpoints.push_back(std::stod(left));
            p.slopes.push_back(slope);
        }
    }
    if (p.slopes.size() != p.breakpoints.size() + 1 || p.breakpoints.empty())
        throw std::invalid_argument("PiecewiseLinear: inconsistent row counts");
    return p;
}

namespace catalog {

LipschitzFn identity() {
    return {"identity", [](double t) { return t; }, 1.0};
}

LipschitzFn abs() {
    return {"abs", [](double t) { return std::abs(t); }, 1.0};
}

LipschitzFn sine() {
    return {"sin", [](double t) { return std::sin(t); }, 1.0};
}

LipschitzFn soft_abs(double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("soft_abs: eps must be positive");
    return {"soft_abs", [eps](double t) { return std::hypot(t, eps); }, 1.0};
}

LipschitzFn piecewise_linear(std::vector<double> breakpoints, std::vector<double> slopes) {
    if (breakpoints.empty() || slopes.size() != breakpoints.size() + 1)
        throw std::invalid_argument("piecewise_linear: need m breakpoints and m+1 slopes");
    for (size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw std::invalid_argument("piecewise_linear: breakpoints must be strictly increasing");
    double constant = 0.0;
    for (double s : slopes)
        constant = std::max(constant, std::abs(s));
    PiecewiseLinear rule{std::move(breakpoints), std::move(slopes)};
    return {"piecewise_linear", rule, constant};
}

LipschitzFn scaled(const LipschitzFn& f, double a, double b) {
    return {"scaled(" + f.name() + ")",
            [f, a, b](double t) { return a * f(b * t); },
            std::abs(a * b) * f.lipschitz_constant()};
}

} // namespace catalog

LipschitzFn catalog_lookup(const std::string& name) {
    if (name == "identity")
        return catalog::identity();
    if (name == "abs")
        return catalog::abs();
    if (name == "sin")
        return catalog::sine();
    if (name == "soft_abs")
        return catalog::soft_abs(0.1);
    if (name == "piecewise")
        return catalog::piecewise_linear({-0.5, 0.5}, {1.0, -1.0, 1.0});
    throw std::invalid_argument("catalog_lookup: unknown function '" + name + "'");
}

LipschitzFn rescale(const LipschitzFn& f, double n) {
    if (!(n > 0.0))
        throw std::invalid_argument("rescale: n must be positive");
    return {f.name(), [f, n](double t) { return n * f(t / n); }, f.lipschitz_constant()};
}

double estimate_constant(const LipschitzFn& f, double lo, double hi, int samples) {
    if (samples < 2)
        throw std::invalid_argument("estimate_constant: need at least 2 samples");
    if (!(hi > lo))
        throw std::invalid_argument("estimate_constant: degenerate interval");
    const double step = (hi - lo) / (samples - 1);
    double best = 0.0;
    double prev_x = lo;
    double prev_y = f(lo);
    for (int i = 1; i < samples; ++i) {
        const double x = lo + i * step;
        const double y = f(x);
        best = std::max(best, std::abs(y - prev_y) / (x - prev_x));
        prev_x = x;
        prev_y = y;
    }
    return best;
}

} // namespace weaklip
