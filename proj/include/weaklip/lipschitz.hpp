#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace weaklip {

/// A real Lipschitz function together with its Lipschitz constant.
///
/// Catalog entries carry the exact constant; user-supplied rules must
/// declare a bound, which registration checks against 10^4 sampled pairs
/// (1e-12 relative tolerance). Only real-valued functions are admitted so
/// that f(A) stays Hermitian.
class LipschitzFn {
public:
    LipschitzFn(std::string name, std::function<double(double)> eval, double lipschitz_constant);

    double operator()(double t) const { return eval_(t); }
    const std::string& name() const { return name_; }
    double lipschitz_constant() const { return constant_; }

private:
    std::string name_;
    std::function<double(double)> eval_;
    double constant_;
};

/// Piecewise-linear rule anchored at f(breakpoints[0]) = 0, with
/// slopes[i] on the i-th interval (slopes.size() == breakpoints.size() + 1).
///
/// Serializes as CSV rows "breakpoint,left_slope" plus a trailing slope row.
struct PiecewiseLinear {
    std::vector<double> breakpoints; // strictly increasing
    std::vector<double> slopes;

    double operator()(double t) const;
    void write_csv(std::ostream& os) const;
    static PiecewiseLinear read_csv(std::istream& is);
};

namespace catalog {

LipschitzFn identity();
LipschitzFn abs();
LipschitzFn sine();
/// sqrt(t^2 + eps^2), constant 1.
LipschitzFn soft_abs(double eps);
LipschitzFn piecewise_linear(std::vector<double> breakpoints, std::vector<double> slopes);
/// t -> a f(b t), constant |a b| L_f.
LipschitzFn scaled(const LipschitzFn& f, double a, double b);

} // namespace catalog

/// Resolves a CLI/catalog name: identity, abs, sin, soft_abs (eps 0.1),
/// piecewise (the pinned double-kink tent). Unknown names are rejected.
LipschitzFn catalog_lookup(const std::string& name);

/// t -> n f(t/n). Lipschitz constant unchanged; divided differences are
/// covariant: (n sigma_n f)^{[1]}(n a, n b) = f^{[1]}(a, b).
LipschitzFn rescale(const LipschitzFn& f, double n);

/// Max sampled slope |f(a)-f(b)|/|a-b| over adjacent points of a uniform
/// grid on [lo, hi]; a certified lower bound on the Lipschitz constant.
double estimate_constant(const LipschitzFn& f, double lo, double hi, int samples);

} // namespace weaklip
