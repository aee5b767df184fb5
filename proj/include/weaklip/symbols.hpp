#pragma once

#include <functional>
#include <vector>

#include "weaklip/grid.hpp"
#include "weaklip/lipschitz.hpp"

namespace weaklip {

/// A homogeneous symbol on R^2 \ {0}, determined by its circle Fourier
/// coefficients alpha_k, |k| <= k_max. Symbols built from closed-form
/// rules additionally carry an exact angular evaluator; series evaluation
/// is the fallback.
class CircleSymbol {
public:
    /// coefficients[k + k_max] = alpha_k. A real-flagged symbol must satisfy
    /// alpha_{-k} = conj(alpha_k).
    CircleSymbol(std::vector<cplx> coefficients, int k_max, bool real_flag);

    int k_max() const { return k_max_; }
    cplx coefficient(int k) const;
    bool real_valued() const { return real_; }
    bool has_exact() const { return static_cast<bool>(exact_); }
    void attach_exact(std::function<double(double)> eval) { exact_ = std::move(eval); }

    cplx evaluate_angle(double theta) const;
    /// Homogeneous extension: value at angle atan2(y, x).
    cplx evaluate_point(double x, double y) const;

    /// max_k |alpha_k| (1+|k|)^3 — must be finite for the kernel series
    /// and its gradient to converge.
    double decay_certificate() const;
    /// max_k |alpha_k| (1+|k|)^4 — the enforced quartic-decay fit.
    double quartic_fit() const;

private:
    std::vector<cplx> coeffs_;
    int k_max_;
    bool real_;
    std::function<double(double)> exact_;
};

struct SampledSymbol {
    CircleSymbol symbol;
    double truncation_residual; // L2 mass beyond k_max
};

/// Circle Fourier analysis of samples on the uniform grid theta_j = 2 pi j / M.
/// Requires M >= 4 k_max (aliasing guard).
SampledSymbol symbol_from_samples(const std::vector<cplx>& samples, int k_max);

/// The homogeneous symbol equal to tan(theta) on the arcs |theta| <= pi/4
/// and |theta - pi| <= pi/4, bridged on the complementary arcs by a smooth
/// crossfade from tan to cot over a window of width `taper` (mean zero by
/// the odd symmetry of the construction; the residual circle mean is
/// subtracted exactly). Carries the exact evaluator.
CircleSymbol tan_symbol(double taper = M_PI / 16.0, int k_max = 64);

/// max over integers |i|,|j| <= range, i != j, of
/// |g(i-j, f(i)-f(j)) - f^[1](i,j)|. Throws, naming the pair, if some pair's
/// slope |f(i)-f(j)| / |i-j| reaches 1 (outside the tan arcs).
double symbol_divided_difference_deviation(const CircleSymbol& g, const LipschitzFn& f, int range);

/// Fourier-transform kernel of a homogeneous symbol restricted to an
/// annulus: K(z) = h(Arg z) / |z|^2 with
/// h(theta) = sum_{k != 0} (|k| / (2 pi i^k)) alpha_k e^{ik theta}.
/// The alpha_0 delta contribution is carried symbolically, never sampled.
struct AnnulusKernel {
    GridField field;
    double r_min = 0.0;
    double r_max = 0.0;
    cplx delta_coefficient{0.0, 0.0};
};
AnnulusKernel kernel_from_symbol(const CircleSymbol& g, const Grid& grid, double r_min,
                                 double r_max, double tail_tol = 1e-6);

/// Kernel decay constants: C0 = max |t|^2 |K(t)|, C1 = max |t|^3 |grad K(t)|
/// with the gradient by centered differences. Requires spacing <= r_min/16.
struct CzConstants {
    double c0 = 0.0;
    double c1 = 0.0;
};
CzConstants cz_condition_check(const AnnulusKernel& k);

/// Radial Schwartz-type cutoff: phi_m(t) = psi_{3m}(|t|) with
/// psi_s(r) = psi(r/s)(1 - psi(s r)) for the standard C-infinity bump psi
/// (1 on (-1,1), supported in (-2,2)). phi_m = 1 whenever |t| in (1/m, m),
/// vanishes near 0, and is supported in |t| <= 6m.
struct CutoffSymbol {
    int m = 1;
    double radial(double r) const;
    double operator()(double t1, double t2) const;
};
CutoffSymbol cutoff_symbol(int m);

/// Symbol sampled on a grid's frequency lattice by homogeneous extension,
/// optionally multiplied by a cutoff.
LatticeSymbol sample_circle_symbol(const Grid& g, const CircleSymbol& s);
LatticeSymbol sample_circle_symbol(const Grid& g, const CircleSymbol& s, const CutoffSymbol& cut);

} // namespace weaklip
