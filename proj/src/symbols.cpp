#include "weaklip/symbols.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace weaklip {

namespace {

// C-infinity step: 0 for u <= 0, 1 for u >= 1, exp(-1/u)-flat at both ends.
double smooth_step(double u) {
    if (u <= 0.0)
        return 0.0;
    if (u >= 1.0)
        return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

// i^k on the unit circle, k of either sign.
cplx i_power(int k) {
    static const cplx table[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    int r = k % 4;
    if (r < 0)
        r += 4;
    return table[r];
}

} // namespace

CircleSymbol::CircleSymbol(std::vector<cplx> coefficients, int k_max, bool real_flag)
    : coeffs_(std::move(coefficients)), k_max_(k_max), real_(real_flag) {
    if (k_max_ <= 0)
        throw std::invalid_argument("CircleSymbol: k_max must be positive");
    if (coeffs_.size() != static_cast<size_t>(2 * k_max_ + 1))
        throw std::invalid_argument("CircleSymbol: need 2 k_max + 1 coefficients");
    if (real_) {
        double scale = 0.0;
        for (const cplx& c : coeffs_)
            scale = std::max(scale, std::abs(c));
        for (int k = 1; k <= k_max_; ++k)
            if (std::abs(coefficient(-k) - std::conj(coefficient(k))) > 1e-10 * (1.0 + scale))
                throw std::invalid_argument(
                    "CircleSymbol: real flag demands alpha_{-k} = conj(alpha_k)");
    }
}

cplx CircleSymbol::coefficient(int k) const {
    if (k < -k_max_ || k > k_max_)
        return {0.0, 0.0};
    return coeffs_[static_cast<size_t>(k + k_max_)];
}

cplx CircleSymbol::evaluate_angle(double theta) const {
    if (exact_)
        return {exact_(theta), 0.0};
    cplx acc = coefficient(0);
    const cplx z = std::polar(1.0, theta);
    cplx zk{1.0, 0.0};
    for (int k = 1; k <= k_max_; ++k) {
        zk *= z;
        acc += coefficient(k) * zk + coefficient(-k) * std::conj(zk);
    }
    return acc;
}

cplx CircleSymbol::evaluate_point(double x, double y) const {
    return evaluate_angle(std::atan2(y, x));
}

double CircleSymbol::decay_certificate() const {
    double c = 0.0;
    for (int k = -k_max_; k <= k_max_; ++k) {
        const double w = 1.0 + std::abs(k);
        c = std::max(c, std::abs(coefficient(k)) * w * w * w);
    }
    return c;
}

double CircleSymbol::quartic_fit() const {
    double c = 0.0;
    for (int k = -k_max_; k <= k_max_; ++k) {
        const double w = 1.0 + std::abs(k);
        c = std::max(c, std::abs(coefficient(k)) * w * w * w * w);
    }
    return c;
}

SampledSymbol symbol_from_samples(const std::vector<cplx>& samples, int k_max) {
    const size_t m = samples.size();
    if (m < static_cast<size_t>(4 * k_max))
        throw std::invalid_argument("symbol_from_samples: need at least 4 k_max samples");
    std::vector<cplx> coeffs(static_cast<size_t>(2 * k_max + 1));
    double imag_scale = 0.0, mag_scale = 0.0;
    for (const cplx& v : samples) {
        imag_scale = std::max(imag_scale, std::abs(v.imag()));
        mag_scale = std::max(mag_scale, std::abs(v));
    }
    for (int k = -k_max; k <= k_max; ++k) {
        cplx acc = 0.0;
        for (size_t j = 0; j < m; ++j) {
            const double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(m);
            acc += samples[j] * std::polar(1.0, -k * theta);
        }
        coeffs[static_cast<size_t>(k + k_max)] = acc / static_cast<double>(m);
    }
    double l2 = 0.0;
    for (const cplx& v : samples)
        l2 += std::norm(v);
    l2 /= static_cast<double>(m);
    for (const cplx& c : coeffs)
        l2 -= std::norm(c);
    const bool real_flag = imag_scale <= 1e-12 * (1.0 + mag_scale);
    return {CircleSymbol(std::move(coeffs), k_max, real_flag), std::sqrt(std::max(l2, 0.0))};
}

CircleSymbol tan_symbol(double taper, int k_max) {
    if (!(taper > 0.0) || !(taper < M_PI / 4.0))
        throw std::invalid_argument("tan_symbol: taper must lie in (0, pi/4)");
    // tan on |u| <= pi/4 (mod pi), then a crossfade to cot, which matches
    // the mandated values +-1 at the arc endpoints and is bounded by 1 in
    // magnitude on the complementary arcs. Both branches are odd, so the
    // circle mean vanishes by symmetry.
    auto raw = [taper](double theta) {
        const double u = std::remainder(theta, M_PI); // [-pi/2, pi/2]
        const double au = std::abs(u);
        if (au <= M_PI / 4.0)
            return std::tan(u);
        const double s = smooth_step((au - M_PI / 4.0) / taper);
        double val = s / std::tan(u); // cot branch
        if (s < 1.0)
            val += (1.0 - s) * std::tan(u);
        return val;
    };

    const int m = std::max(4096, 8 * k_max);
    std::vector<cplx> coeffs(static_cast<size_t>(2 * k_max + 1));
    for (int k = -k_max; k <= k_max; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < m; ++j) {
            const double theta = 2.0 * M_PI * j / m;
            acc += raw(theta) * std::polar(1.0, -k * theta);
        }
        coeffs[static_cast<size_t>(k + k_max)] = acc / static_cast<double>(m);
    }
    const double mean = coeffs[static_cast<size_t>(k_max)].real();
    coeffs[static_cast<size_t>(k_max)] = 0.0;

    CircleSymbol sym(std::move(coeffs), k_max, true);
    sym.attach_exact([raw, mean](double theta) { return raw(theta) - mean; });
    return sym;
}

double symbol_divided_difference_deviation(const CircleSymbol& g, const LipschitzFn& f,
                                           int range) {
    if (range < 1)
        throw std::invalid_argument("symbol_divided_difference_deviation: range must be >= 1");
    double dev = 0.0;
    for (int i = -range; i <= range; ++i)
        for (int j = -range; j <= range; ++j) {
            if (i == j)
                continue;
            const double dx = static_cast<double>(i - j);
            const double dy = f(static_cast<double>(i)) - f(static_cast<double>(j));
            if (std::abs(dy) >= std::abs(dx)) {
                std::ostringstream os;
                os << "symbol_divided_difference_deviation: pair (" << i << "," << j
                   << ") has slope " << dy / dx << " outside the tan arcs";
                throw std::invalid_argument(os.str());
            }
            const cplx lhs = g.evaluate_point(dx, dy);
            dev = std::max(dev, std::abs(lhs - dy / dx));
        }
    return dev;
}

AnnulusKernel kernel_from_symbol(const CircleSymbol& g, const Grid& grid, double r_min,
                                 double r_max, double tail_tol) {
    if (grid.dim != 2)
        throw std::invalid_argument("kernel_from_symbol: needs a dim-2 grid");
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw std::invalid_argument("kernel_from_symbol: need 0 < r_min < r_max");
    if (grid.half_width < r_max)
        throw std::invalid_argument("kernel_from_symbol: grid does not cover the annulus");
    // Quartic-decay fit controls the truncated part of the kernel series.
    const double tail =
        g.quartic_fit() / (2.0 * M_PI * static_cast<double>(g.k_max()) * g.k_max());
    if (tail > tail_tol) {
        std::ostringstream os;
        os << "kernel_from_symbol: decay certificate insufficient (estimated tail " << tail
           << " > " << tail_tol << ")";
        throw std::invalid_argument(os.str());
    }

    const int kmax = g.k_max();
    std::vector<cplx> cpos(static_cast<size_t>(kmax) + 1), cneg(static_cast<size_t>(kmax) + 1);
    for (int k = 1; k <= kmax; ++k) {
        cpos[static_cast<size_t>(k)] = g.coefficient(k) * (std::abs(k) / (2.0 * M_PI)) / i_power(k);
        cneg[static_cast<size_t>(k)] =
            g.coefficient(-k) * (std::abs(k) / (2.0 * M_PI)) / i_power(-k);
    }

    AnnulusKernel out{GridField(grid), r_min, r_max, g.coefficient(0)};
    const int n = grid.samples;
    for (int ix = 0; ix < n; ++ix) {
        const double x = grid.coord(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double y = grid.coord(iy);
            const double r = std::hypot(x, y);
            if (r < r_min || r > r_max)
                continue;
            const cplx z{x / r, y / r};
            cplx zk{1.0, 0.0};
            cplx h = 0.0;
            for (int k = 1; k <= kmax; ++k) {
                zk *= z;
                h += cpos[static_cast<size_t>(k)] * zk + cneg[static_cast<size_t>(k)] * std::conj(zk);
            }
            out.field.values[static_cast<size_t>(ix) * n + iy] = h / (r * r);
        }
    }
    return out;
}

CzConstants cz_condition_check(const AnnulusKernel& k) {
    const Grid& g = k.field.grid;
    const double h = g.spacing();
    if (h > k.r_min / 16.0)
        throw std::invalid_argument("cz_condition_check: grid too coarse (need spacing <= r_min/16)");
    const int n = g.samples;
    CzConstants out;
    const auto at = [&](int ix, int iy) { return k.field.values[static_cast<size_t>(ix) * n + iy]; };
    for (int ix = 0; ix < n; ++ix) {
        const double x = g.coord(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double y = g.coord(iy);
            const double r = std::hypot(x, y);
            if (r < k.r_min || r > k.r_max)
                continue;
            out.c0 = std::max(out.c0, r * r * std::abs(at(ix, iy)));
            if (ix == 0 || iy == 0 || ix == n - 1 || iy == n - 1)
                continue;
            // centered differences only where all four neighbours are in the annulus
            const double rn = std::min(std::min(std::hypot(x - h, y), std::hypot(x + h, y)),
                                       std::min(std::hypot(x, y - h), std::hypot(x, y + h)));
            const double rx = std::max(std::max(std::hypot(x - h, y), std::hypot(x + h, y)),
                                       std::max(std::hypot(x, y - h), std::hypot(x, y + h)));
            if (rn < k.r_min || rx > k.r_max)
                continue;
            const cplx dx = (at(ix + 1, iy) - at(ix - 1, iy)) / (2.0 * h);
            const cplx dy = (at(ix, iy + 1) - at(ix, iy - 1)) / (2.0 * h);
            const double grad = std::sqrt(std::norm(dx) + std::norm(dy));
            out.c1 = std::max(out.c1, r * r * r * grad);
        }
    }
    return out;
}

namespace {

// 1 on (-1,1), 0 outside (-2,2), smooth_step bridge between.
double bump(double s) {
    const double a = std::abs(s);
    if (a <= 1.0)
        return 1.0;
    if (a >= 2.0)
        return 0.0;
    return smooth_step(2.0 - a);
}

} // namespace

double CutoffSymbol::radial(double r) const {
    const double s = 3.0 * m;
    return bump(r / s) * (1.0 - bump(s * r));
}

double CutoffSymbol::operator()(double t1, double t2) const {
    return radial(std::hypot(t1, t2));
}

CutoffSymbol cutoff_symbol(int m) {
    if (m < 1)
        throw std::invalid_argument("cutoff_symbol: m must be >= 1");
    return CutoffSymbol{m};
}

LatticeSymbol sample_circle_symbol(const Grid& g, const CircleSymbol& s) {
    return LatticeSymbol::sample(
        g, std::function<cplx(double, double)>(
               [&s](double wx, double wy) { return s.evaluate_point(wx, wy); }));
}

LatticeSymbol sample_circle_symbol(const Grid& g, const CircleSymbol& s, const CutoffSymbol& cut) {
    return LatticeSymbol::sample(
        g, std::function<cplx(double, double)>([&s, &cut](double wx, double wy) {
            return s.evaluate_point(wx, wy) * cut(wx, wy);
        }));
}

} // namespace weaklip
