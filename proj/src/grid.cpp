#include "weaklip/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "weaklip/doi.hpp"
#include "weaklip/spectral.hpp"
#include "small_eig.hpp"

namespace weaklip {

Grid::Grid(int dim_, double half_width_, int samples_)
    : dim(dim_), half_width(half_width_), samples(samples_) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("Grid: dim must be 1 or 2");
    if (!(half_width > 0.0))
        throw std::invalid_argument("Grid: half_width must be positive");
    if (samples <= 0 || samples % 2 != 0)
        throw std::invalid_argument("Grid: samples per axis must be positive and even");
}

size_t Grid::size() const {
    const size_t n = static_cast<size_t>(samples);
    return dim == 1 ? n : n * n;
}

double Grid::freq(int m) const {
    const int s = m < samples / 2 ? m : m - samples;
    return M_PI * s / half_width;
}

int Grid::bin(long s) const {
    if (s < -samples / 2 || s >= samples / 2)
        throw std::invalid_argument("Grid: frequency index beyond Nyquist range");
    return static_cast<int>(s >= 0 ? s : s + samples);
}

double Grid::cell_measure() const {
    const double h = spacing();
    return dim == 1 ? h : h * h;
}

void GridField::write_csv(std::ostream& os) const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%d\n", grid.dim, grid.half_width, grid.samples);
    os << buf;
    for (const cplx& v : values) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
        os << buf;
    }
}

GridField GridField::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("GridField: empty input");
    int dim = 0, n = 0;
    double l = 0.0;
    if (std::sscanf(line.c_str(), "%d,%lf,%d", &dim, &l, &n) != 3)
        throw std::invalid_argument("GridField: bad header '" + line + "'");
    GridField f{Grid(dim, l, n)};
    for (cplx& v : f.values) {
        if (!std::getline(is, line))
            throw std::invalid_argument("GridField: truncated data");
        double re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) != 2)
            throw std::invalid_argument("GridField: bad row '" + line + "'");
        v = {re, im};
    }
    return f;
}

double l1_mass(const GridField& f) {
    double s = 0.0;
    for (const cplx& v : f.values)
        s += std::abs(v);
    return s * f.grid.cell_measure();
}

cplx grid_integral(const GridField& f) {
    cplx s = 0.0;
    for (const cplx& v : f.values)
        s += v;
    return s * f.grid.cell_measure();
}

double l1_distance(const GridField& f, const GridField& g) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("l1_distance: grid mismatch");
    double s = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i)
        s += std::abs(f.values[i] - g.values[i]);
    return s * f.grid.cell_measure();
}

double l2_norm(const GridField& f) {
    double s = 0.0;
    for (const cplx& v : f.values)
        s += std::norm(v);
    return std::sqrt(s * f.grid.cell_measure());
}

namespace {

void fft_inplace(std::vector<cplx>& v, const Grid& g, int sign) {
    auto* data = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan = g.dim == 1
                         ? fftw_plan_dft_1d(g.samples, data, data, sign, FFTW_ESTIMATE)
                         : fftw_plan_dft_2d(g.samples, g.samples, data, data, sign, FFTW_ESTIMATE);
    if (!plan)
        throw std::runtime_error("fft: planner failure");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    if (sign == FFTW_BACKWARD) {
        const double inv = 1.0 / static_cast<double>(g.size());
        for (cplx& x : v)
            x *= inv;
    }
}

// 1D sample vectors of G_l(x) e^{i k x}; dim-2 fields are outer products.
std::vector<cplx> gaussian_wave_axis(double l, double k, const Grid& g) {
    std::vector<cplx> axis(static_cast<size_t>(g.samples));
    const double norm = 1.0 / (l * std::sqrt(M_PI));
    for (int i = 0; i < g.samples; ++i) {
        const double x = g.coord(i);
        const double u = x / l;
        axis[static_cast<size_t>(i)] =
            norm * std::exp(-u * u) * std::polar(1.0, k * x);
    }
    return axis;
}

} // namespace

std::vector<cplx> dft(const GridField& f) {
    std::vector<cplx> v = f.values;
    fft_inplace(v, f.grid, FFTW_FORWARD);
    return v;
}

GridField gaussian_density(double l, const Grid& g) {
    if (!(l > 0.0))
        throw std::invalid_argument("gaussian_density: l must be positive");
    if (g.half_width < 8.0 * l) {
        std::ostringstream os;
        os << "gaussian_density: half_width " << g.half_width << " < 8l = " << 8.0 * l
           << "; periodization error would not be negligible";
        throw std::invalid_argument(os.str());
    }
    return modulated_gaussian(l, std::vector<double>(static_cast<size_t>(g.dim), 0.0), g);
}

GridField plane_wave(const std::vector<double>& k, const Grid& g) {
    if (static_cast<int>(k.size()) != g.dim)
        throw std::invalid_argument("plane_wave: k dimension mismatch");
    GridField f(g);
    if (g.dim == 1) {
        for (int i = 0; i < g.samples; ++i)
            f.values[static_cast<size_t>(i)] = std::polar(1.0, k[0] * g.coord(i));
    } else {
        std::vector<cplx> ax(static_cast<size_t>(g.samples)), ay(static_cast<size_t>(g.samples));
        for (int i = 0; i < g.samples; ++i) {
            ax[static_cast<size_t>(i)] = std::polar(1.0, k[0] * g.coord(i));
            ay[static_cast<size_t>(i)] = std::polar(1.0, k[1] * g.coord(i));
        }
        for (int ix = 0; ix < g.samples; ++ix)
            for (int iy = 0; iy < g.samples; ++iy)
                f.values[static_cast<size_t>(ix) * g.samples + iy] =
                    ax[static_cast<size_t>(ix)] * ay[static_cast<size_t>(iy)];
    }
    return f;
}

GridField modulated_gaussian(double l, const std::vector<double>& k, const Grid& g) {
    if (static_cast<int>(k.size()) != g.dim)
        throw std::invalid_argument("modulated_gaussian: k dimension mismatch");
    GridField f(g);
    if (g.dim == 1) {
        f.values = gaussian_wave_axis(l, k[0], g);
    } else {
        const std::vector<cplx> ax = gaussian_wave_axis(l, k[0], g);
        const std::vector<cplx> ay = gaussian_wave_axis(l, k[1], g);
        for (int ix = 0; ix < g.samples; ++ix)
            for (int iy = 0; iy < g.samples; ++iy)
                f.values[static_cast<size_t>(ix) * g.samples + iy] =
                    ax[static_cast<size_t>(ix)] * ay[static_cast<size_t>(iy)];
    }
    return f;
}

GridField convolve(const GridField& f, const GridField& g) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("convolve: grid mismatch");
    std::vector<cplx> a = f.values;
    std::vector<cplx> b = g.values;
    fft_inplace(a, f.grid, FFTW_FORWARD);
    fft_inplace(b, f.grid, FFTW_FORWARD);
    for (size_t i = 0; i < a.size(); ++i)
        a[i] *= b[i];
    fft_inplace(a, f.grid, FFTW_BACKWARD);
    GridField out(f.grid);
    const double scale = f.grid.cell_measure();
    for (size_t i = 0; i < a.size(); ++i)
        out.values[i] = a[i] * scale;
    return out;
}

LatticeSymbol LatticeSymbol::sample(const Grid& g, const std::function<cplx(double)>& fn) {
    if (g.dim != 1)
        throw std::invalid_argument("LatticeSymbol: 1-argument sampler needs dim 1");
    LatticeSymbol s{g, std::vector<cplx>(g.size())};
    for (int m = 0; m < g.samples; ++m)
        s.values[static_cast<size_t>(m)] = fn(g.freq(m));
    return s;
}

LatticeSymbol LatticeSymbol::sample(const Grid& g, const std::function<cplx(double, double)>& fn) {
    if (g.dim != 2)
        throw std::invalid_argument("LatticeSymbol: 2-argument sampler needs dim 2");
    LatticeSymbol s{g, std::vector<cplx>(g.size())};
    for (int mx = 0; mx < g.samples; ++mx) {
        const double wx = g.freq(mx);
        for (int my = 0; my < g.samples; ++my)
            s.values[static_cast<size_t>(mx) * g.samples + my] = fn(wx, g.freq(my));
    }
    return s;
}

cplx LatticeSymbol::at_bin(long sx) const {
    return values[static_cast<size_t>(grid.bin(sx))];
}

cplx LatticeSymbol::at_bin(long sx, long sy) const {
    return values[static_cast<size_t>(grid.bin(sx)) * grid.samples + grid.bin(sy)];
}

GridField multiplier_apply(const LatticeSymbol& symbol, const GridField& x) {
    if (!(symbol.grid == x.grid))
        throw std::invalid_argument("multiplier_apply: symbol grid mismatch");
    for (const cplx& v : symbol.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("multiplier_apply: symbol contains non-finite values");
    GridField out(x.grid);
    std::vector<cplx> v = x.values;
    fft_inplace(v, x.grid, FFTW_FORWARD);
    for (size_t i = 0; i < v.size(); ++i)
        v[i] *= symbol.values[i];
    fft_inplace(v, x.grid, FFTW_BACKWARD);
    out.values = std::move(v);
    return out;
}

namespace {

long snap_index(double k, const Grid& g) {
    const long m = std::lround(k * g.half_width / M_PI);
    if (m < -g.samples / 2 || m >= g.samples / 2)
        throw std::invalid_argument("frequency beyond the grid's Nyquist range");
    return m;
}

} // namespace

WaveMultiplierError wave_multiplier_error(const LatticeSymbol& symbol,
                                          const std::vector<double>& k, double l, const Grid& g) {
    if (static_cast<int>(k.size()) != g.dim)
        throw std::invalid_argument("wave_multiplier_error: k dimension mismatch");
    if (g.half_width < 8.0 * l)
        throw std::invalid_argument("wave_multiplier_error: grid too small for l (need L >= 8l)");
    WaveMultiplierError res;
    std::vector<long> bins;
    res.snapped_k.resize(k.size());
    for (size_t i = 0; i < k.size(); ++i) {
        const long m = snap_index(k[i], g);
        bins.push_back(m);
        res.snapped_k[i] = M_PI * m / g.half_width;
        res.snap_distance = std::max(res.snap_distance, std::abs(k[i] - res.snapped_k[i]));
    }
    const GridField w = modulated_gaussian(l, res.snapped_k, g);
    const GridField y = multiplier_apply(symbol, w);
    const cplx gk = g.dim == 1 ? symbol.at_bin(bins[0]) : symbol.at_bin(bins[0], bins[1]);
    double err = 0.0;
    for (size_t i = 0; i < w.values.size(); ++i)
        err += std::abs(y.values[i] - gk * w.values[i]);
    res.error = err * g.cell_measure();
    return res;
}

TransferenceResult transference_error(const HermitianMatrix& a, const ComplexMatrix& v,
                                      const LipschitzFn& f, const LatticeSymbol& symbol,
                                      double l, const Grid& g) {
    if (g.dim != 2)
        throw std::invalid_argument("transference_error: needs a dim-2 grid");
    if (!(symbol.grid == g))
        throw std::invalid_argument("transference_error: symbol grid mismatch");
    if (g.half_width < 8.0 * l)
        throw std::invalid_argument("transference_error: grid too small for l (need L >= 8l)");
    if (f.lipschitz_constant() > 1.0 + 1e-12)
        throw std::invalid_argument(
            "transference_error: requires ||f'||_inf <= 1; rescale the function first");
    const int n = a.dim();
    if (v.dim() != n)
        throw std::invalid_argument("transference_error: V dimension mismatch");

    const SpectralDecomposition d = hermitian_eig(a);
    std::vector<long> spectrum(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double lam = d.eigenvalues[static_cast<size_t>(i)];
        const long j = std::lround(lam);
        if (std::abs(lam - static_cast<double>(j)) > 1e-6) {
            std::ostringstream os;
            os << "transference_error: eigenvalue " << lam
               << " is not an integer; apply discretize_spectrum and integer scaling first";
            throw std::invalid_argument(os.str());
        }
        spectrum[static_cast<size_t>(i)] = j;
    }

    const ComplexMatrix vt = d.vectors.adjoint() * v * d.vectors;

    TransferenceResult res;
    // Base frequencies (j, f(j)) snapped per eigenvalue; pair differences
    // then lie exactly on the lattice.
    std::vector<std::pair<long, long>> base(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double j = static_cast<double>(spectrum[static_cast<size_t>(i)]);
        const double fj = f(j);
        const long mx = snap_index(j, g);
        const long my = snap_index(fj, g);
        base[static_cast<size_t>(i)] = {mx, my};
        res.snap_distance = std::max(res.snap_distance,
                                     std::max(std::abs(j - M_PI * mx / g.half_width),
                                              std::abs(fj - M_PI * my / g.half_width)));
    }

    // One wave packet and one multiplier image per distinct frequency pair.
    std::map<std::pair<long, long>, std::pair<GridField, GridField>> fields;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::pair<long, long> delta{base[static_cast<size_t>(i)].first -
                                                  base[static_cast<size_t>(j)].first,
                                              base[static_cast<size_t>(i)].second -
                                                  base[static_cast<size_t>(j)].second};
            if (fields.count(delta))
                continue;
            const std::vector<double> omega{M_PI * delta.first / g.half_width,
                                            M_PI * delta.second / g.half_width};
            GridField w = modulated_gaussian(l, omega, g);
            GridField y = multiplier_apply(symbol, w);
            fields.emplace(delta, std::make_pair(std::move(w), std::move(y)));
        }

    // Blockwise coefficients: c_ij(t) = y_d(t) - f^[1](i,j) w_d(t).
    std::vector<const GridField*> wp(static_cast<size_t>(n) * n);
    std::vector<const GridField*> yp(static_cast<size_t>(n) * n);
    std::vector<double> f1(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::pair<long, long> delta{base[static_cast<size_t>(i)].first -
                                                  base[static_cast<size_t>(j)].first,
                                              base[static_cast<size_t>(i)].second -
                                                  base[static_cast<size_t>(j)].second};
            const auto& entry = fields.at(delta);
            wp[static_cast<size_t>(i) * n + j] = &entry.first;
            yp[static_cast<size_t>(i) * n + j] = &entry.second;
            const long ji = spectrum[static_cast<size_t>(i)];
            const long jj = spectrum[static_cast<size_t>(j)];
            if (ji != jj)
                f1[static_cast<size_t>(i) * n + j] =
                    (f(static_cast<double>(ji)) - f(static_cast<double>(jj))) /
                    static_cast<double>(ji - jj);
        }

    std::vector<cplx> block(static_cast<size_t>(n) * n);
    std::vector<cplx> gram(static_cast<size_t>(n) * n);
    std::vector<double> evals(static_cast<size_t>(n));
    double total = 0.0;
    const size_t npts = g.size();
    for (size_t t = 0; t < npts; ++t) {
        for (size_t e = 0; e < block.size(); ++e)
            block[e] = vt.data()[e] * (yp[e]->values[t] - f1[e] * wp[e]->values[t]);
        total += detail::small_trace_norm(block.data(), n, gram.data(), evals.data());
    }
    res.error = total * g.cell_measure();
    return res;
}

WeightedSingularSeq field_to_weighted(const GridField& f) {
    std::vector<std::pair<double, double>> p;
    p.reserve(f.values.size());
    const double w = f.grid.cell_measure();
    for (const cplx& v : f.values)
        p.emplace_back(std::abs(v), w);
    return WeightedSingularSeq::from_pairs(std::move(p));
}

} // namespace weaklip
