#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "weaklip/lipschitz.hpp"
#include "weaklip/matrix.hpp"
#include "weaklip/norms.hpp"

namespace weaklip {

/// Uniform periodic grid on [-L, L)^dim with N samples per axis (N even).
/// The DFT frequency lattice has spacing pi/L.
struct Grid {
    int dim = 1;         // 1 or 2
    double half_width = 0.0;
    int samples = 0;

    Grid() = default;
    Grid(int dim_, double half_width_, int samples_);

    double spacing() const { return 2.0 * half_width / samples; }
    size_t size() const;
    double coord(int i) const { return -half_width + i * spacing(); }

    /// Signed frequency of DFT bin m (0 <= m < N).
    double freq(int m) const;
    /// DFT bin of signed integer frequency index (-N/2 <= s < N/2).
    int bin(long s) const;
    double cell_measure() const; // spacing^dim

    bool operator==(const Grid& o) const {
        return dim == o.dim && half_width == o.half_width && samples == o.samples;
    }
};

/// Sampled complex function on a Grid; row-major (ix*N + iy) for dim 2.
///
/// Serializes as a header line "dim,L,N" plus rows "re,im" in row-major
/// order (CSV, LF endings).
struct GridField {
    Grid grid;
    std::vector<cplx> values;

    GridField() = default;
    explicit GridField(const Grid& g) : grid(g), values(g.size()) {}

    void write_csv(std::ostream& os) const;
    static GridField read_csv(std::istream& is);
};

/// Discrete L1 mass: sum |values| * spacing^dim.
double l1_mass(const GridField& f);
/// sum values * spacing^dim.
cplx grid_integral(const GridField& f);
/// Discrete L1 distance between fields on the same grid.
double l1_distance(const GridField& f, const GridField& g);
/// Discrete L2 norm: sqrt(sum |values|^2 * spacing^dim).
double l2_norm(const GridField& f);

/// Unnormalized forward DFT of the samples (FFTW convention).
std::vector<cplx> dft(const GridField& f);

/// The Gaussian probability density with width parameter l, sampled on the
/// grid (tensor power for dim 2). Requires L >= 8l so that the truncated
/// tails stay below every stated tolerance.
GridField gaussian_density(double l, const Grid& g);

/// e^{i<k,t>} sampled on the grid; |values| = 1 everywhere.
GridField plane_wave(const std::vector<double>& k, const Grid& g);

/// G_l^{(x) dim} * e_k, sampled separably.
GridField modulated_gaussian(double l, const std::vector<double>& k, const Grid& g);

/// Periodic convolution via the DFT, scaled by spacing^dim so that it
/// approximates the continuous convolution.
GridField convolve(const GridField& f, const GridField& g);

/// A complex symbol sampled on the DFT frequency lattice of a grid,
/// stored in DFT bin order.
struct LatticeSymbol {
    Grid grid;
    std::vector<cplx> values;

    static LatticeSymbol sample(const Grid& g, const std::function<cplx(double)>& fn);
    static LatticeSymbol sample(const Grid& g, const std::function<cplx(double, double)>& fn);

    cplx at_bin(long sx) const;          // dim 1
    cplx at_bin(long sx, long sy) const; // dim 2
};

/// Fourier multiplier: inverse DFT of symbol x DFT of x. For a constant
/// symbol c this returns c*x. Rejects symbols with non-finite values.
GridField multiplier_apply(const LatticeSymbol& symbol, const GridField& x);

/// ||g(nabla)(G_l e_k) - g(k) G_l e_k||_1 on the grid, with k snapped to
/// the frequency lattice. For fixed k the error decays toward 0 as l grows
/// (grid refreshed per l, L >= 8l).
struct WaveMultiplierError {
    double error = 0.0;
    std::vector<double> snapped_k;
    double snap_distance = 0.0;
};
WaveMultiplierError wave_multiplier_error(const LatticeSymbol& symbol,
                                          const std::vector<double>& k, double l, const Grid& g);

/// Transference defect: the discrete L1(M (x) L_infty) distance between
///   (1 (x) symbol(nabla)) (u (V (x) G_l^{(x)2}) u*)   and
///   u (T_{f^[1]}(V) (x) G_l^{(x)2}) u*,
/// where u = sum_j p_j (x) e_{(j, f(j))} over the eigenprojections of A.
/// A must have integer spectrum and f must be 1-Lipschitz (rescale first).
/// Base frequencies (j, f(j)) snap to the lattice; the snap distance is
/// reported and shrinks as the grid refines.
struct TransferenceResult {
    double error = 0.0;
    double snap_distance = 0.0;
};
TransferenceResult transference_error(const HermitianMatrix& a, const ComplexMatrix& v,
                                      const LipschitzFn& f, const LatticeSymbol& symbol,
                                      double l, const Grid& g);

/// Weighted sequence of a sampled density: pairs (|value|, spacing^dim).
WeightedSingularSeq field_to_weighted(const GridField& f);

} // namespace weaklip
