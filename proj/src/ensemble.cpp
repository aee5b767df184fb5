#include "weaklip/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "weaklip/spectral.hpp"

namespace weaklip {

EnsembleKind ensemble_from_string(const std::string& name) {
    if (name == "gaussian_hermitian")
        return EnsembleKind::gaussian_hermitian;
    if (name == "diagonal_crossing")
        return EnsembleKind::diagonal_crossing;
    if (name == "low_rank_perturbation")
        return EnsembleKind::low_rank_perturbation;
    throw std::invalid_argument("unknown ensemble kind '" + name + "'");
}

std::string to_string(EnsembleKind kind) {
    switch (kind) {
    case EnsembleKind::gaussian_hermitian: return "gaussian_hermitian";
    case EnsembleKind::diagonal_crossing: return "diagonal_crossing";
    case EnsembleKind::low_rank_perturbation: return "low_rank_perturbation";
    }
    throw std::invalid_argument("unknown ensemble kind");
}

uint64_t trial_seed(uint64_t base, uint64_t trial) {
    // SplitMix64 of base xor the golden-ratio-spaced trial index.
    uint64_t z = base ^ (trial * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double GaussianStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianStream::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 == 0.0)
        u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

cplx GaussianStream::complex_normal() {
    const double re = (*this)();
    const double im = (*this)();
    return {re, im};
}

HermitianMatrix gaussian_hermitian(int dim, GaussianStream& g) {
    ComplexMatrix x(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            x(i, j) = g.complex_normal();
    return HermitianMatrix::symmetrized(x);
}

ComplexMatrix gaussian_complex(int dim, GaussianStream& g) {
    ComplexMatrix x(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            x(i, j) = g.complex_normal();
    return x;
}

namespace {

// exp(i angle H) for a unit-normalized random Hermitian H.
ComplexMatrix random_unitary_rotation(int dim, double angle, GaussianStream& g) {
    HermitianMatrix h = gaussian_hermitian(dim, g);
    ComplexMatrix hn = h.matrix();
    const double f = h.matrix().frobenius_norm();
    if (f > 0.0)
        hn *= cplx(1.0 / f, 0.0);
    const SpectralDecomposition d = hermitian_eig(HermitianMatrix(hn));
    ComplexMatrix scaled = d.vectors;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            scaled(i, j) *= std::polar(1.0, angle * d.eigenvalues[static_cast<size_t>(j)]);
    return scaled * d.vectors.adjoint();
}

MatrixSample draw_sample(const EnsembleSpec& spec, uint64_t seed) {
    GaussianStream g(seed);
    const int n = spec.dim;
    switch (spec.kind) {
    case EnsembleKind::gaussian_hermitian:
        return {gaussian_hermitian(n, g), std::nullopt};
    case EnsembleKind::diagonal_crossing: {
        // Equispaced spectrum straddling 0; the partner interlaces it and is
        // conjugated by a small random rotation so the pair does not commute.
        ComplexMatrix x(n), xp(n);
        const double gap = n > 1 ? 2.0 / (n - 1) : 1.0;
        for (int i = 0; i < n; ++i) {
            const double lam = n > 1 ? -1.0 + gap * i : 0.0;
            x(i, i) = lam;
            xp(i, i) = lam + 0.5 * gap;
        }
        const ComplexMatrix r = random_unitary_rotation(n, spec.crossing_rotation, g);
        ComplexMatrix y = r * xp * r.adjoint();
        return {HermitianMatrix(std::move(x)), HermitianMatrix::symmetrized(y)};
    }
    case EnsembleKind::low_rank_perturbation: {
        if (spec.rank < 1 || spec.rank >= n)
            throw std::invalid_argument("low_rank_perturbation: need 1 <= rank < dim");
        HermitianMatrix x = gaussian_hermitian(n, g);
        ComplexMatrix bump(n);
        for (int r = 0; r < spec.rank; ++r) {
            std::vector<cplx> v(static_cast<size_t>(n));
            double nrm = 0.0;
            for (int i = 0; i < n; ++i) {
                v[static_cast<size_t>(i)] = g.complex_normal();
                nrm += std::norm(v[static_cast<size_t>(i)]);
            }
            nrm = std::sqrt(nrm);
            const double sign = r % 2 == 0 ? 1.0 : -1.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    bump(i, j) += sign * spec.strength * v[static_cast<size_t>(i)] *
                                  std::conj(v[static_cast<size_t>(j)]) / (nrm * nrm);
        }
        ComplexMatrix y = x.matrix() + bump;
        return {std::move(x), HermitianMatrix::symmetrized(y)};
    }
    }
    throw std::invalid_argument("sample_ensemble: unknown kind");
}

} // namespace

std::vector<MatrixSample> sample_ensemble(const EnsembleSpec& spec, int count) {
    if (count < 0)
        throw std::invalid_argument("sample_ensemble: count must be >= 0");
    if (spec.dim < 1)
        throw std::invalid_argument("sample_ensemble: dim must be >= 1");
    std::vector<MatrixSample> out;
    out.reserve(static_cast<size_t>(count));
    for (int t = 0; t < count; ++t)
        out.push_back(draw_sample(spec, trial_seed(spec.seed, static_cast<uint64_t>(t))));
    return out;
}

} // namespace weaklip
