#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weaklip/matrix.hpp"

namespace weaklip {

enum class EnsembleKind { gaussian_hermitian, diagonal_crossing, low_rank_perturbation };

EnsembleKind ensemble_from_string(const std::string& name);
std::string to_string(EnsembleKind kind);

/// Seeded matrix ensemble. Identical spec -> bitwise-identical samples;
/// per-trial streams derive from seed and trial index through a splittable
/// mix, so trial order cannot reshuffle randomness.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::gaussian_hermitian;
    int dim = 8;
    uint64_t seed = 0;
    double crossing_rotation = 0.3; // diagonal_crossing: angle of the conjugating unitary
    int rank = 1;                   // low_rank_perturbation
    double strength = 1.0;          // low_rank_perturbation
};

/// gaussian_hermitian yields single matrices (second is empty);
/// diagonal_crossing yields (X, Y) with interlacing spectra straddling 0;
/// low_rank_perturbation yields (X, X + rank-r bump).
struct MatrixSample {
    HermitianMatrix first;
    std::optional<HermitianMatrix> second;
};

std::vector<MatrixSample> sample_ensemble(const EnsembleSpec& spec, int count);

/// SplitMix64 step, used to derive per-trial seeds.
uint64_t trial_seed(uint64_t base, uint64_t trial);

/// Deterministic standard normal stream: mt19937_64 uniforms fed through
/// Box-Muller, so samples are reproducible across platforms.
class GaussianStream {
public:
    explicit GaussianStream(uint64_t seed) : engine_(seed) {}
    double operator()();
    cplx complex_normal(); // independent N(0,1) real and imaginary parts

private:
    double uniform01();
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Random Hermitian matrix with N(0,1) diagonal and complex normal
/// off-diagonal entries, drawn in row-major order.
HermitianMatrix gaussian_hermitian(int dim, GaussianStream& g);

/// Random complex matrix with independent complex normal entries.
ComplexMatrix gaussian_complex(int dim, GaussianStream& g);

} // namespace weaklip
