#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "weaklip/matrix.hpp"

namespace weaklip {

/// Nonincreasing sequence of singular values (counting measure).
struct SingularValueSeq {
    std::vector<double> values;
};

/// Singular value sequence over a weighted measure. Canonical form: values
/// strictly decreasing, equal-value runs merged with weights summed.
///
/// The trace here is one of two forms used throughout: the counting measure
/// on matrix eigenvalues (all weights 1), or grid-cell weights (spacing^d)
/// for discretized densities.
class WeightedSingularSeq {
public:
    WeightedSingularSeq() = default;

    /// Canonicalizes: drops zero-weight pairs, sorts by value descending,
    /// merges exactly equal values. Values must be finite and >= 0,
    /// weights > 0.
    static WeightedSingularSeq from_pairs(std::vector<std::pair<double, double>> pairs);

    /// All weights 1.
    static WeightedSingularSeq counting(const SingularValueSeq& s);

    const std::vector<std::pair<double, double>>& pairs() const { return pairs_; }
    double total_weight() const;

    /// CSV rows "value,weight" with header.
    void write_csv(std::ostream& os) const;
    static WeightedSingularSeq read_csv(std::istream& is);

private:
    std::vector<std::pair<double, double>> pairs_;
};

/// Singular values of M: eigenvalues of (M*M)^{1/2}, sorted nonincreasing.
SingularValueSeq singular_values(const ComplexMatrix& m);

/// (sum_k mu_k^p)^{1/p}; rejects p < 1.
double schatten_norm(const ComplexMatrix& m, double p);
double schatten_norm(const SingularValueSeq& s, double p);

/// sup_k (k+1) mu_k, the weak-L1 quasi-norm for the counting trace.
double weak_l1_quasinorm(const ComplexMatrix& m);
double weak_l1_quasinorm(const SingularValueSeq& s);

/// sup_{t>0} t mu(t) for the weighted step rearrangement; the supremum over
/// a nonincreasing step function is attained at right endpoints of
/// constancy intervals, so the scan evaluates t = cumulative weight.
double weak_l1_weighted(const WeightedSingularSeq& s);

/// n_x(s): total weight of pairs with value > s.
double distribution_function(const WeightedSingularSeq& s, double level);

/// mu(X (x) g) for discretized g: all products mu_i(M) * value_j with
/// weight weight_j, canonicalized.
WeightedSingularSeq tensor_weighted(const ComplexMatrix& m, const WeightedSingularSeq& density);

} // namespace weaklip
