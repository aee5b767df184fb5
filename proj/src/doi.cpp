#include "weaklip/doi.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace weaklip {

double divided_difference(const LipschitzFn& f, double a, double b) {
    if (a == b)
        return 0.0;
    return (f(a) - f(b)) / (a - b);
}

double default_cluster_tol(const SpectralDecomposition& d) {
    return 1e-9 * d.spectral_diameter();
}

namespace {

// Cluster ids along the ascending eigenvalue sequence: a new cluster starts
// whenever the gap to the previous eigenvalue exceeds tol.
std::vector<int> eigenvalue_clusters(const std::vector<double>& lam, double tol) {
    std::vector<int> id(lam.size(), 0);
    for (size_t i = 1; i < lam.size(); ++i)
        id[i] = (lam[i] - lam[i - 1] > tol) ? id[i - 1] + 1 : id[i - 1];
    return id;
}

} // namespace

SchurSymbol build_symbol(const LipschitzFn& f, const SpectralDecomposition& d, double cluster_tol) {
    if (!(cluster_tol >= 0.0))
        throw std::invalid_argument("build_symbol: cluster_tol must be >= 0");
    const int n = d.dim();
    const std::vector<int> cluster = eigenvalue_clusters(d.eigenvalues, cluster_tol);
    SchurSymbol s{ComplexMatrix(n), cluster_tol};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (cluster[static_cast<size_t>(i)] == cluster[static_cast<size_t>(j)])
                continue; // divided difference vanishes on the diagonal
            s.values(i, j) = divided_difference(f, d.eigenvalues[static_cast<size_t>(i)],
                                                d.eigenvalues[static_cast<size_t>(j)]);
        }
    return s;
}

ComplexMatrix doi_apply(const SpectralDecomposition& d, const SchurSymbol& s,
                        const ComplexMatrix& v) {
    const int n = d.dim();
    if (v.dim() != n || s.values.dim() != n)
        throw std::invalid_argument("doi_apply: dimension mismatch");
    ComplexMatrix w = d.vectors.adjoint() * v * d.vectors;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w(i, j) *= s.values(i, j);
    return d.vectors * w * d.vectors.adjoint();
}

double commutator_identity_residual(const HermitianMatrix& a, const HermitianMatrix& b,
                                    const LipschitzFn& f) {
    const SpectralDecomposition d = hermitian_eig(a);
    const SchurSymbol s = build_symbol(f, d, default_cluster_tol(d));
    const ComplexMatrix c = commutator(a.matrix(), b.matrix());
    const ComplexMatrix lhs = doi_apply(d, s, c);
    const ComplexMatrix rhs = commutator(apply_function(f, d).matrix(), b.matrix());
    return (lhs - rhs).frobenius_norm();
}

HermitianMatrix discretize_spectrum(const HermitianMatrix& a, long n) {
    if (n < 1)
        throw std::invalid_argument("discretize_spectrum: n must be >= 1");
    SpectralDecomposition d = hermitian_eig(a);
    const double dn = static_cast<double>(n);
    for (double& lam : d.eigenvalues)
        lam = std::floor(dn * lam) / dn;
    return HermitianMatrix::symmetrized(d.reconstruct());
}

std::pair<HermitianMatrix, HermitianMatrix> dilation_reduce(const HermitianMatrix& x,
                                                            const HermitianMatrix& y) {
    const int n = x.dim();
    if (y.dim() != n)
        throw std::invalid_argument("dilation_reduce: dimension mismatch");
    ComplexMatrix a(2 * n);
    ComplexMatrix b(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a(i, j) = x.matrix()(i, j);
            a(n + i, n + j) = y.matrix()(i, j);
        }
    for (int i = 0; i < n; ++i) {
        b(i, n + i) = 1.0;
        b(n + i, i) = 1.0;
    }
    return {HermitianMatrix(std::move(a)), HermitianMatrix(std::move(b))};
}

} // namespace weaklip
