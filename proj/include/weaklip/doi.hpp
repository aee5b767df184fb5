#pragma once

#include <utility>

#include "weaklip/lipschitz.hpp"
#include "weaklip/matrix.hpp"
#include "weaklip/spectral.hpp"

namespace weaklip {

/// Schur-multiplier symbol on the eigenbasis of one operator:
/// values(i,j) = xi(lambda_i, lambda_j). Pairs whose eigenvalues coincide
/// within cluster_tol are treated as equal and assigned the diagonal value.
struct SchurSymbol {
    ComplexMatrix values;
    double cluster_tol = 0.0;
};

/// (f(a) - f(b)) / (a - b), and exactly 0 when a == b (the diagonal is
/// defined to vanish, not to be f'(a); see build_symbol).
double divided_difference(const LipschitzFn& f, double a, double b);

/// 1e-9 times the spectral diameter; pairs closer than this are clustered
/// to keep the quotient away from catastrophic cancellation.
double default_cluster_tol(const SpectralDecomposition& d);

/// Divided-difference symbol of f on the eigenvalues of d; entries within
/// one eigenvalue cluster are 0. |values(i,j)| <= f.lipschitz_constant().
SchurSymbol build_symbol(const LipschitzFn& f, const SpectralDecomposition& d, double cluster_tol);

/// The double operator integral as an eigenbasis Schur multiplier:
/// U (S o (U* V U)) U*, entrywise product o. Linear in V; V need not be
/// Hermitian.
ComplexMatrix doi_apply(const SpectralDecomposition& d, const SchurSymbol& s,
                        const ComplexMatrix& v);

/// Frobenius norm of T_{f^[1]}^{A,A}([A,B]) - [f(A),B]. The identity is
/// exact in finite dimensions, so this measures floating-point and
/// clustering noise only.
double commutator_identity_residual(const HermitianMatrix& a, const HermitianMatrix& b,
                                    const LipschitzFn& f);

/// Replaces each eigenvalue by floor(n lambda)/n in the same eigenbasis.
/// ||A_n - A|| <= 1/n and n A_n has integer spectrum.
HermitianMatrix discretize_spectrum(const HermitianMatrix& a, long n);

/// The 2x2 dilation pair A = diag(X, Y), B = antidiagonal identities, so
/// that [A,B] = [[0, X-Y], [Y-X, 0]]: trace and weak norms of the
/// commutator double those of X - Y.
std::pair<HermitianMatrix, HermitianMatrix> dilation_reduce(const HermitianMatrix& x,
                                                            const HermitianMatrix& y);

} // namespace weaklip
