#pragma once

#include <functional>
#include <vector>

#include "weaklip/matrix.hpp"

namespace weaklip {

/// Eigendecomposition of a Hermitian matrix: A = U diag(eigenvalues) U*.
/// Eigenvalues are ascending; the columns of `vectors` are the eigenvectors.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;

    int dim() const { return vectors.dim(); }

    /// max(eigenvalues) - min(eigenvalues); 0 for dimension 1.
    double spectral_diameter() const;

    /// U diag(eigenvalues) U*.
    ComplexMatrix reconstruct() const;

    /// max-entry distance of U*U from the identity.
    double unitarity_defect() const;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps Givens-type unitary rotations in a fixed cyclic order until the
/// off-diagonal Frobenius norm drops below tol * ||A||_F (default 1e-13),
/// capped at 30 sweeps.  Throws on non-convergence, carrying the residual.
/// Deterministic for fixed input.
SpectralDecomposition hermitian_eig(const HermitianMatrix& a, double tol = 1e-13);

/// Spectral functional calculus: U diag(f(lambda_1),...,f(lambda_n)) U*.
/// Throws if f evaluates to a non-finite value at some eigenvalue.
HermitianMatrix apply_function(const std::function<double(double)>& f,
                               const SpectralDecomposition& d);

} // namespace weaklip
