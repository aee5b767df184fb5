#include "weaklip/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace weaklip {

double SpectralDecomposition::spectral_diameter() const {
    if (eigenvalues.empty())
        return 0.0;
    return eigenvalues.back() - eigenvalues.front();
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
    const int n = dim();
    ComplexMatrix scaled = vectors; // columns scaled by eigenvalues
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            scaled(i, j) *= eigenvalues[static_cast<size_t>(j)];
    return scaled * vectors.adjoint();
}

double SpectralDecomposition::unitarity_defect() const {
    ComplexMatrix g = vectors.adjoint() * vectors;
    g -= ComplexMatrix::identity(g.dim());
    return g.max_abs();
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j)
            s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

SpectralDecomposition hermitian_eig(const HermitianMatrix& h, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("hermitian_eig: tol must be positive");
    const int n = h.dim();
    ComplexMatrix a = h.matrix();
    // Enforce exact conjugate symmetry so every rotation sees Hermitian data.
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = a.frobenius_norm();
    const double threshold = tol * scale;
    const double skip = threshold / (static_cast<double>(n) * n);
    const int max_sweeps = 30;

    bool converged = (scale == 0.0) || (n == 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (offdiag_norm(a) <= threshold) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= skip)
                    continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;
                const cplx spc = s * std::conj(phase);
                // A <- U* A U with U = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p,q).
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a(r, p);
                    const cplx arq = a(r, q);
                    a(r, p) = c * arp - spc * arq;
                    a(r, q) = sp * arp + c * arq;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx apr = a(p, r);
                    const cplx aqr = a(q, r);
                    a(p, r) = c * apr - sp * aqr;
                    a(q, r) = spc * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
                for (int r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p);
                    const cplx vrq = v(r, q);
                    v(r, p) = c * vrp - spc * vrq;
                    v(r, q) = sp * vrp + c * vrq;
                }
            }
    }
    if (!converged) {
        const double off = offdiag_norm(a);
        if (off > threshold) {
            std::ostringstream os;
            os << "hermitian_eig: no convergence after " << max_sweeps
               << " sweeps, off-diagonal residual " << off << " (threshold " << threshold << ")";
            throw std::runtime_error(os.str());
        }
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition d;
    d.eigenvalues.resize(static_cast<size_t>(n));
    d.vectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<size_t>(j)];
        d.eigenvalues[static_cast<size_t>(j)] = a(src, src).real();
        for (int i = 0; i < n; ++i)
            d.vectors(i, j) = v(i, src);
    }
    return d;
}

HermitianMatrix apply_function(const std::function<double(double)>& f,
                               const SpectralDecomposition& d) {
    const int n = d.dim();
    std::vector<double> fv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double lam = d.eigenvalues[static_cast<size_t>(i)];
        const double y = f(lam);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os << "apply_function: f is non-finite at eigenvalue " << lam;
            throw std::runtime_error(os.str());
        }
        fv[static_cast<size_t>(i)] = y;
    }
    ComplexMatrix scaled = d.vectors;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            scaled(i, j) *= fv[static_cast<size_t>(j)];
    return HermitianMatrix::symmetrized(scaled * d.vectors.adjoint());
}

} // namespace weaklip
