#pragma once

// Internal: allocation-free trace norm for small dense matrices, used in
// per-grid-point scans. Not part of the public interface.

#include <cmath>
#include <complex>

namespace weaklip::detail {

using cplx = std::complex<double>;

// Eigenvalue-only cyclic Jacobi on a Hermitian n x n row-major buffer.
// Destroys `a`.
inline void small_hermitian_eigvals(cplx* a, int n, double* out) {
    const int max_sweeps = 24;
    double scale = 0.0;
    for (int i = 0; i < n * n; ++i)
        scale += std::norm(a[i]);
    scale = std::sqrt(scale);
    const double threshold = 1e-13 * scale;
    for (int sweep = 0; sweep < max_sweeps && scale > 0.0; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off += 2.0 * std::norm(a[p * n + q]);
        if (std::sqrt(off) <= threshold)
            break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a[p * n + q];
                const double mag = std::abs(apq);
                if (mag <= threshold / (n * n))
                    continue;
                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();
                const cplx phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;
                const cplx spc = s * std::conj(phase);
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a[r * n + p];
                    const cplx arq = a[r * n + q];
                    a[r * n + p] = c * arp - spc * arq;
                    a[r * n + q] = sp * arp + c * arq;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx apr = a[p * n + r];
                    const cplx aqr = a[q * n + r];
                    a[p * n + r] = c * apr - sp * aqr;
                    a[q * n + r] = spc * apr + c * aqr;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
    }
    for (int i = 0; i < n; ++i)
        out[i] = a[i * n + i].real();
}

// Trace norm of an n x n matrix via the Gram matrix; `gram` and `evals`
// are caller-provided scratch of sizes n*n and n.
inline double small_trace_norm(const cplx* m, int n, cplx* gram, double* evals) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k)
                s += std::conj(m[k * n + i]) * m[k * n + j];
            gram[i * n + j] = s;
        }
    small_hermitian_eigvals(gram, n, evals);
    double tn = 0.0;
    for (int i = 0; i < n; ++i)
        tn += std::sqrt(std::max(evals[i], 0.0));
    return tn;
}

} // namespace weaklip::detail
