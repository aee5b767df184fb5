#pragma once

// Test-side oracles. These deliberately avoid the library's solver paths:
// the SVD below is one-sided Jacobi on columns, while the library computes
// singular values through the Gram-matrix eigenproblem.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "weaklip/matrix.hpp"
#include "weaklip/spectral.hpp"

namespace oracles {

using weaklip::ComplexMatrix;
using weaklip::cplx;

// One-sided Jacobi SVD: rotate column pairs until all columns are mutually
// orthogonal; singular values are the final column norms.
inline std::vector<double> jacobi_svd(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix a = m;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double worst = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                cplx hpq = 0.0;
                double hpp = 0.0, hqq = 0.0;
                for (int r = 0; r < n; ++r) {
                    hpq += std::conj(a(r, p)) * a(r, q);
                    hpp += std::norm(a(r, p));
                    hqq += std::norm(a(r, q));
                }
                const double scale = std::sqrt(hpp * hqq);
                const double mag = std::abs(hpq);
                if (scale == 0.0 || mag <= 1e-15 * scale)
                    continue;
                worst = std::max(worst, mag / scale);
                const cplx phase = hpq / mag;
                const double tau = (hqq - hpp) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a(r, p);
                    const cplx arq = a(r, q);
                    a(r, p) = c * arp - s * std::conj(phase) * arq;
                    a(r, q) = s * phase * arp + c * arq;
                }
            }
        if (worst < 1e-14)
            break;
    }
    std::vector<double> sv(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
        double s = 0.0;
        for (int r = 0; r < n; ++r)
            s += std::norm(a(r, p));
        sv[static_cast<size_t>(p)] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

// Double operator integral as an explicit projection sum
// sum_{k,l} xi(k,l) P_k V P_l with P_k = u_k u_k* built from outer products.
inline ComplexMatrix doi_projection_sum(const weaklip::SpectralDecomposition& d,
                                        const ComplexMatrix& symbol, const ComplexMatrix& v) {
    const int n = d.dim();
    ComplexMatrix out(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            // u_k* V u_l
            cplx inner = 0.0;
            for (int r = 0; r < n; ++r) {
                cplx row = 0.0;
                for (int c = 0; c < n; ++c)
                    row += v(r, c) * d.vectors(c, l);
                inner += std::conj(d.vectors(r, k)) * row;
            }
            const cplx w = symbol(k, l) * inner;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out(i, j) += w * d.vectors(i, k) * std::conj(d.vectors(j, l));
        }
    return out;
}

// Composite Simpson quadrature on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / (2 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i)
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace oracles
