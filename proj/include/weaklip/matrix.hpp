#pragma once

#include <complex>
#include <string>
#include <vector>

namespace weaklip {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major storage.
///
/// Serializes to a plain-text format: first line "n", then n lines of
/// n entries "re+imj" separated by single spaces (LF endings, UTF-8).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n);
    static ComplexMatrix identity(int n);

    int dim() const { return n_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    std::string to_text() const;
    static ComplexMatrix from_text(const std::string& text);

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

/// AB - BA. Dimensions must agree.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |a(i,j) - conj(a(j,i))|
double hermitian_defect(const ComplexMatrix& a);

/// Tolerance below which a matrix counts as Hermitian: 1e-12 * (1 + max|entry|).
double hermitian_tolerance(const ComplexMatrix& a);

/// A ComplexMatrix validated to be Hermitian within hermitian_tolerance.
/// Construction rejects non-Hermitian input, naming the offending entry pair.
class HermitianMatrix {
public:
    explicit HermitianMatrix(ComplexMatrix m);

    /// (M + M*)/2, always admissible.
    static HermitianMatrix symmetrized(const ComplexMatrix& m);

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    ComplexMatrix m_;
};

} // namespace weaklip
