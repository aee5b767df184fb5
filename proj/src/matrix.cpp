#include "weaklip/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace weaklip {

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
    if (n <= 0)
        throw std::invalid_argument("ComplexMatrix: dimension must be positive");
    a_.assign(static_cast<size_t>(n) * n, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : a_)
        s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_)
        m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rhs.n_ != n_)
        throw std::invalid_argument("matrix +=: dimension mismatch");
    for (size_t i = 0; i < a_.size(); ++i)
        a_[i] += rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rhs.n_ != n_)
        throw std::invalid_argument("matrix -=: dimension mismatch");
    for (size_t i = 0; i < a_.size(); ++i)
        a_[i] -= rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (cplx& v : a_)
        v *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    if (b.dim() != n)
        throw std::invalid_argument("matrix *: dimension mismatch");
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i) {
        const cplx* ai = a.data() + static_cast<size_t>(i) * n;
        cplx* ci = c.data() + static_cast<size_t>(i) * n;
        for (int k = 0; k < n; ++k) {
            const cplx aik = ai[k];
            if (aik == cplx(0.0, 0.0))
                continue;
            const cplx* bk = b.data() + static_cast<size_t>(k) * n;
            for (int j = 0; j < n; ++j)
                ci[j] += aik * bk[j];
        }
    }
    return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("commutator: dimension mismatch");
    return a * b - b * a;
}

double hermitian_defect(const ComplexMatrix& a) {
    double d = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j)
            d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

double hermitian_tolerance(const ComplexMatrix& a) {
    return 1e-12 * (1.0 + a.max_abs());
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() == 0)
        throw std::invalid_argument("HermitianMatrix: empty matrix");
    if (!m_.finite())
        throw std::invalid_argument("HermitianMatrix: non-finite entries");
    const double tol = hermitian_tolerance(m_);
    for (int i = 0; i < m_.dim(); ++i)
        for (int j = i; j < m_.dim(); ++j) {
            const double d = std::abs(m_(i, j) - std::conj(m_(j, i)));
            if (d > tol) {
                std::ostringstream os;
                os << "HermitianMatrix: entries (" << i << "," << j << ") and (" << j << "," << i
                   << ") differ from conjugate symmetry by " << d << " (tolerance " << tol << ")";
                throw std::invalid_argument(os.str());
            }
        }
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
    ComplexMatrix s(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            s(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return HermitianMatrix(std::move(s));
}

namespace {

void format_entry(std::string& out, cplx v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.real());
    out += buf;
    std::snprintf(buf, sizeof buf, "%+.17g", v.imag());
    out += buf;
    out += 'j';
}

// Parses "re+imj" / "re-imj"; the split sign is the first +/- past position 0
// that is not an exponent sign.
cplx parse_entry(const std::string& tok) {
    if (tok.empty() || tok.back() != 'j')
        throw std::invalid_argument("matrix parse: entry '" + tok + "' lacks trailing j");
    size_t split = std::string::npos;
    for (size_t i = 1; i + 1 < tok.size(); ++i) {
        const char c = tok[i];
        if ((c == '+' || c == '-') && tok[i - 1] != 'e' && tok[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw std::invalid_argument("matrix parse: entry '" + tok + "' lacks imaginary part");
    size_t used = 0;
    const double re = std::stod(tok.substr(0, split), &used);
    if (used != split)
        throw std::invalid_argument("matrix parse: bad real part in '" + tok + "'");
    const std::string imtext = tok.substr(split, tok.size() - split - 1);
    const double im = std::stod(imtext, &used);
    if (used != imtext.size())
        throw std::invalid_argument("matrix parse: bad imaginary part in '" + tok + "'");
    return {re, im};
}

} // namespace

std::string ComplexMatrix::to_text() const {
    std::string out = std::to_string(n_);
    out += '\n';
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (j > 0)
                out += ' ';
            format_entry(out, (*this)(i, j));
        }
        out += '\n';
    }
    return out;
}

ComplexMatrix ComplexMatrix::from_text(const std::string& text) {
    std::istringstream is(text);
    int n = 0;
    if (!(is >> n) || n <= 0)
        throw std::invalid_argument("matrix parse: bad dimension line");
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::string tok;
            if (!(is >> tok))
                throw std::invalid_argument("matrix parse: unexpected end of input");
            m(i, j) = parse_entry(tok);
        }
    if (!m.finite())
        throw std::invalid_argument("matrix parse: non-finite entry");
    return m;
}

} // namespace weaklip
