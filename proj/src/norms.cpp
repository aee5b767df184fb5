#include "weaklip/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "weaklip/spectral.hpp"

namespace weaklip {

WeightedSingularSeq WeightedSingularSeq::from_pairs(std::vector<std::pair<double, double>> pairs) {
    for (const auto& [v, w] : pairs) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("WeightedSingularSeq: values must be finite and >= 0");
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("WeightedSingularSeq: weights must be finite and > 0");
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    WeightedSingularSeq s;
    s.pairs_.reserve(pairs.size());
    for (const auto& [v, w] : pairs) {
        if (!s.pairs_.empty() && s.pairs_.back().first == v)
            s.pairs_.back().second += w;
        else
            s.pairs_.emplace_back(v, w);
    }
    return s;
}

WeightedSingularSeq WeightedSingularSeq::counting(const SingularValueSeq& sv) {
    std::vector<std::pair<double, double>> p;
    p.reserve(sv.values.size());
    for (double v : sv.values)
        p.emplace_back(v, 1.0);
    return from_pairs(std::move(p));
}

double WeightedSingularSeq::total_weight() const {
    double t = 0.0;
    for (const auto& [v, w] : pairs_)
        t += w;
    return t;
}

void WeightedSingularSeq::write_csv(std::ostream& os) const {
    os << "value,weight\n";
    char buf[80];
    for (const auto& [v, w] : pairs_) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v, w);
        os << buf;
    }
}

WeightedSingularSeq WeightedSingularSeq::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "value,weight")
        throw std::invalid_argument("WeightedSingularSeq: missing value,weight header");
    std::vector<std::pair<double, double>> p;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("WeightedSingularSeq: malformed row '" + line + "'");
        p.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return from_pairs(std::move(p));
}

SingularValueSeq singular_values(const ComplexMatrix& m) {
    if (!m.finite())
        throw std::invalid_argument("singular_values: non-finite entries");
    const HermitianMatrix gram = HermitianMatrix::symmetrized(m.adjoint() * m);
    SpectralDecomposition d = hermitian_eig(gram);
    SingularValueSeq s;
    s.values.resize(d.eigenvalues.size());
    for (size_t i = 0; i < d.eigenvalues.size(); ++i) {
        const double lam = d.eigenvalues[d.eigenvalues.size() - 1 - i];
        s.values[i] = std::sqrt(std::max(lam, 0.0));
    }
    return s;
}

double schatten_norm(const SingularValueSeq& s, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("schatten_norm: p must satisfy p >= 1");
    double acc = 0.0;
    if (p == 1.0) {
        for (double v : s.values)
            acc += v;
        return acc;
    }
    if (p == 2.0) {
        for (double v : s.values)
            acc += v * v;
        return std::sqrt(acc);
    }
    for (double v : s.values)
        acc += std::pow(v, p);
    return std::pow(acc, 1.0 / p);
}

double schatten_norm(const ComplexMatrix& m, double p) {
    return schatten_norm(singular_values(m), p);
}

double weak_l1_quasinorm(const SingularValueSeq& s) {
    double best = 0.0;
    for (size_t k = 0; k < s.values.size(); ++k)
        best = std::max(best, static_cast<double>(k + 1) * s.values[k]);
    return best;
}

double weak_l1_quasinorm(const ComplexMatrix& m) {
    return weak_l1_quasinorm(singular_values(m));
}

double weak_l1_weighted(const WeightedSingularSeq& s) {
    double best = 0.0;
    double cum = 0.0;
    for (const auto& [v, w] : s.pairs()) {
        cum += w;
        best = std::max(best, cum * v);
    }
    return best;
}

double distribution_function(const WeightedSingularSeq& s, double level) {
    double t = 0.0;
    for (const auto& [v, w] : s.pairs()) {
        if (v > level)
            t += w;
        else
            break; // canonical order is descending
    }
    return t;
}

WeightedSingularSeq tensor_weighted(const ComplexMatrix& m, const WeightedSingularSeq& density) {
    const SingularValueSeq sv = singular_values(m);
    std::vector<std::pair<double, double>> p;
    p.reserve(sv.values.size() * density.pairs().size());
    for (double s : sv.values)
        for (const auto& [v, w] : density.pairs())
            p.emplace_back(s * v, w);
    return WeightedSingularSeq::from_pairs(std::move(p));
}

} // namespace weaklip
