#include "weaklip/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "weaklip/doi.hpp"
#include "weaklip/norms.hpp"
#include "weaklip/spectral.hpp"

namespace weaklip {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ExperimentRecord make_record(std::string experiment, uint64_t seed, int trial, int dim,
                             std::string function, std::optional<double> p, double lhs,
                             double rhs) {
    ExperimentRecord r;
    r.experiment = std::move(experiment);
    r.seed = seed;
    r.trial = trial;
    r.dim = dim;
    r.function = std::move(function);
    r.p = p;
    r.lhs = lhs;
    r.rhs = rhs;
    if (rhs > 0.0)
        r.ratio = lhs / rhs;
    return r;
}

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
    os << "experiment,seed,trial,dim,function,p,lhs,rhs,ratio\n";
    for (const ExperimentRecord& r : records) {
        os << r.experiment << ',' << r.seed << ',' << r.trial << ',' << r.dim << ','
           << r.function << ',' << (r.p ? fmt(*r.p) : "") << ',' << fmt(r.lhs) << ','
           << fmt(r.rhs) << ',' << (r.ratio ? fmt(*r.ratio) : "") << '\n';
    }
}

void write_jsonl(std::ostream& os, const std::vector<ExperimentRecord>& records) {
    for (const ExperimentRecord& r : records) {
        os << "{\"experiment\":\"" << r.experiment << "\",\"seed\":" << r.seed
           << ",\"trial\":" << r.trial << ",\"dim\":" << r.dim << ",\"function\":\""
           << r.function << "\",\"p\":" << (r.p ? fmt(*r.p) : "null") << ",\"lhs\":" << fmt(r.lhs)
           << ",\"rhs\":" << fmt(r.rhs) << ",\"ratio\":" << (r.ratio ? fmt(*r.ratio) : "null")
           << "}\n";
    }
}

ExperimentRecord commutator_ratio(const HermitianMatrix& a, const HermitianMatrix& b,
                                  const LipschitzFn& f) {
    const ComplexMatrix c = commutator(a.matrix(), b.matrix());
    const SpectralDecomposition d = hermitian_eig(a);
    const ComplexMatrix fc = commutator(apply_function(f, d).matrix(), b.matrix());
    const double lhs = weak_l1_quasinorm(fc);
    const double rhs = f.lipschitz_constant() * schatten_norm(c, 1.0);
    return make_record("np-ratio", 0, 0, a.dim(), f.name(), std::nullopt, lhs, rhs);
}

PerturbationResult perturbation_ratio(const HermitianMatrix& x, const HermitianMatrix& y,
                                      const LipschitzFn& f) {
    const ComplexMatrix diff = x.matrix() - y.matrix();
    const ComplexMatrix fdiff =
        apply_function(f, hermitian_eig(x)).matrix() - apply_function(f, hermitian_eig(y)).matrix();
    const double lhs = weak_l1_quasinorm(fdiff);
    const double rhs = f.lipschitz_constant() * schatten_norm(diff, 1.0);
    PerturbationResult out;
    out.record = make_record("perturb-ratio", 0, 0, x.dim(), f.name(), std::nullopt, lhs, rhs);

    const auto [a, b] = dilation_reduce(x, y);
    const ExperimentRecord doubled = commutator_ratio(a, b, f);
    if (out.record.ratio && doubled.ratio)
        out.dilation_discrepancy = std::abs(*out.record.ratio - *doubled.ratio);
    else if (out.record.ratio.has_value() != doubled.ratio.has_value())
        out.dilation_discrepancy = std::numeric_limits<double>::infinity();
    return out;
}

ExperimentRecord fp_ratio(const HermitianMatrix& x, const HermitianMatrix& y,
                          const LipschitzFn& f, double p) {
    if (!(p > 1.0))
        throw std::invalid_argument(
            "fp_ratio: p must exceed 1 (p <= 1 belongs to the weak/trace experiments)");
    const ComplexMatrix diff = x.matrix() - y.matrix();
    const ComplexMatrix fdiff =
        apply_function(f, hermitian_eig(x)).matrix() - apply_function(f, hermitian_eig(y)).matrix();
    const double lhs = schatten_norm(fdiff, p);
    const double rhs = schatten_norm(diff, p);
    return make_record("fp-scaling", 0, 0, x.dim(), f.name(), p, lhs, rhs);
}

std::vector<ContrastRow> contrast_report(EnsembleKind kind, const LipschitzFn& f,
                                         const std::vector<int>& dims, int trials,
                                         uint64_t seed) {
    for (size_t i = 1; i < dims.size(); ++i)
        if (dims[i] <= dims[i - 1])
            throw std::invalid_argument("contrast_report: dims must be ascending");
    std::vector<ContrastRow> rows;
    for (int dim : dims) {
        EnsembleSpec spec;
        spec.kind = kind;
        spec.dim = dim;
        spec.seed = seed;
        ContrastRow row;
        row.dim = dim;
        if (kind == EnsembleKind::gaussian_hermitian) {
            // pair consecutive draws
            const auto samples = sample_ensemble(spec, 2 * trials);
            for (int t = 0; t < trials; ++t) {
                const HermitianMatrix& x = samples[static_cast<size_t>(2 * t)].first;
                const HermitianMatrix& y = samples[static_cast<size_t>(2 * t) + 1].first;
                const ComplexMatrix diff = x.matrix() - y.matrix();
                const ComplexMatrix fdiff = apply_function(f, hermitian_eig(x)).matrix() -
                                            apply_function(f, hermitian_eig(y)).matrix();
                const double denom = schatten_norm(diff, 1.0);
                if (denom <= 0.0)
                    continue;
                row.max_trace_ratio = std::max(row.max_trace_ratio,
                                               schatten_norm(fdiff, 1.0) / denom);
                row.max_weak_ratio =
                    std::max(row.max_weak_ratio,
                             weak_l1_quasinorm(fdiff) / (f.lipschitz_constant() * denom));
            }
        } else {
            const auto samples = sample_ensemble(spec, trials);
            for (const MatrixSample& s : samples) {
                const ComplexMatrix diff = s.first.matrix() - s.second->matrix();
                const ComplexMatrix fdiff =
                    apply_function(f, hermitian_eig(s.first)).matrix() -
                    apply_function(f, hermitian_eig(*s.second)).matrix();
                const double denom = schatten_norm(diff, 1.0);
                if (denom <= 0.0)
                    continue;
                row.max_trace_ratio = std::max(row.max_trace_ratio,
                                               schatten_norm(fdiff, 1.0) / denom);
                row.max_weak_ratio =
                    std::max(row.max_weak_ratio,
                             weak_l1_quasinorm(fdiff) / (f.lipschitz_constant() * denom));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace weaklip
