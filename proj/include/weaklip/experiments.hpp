#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "weaklip/ensemble.hpp"
#include "weaklip/lipschitz.hpp"
#include "weaklip/matrix.hpp"

namespace weaklip {

/// One row of a report. ratio = lhs/rhs when rhs > 0, otherwise empty.
struct ExperimentRecord {
    std::string experiment;
    uint64_t seed = 0;
    int trial = 0;
    int dim = 0;
    std::string function;
    std::optional<double> p;
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<double> ratio;
};

ExperimentRecord make_record(std::string experiment, uint64_t seed, int trial, int dim,
                             std::string function, std::optional<double> p, double lhs,
                             double rhs);

/// CSV header: experiment,seed,trial,dim,function,p,lhs,rhs,ratio.
/// Missing p/ratio serialize as empty fields. Deterministic formatting.
void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);
/// One JSON object per line, same keys, numbers as decimal literals.
void write_jsonl(std::ostream& os, const std::vector<ExperimentRecord>& records);

/// lhs = ||[f(A),B]||_{1,inf}, rhs = ||f'||_inf ||[A,B]||_1.
ExperimentRecord commutator_ratio(const HermitianMatrix& a, const HermitianMatrix& b,
                                  const LipschitzFn& f);

/// lhs = ||f(X)-f(Y)||_{1,inf}, rhs = ||f'||_inf ||X-Y||_1, plus the
/// dilation-consistency check: the commutator ratio of the doubled pair
/// must coincide (numerator and denominator both double exactly).
struct PerturbationResult {
    ExperimentRecord record;
    double dilation_discrepancy = 0.0;
};
PerturbationResult perturbation_ratio(const HermitianMatrix& x, const HermitianMatrix& y,
                                      const LipschitzFn& f);

/// lhs = ||f(X)-f(Y)||_p, rhs = ||X-Y||_p, for p in (1, inf).
/// p <= 1 is rejected (those regimes belong to the weak/trace experiments).
ExperimentRecord fp_ratio(const HermitianMatrix& x, const HermitianMatrix& y,
                          const LipschitzFn& f, double p);

/// Per-dimension maxima of the trace-norm ratio ||f(X)-f(Y)||_1/||X-Y||_1
/// and of the weak ratio ||f(X)-f(Y)||_{1,inf}/(||f'||_inf ||X-Y||_1).
struct ContrastRow {
    int dim = 0;
    double max_trace_ratio = 0.0;
    double max_weak_ratio = 0.0;
};
std::vector<ContrastRow> contrast_report(EnsembleKind kind, const LipschitzFn& f,
                                         const std::vector<int>& dims, int trials,
                                         uint64_t seed);

} // namespace weaklip
