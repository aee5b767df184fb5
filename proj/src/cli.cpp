#include "weaklip/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "weaklip/doi.hpp"
#include "weaklip/ensemble.hpp"
#include "weaklip/experiments.hpp"
#include "weaklip/grid.hpp"
#include "weaklip/norms.hpp"
#include "weaklip/spectral.hpp"
#include "weaklip/symbols.hpp"

namespace weaklip {

namespace {

struct Opts {
    uint64_t seed = 1;
    int trials = 10;
    int dim = 16;
    std::vector<int> dims;
    std::string function = "abs";
    double p = 0.0;
    std::string ensemble = "diagonal_crossing";
    std::string out;
    std::string format = "csv";
    double tol = 1e-9;
};

void emit(const Opts& o, const std::vector<ExperimentRecord>& records) {
    if (o.out.empty())
        return;
    std::ofstream os(o.out, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output file '" + o.out + "'");
    if (o.format == "csv")
        write_csv(os, records);
    else
        write_jsonl(os, records);
}

// The identity invariant holds across every experiment: weak <= trace.
bool identity_ratio_ok(const Opts& o, const std::vector<ExperimentRecord>& records) {
    if (o.function != "identity")
        return true;
    for (const ExperimentRecord& r : records)
        if (r.ratio && *r.ratio > 1.0 + 1e-9)
            return false;
    return true;
}

int cmd_identity_check(const Opts& o) {
    const std::vector<std::string> names = {"abs", "sin", "piecewise"};
    std::vector<ExperimentRecord> records;
    double worst = 0.0;
    bool ok = true;
    for (int t = 0; t < o.trials; ++t) {
        const LipschitzFn f = catalog_lookup(o.function.empty() ? names[t % names.size()]
                                                                : o.function);
        GaussianStream g(trial_seed(o.seed, static_cast<uint64_t>(t)));
        const HermitianMatrix a = gaussian_hermitian(o.dim, g);
        const HermitianMatrix b = gaussian_hermitian(o.dim, g);
        const double residual = commutator_identity_residual(a, b, f);
        const double budget = o.tol * (1.0 + f.lipschitz_constant()) *
                              (1.0 + a.matrix().frobenius_norm()) *
                              (1.0 + b.matrix().frobenius_norm());
        ExperimentRecord r = make_record("identity-check", o.seed, t, o.dim, f.name(),
                                         std::nullopt, residual, budget);
        worst = std::max(worst, residual);
        if (residual > budget)
            ok = false;
        records.push_back(std::move(r));
    }
    emit(o, records);
    std::cout << "identity-check: trials=" << o.trials << " dim=" << o.dim
              << " max_residual=" << worst << (ok ? " OK" : " BREACH") << "\n";
    return ok ? 0 : 1;
}

int cmd_np_ratio(const Opts& o) {
    const LipschitzFn f = catalog_lookup(o.function);
    EnsembleSpec spec;
    spec.kind = EnsembleKind::gaussian_hermitian;
    spec.dim = o.dim;
    spec.seed = o.seed;
    const auto samples = sample_ensemble(spec, 2 * o.trials);
    std::vector<ExperimentRecord> records;
    double worst = 0.0;
    for (int t = 0; t < o.trials; ++t) {
        ExperimentRecord r = commutator_ratio(samples[static_cast<size_t>(2 * t)].first,
                                              samples[static_cast<size_t>(2 * t) + 1].first, f);
        r.seed = o.seed;
        r.trial = t;
        if (r.ratio)
            worst = std::max(worst, *r.ratio);
        records.push_back(std::move(r));
    }
    emit(o, records);
    const bool ok = identity_ratio_ok(o, records);
    std::cout << "np-ratio: trials=" << o.trials << " dim=" << o.dim << " function=" << f.name()
              << " max_ratio=" << worst << (ok ? " OK" : " BREACH") << "\n";
    return ok ? 0 : 1;
}

int cmd_perturb_ratio(const Opts& o) {
    const LipschitzFn f = catalog_lookup(o.function);
    EnsembleSpec spec;
    spec.kind = ensemble_from_string(o.ensemble);
    if (spec.kind == EnsembleKind::gaussian_hermitian)
        throw CLI::ValidationError("--ensemble", "perturb-ratio needs a pair ensemble");
    spec.dim = o.dim;
    spec.seed = o.seed;
    const auto samples = sample_ensemble(spec, o.trials);
    std::vector<ExperimentRecord> records;
    double worst = 0.0, worst_disc = 0.0;
    for (int t = 0; t < o.trials; ++t) {
        PerturbationResult res =
            perturbation_ratio(samples[static_cast<size_t>(t)].first,
                               *samples[static_cast<size_t>(t)].second, f);
        res.record.seed = o.seed;
        res.record.trial = t;
        if (res.record.ratio)
            worst = std::max(worst, *res.record.ratio);
        worst_disc = std::max(worst_disc, res.dilation_discrepancy);
        records.push_back(std::move(res.record));
    }
    emit(o, records);
    const bool ok = worst_disc <= o.tol && identity_ratio_ok(o, records);
    std::cout << "perturb-ratio: trials=" << o.trials << " dim=" << o.dim
              << " ensemble=" << o.ensemble << " max_ratio=" << worst
              << " max_dilation_discrepancy=" << worst_disc << (ok ? " OK" : " BREACH") << "\n";
    return ok ? 0 : 1;
}

int cmd_fp_scaling(const Opts& o) {
    const LipschitzFn f = catalog_lookup(o.function);
    std::vector<double> ps;
    if (o.p > 0.0)
        ps.push_back(o.p);
    else
        ps = {1.05, 1.1, 1.25, 1.5, 2.0, 3.0, 4.0}; // straddles the p -> 1 blow-up
    for (double p : ps)
        if (!(p > 1.0))
            throw CLI::ValidationError("--p", "p must exceed 1; use np-ratio/perturb-ratio for "
                                              "the weak and trace regimes");
    EnsembleSpec spec;
    spec.kind = ensemble_from_string(o.ensemble);
    spec.dim = o.dim;
    spec.seed = o.seed;
    const auto samples = sample_ensemble(spec, o.trials);
    std::vector<ExperimentRecord> records;
    bool ok = true;
    for (double p : ps) {
        double worst = 0.0;
        for (int t = 0; t < o.trials; ++t) {
            const MatrixSample& s = samples[static_cast<size_t>(t)];
            const HermitianMatrix& x = s.first;
            const HermitianMatrix y = s.second ? *s.second : s.first;
            ExperimentRecord r = fp_ratio(x, y, f, p);
            r.seed = o.seed;
            r.trial = t;
            if (r.ratio) {
                worst = std::max(worst, *r.ratio);
                if (p == 2.0 && *r.ratio > f.lipschitz_constant() + 1e-9)
                    ok = false;
            }
            records.push_back(std::move(r));
        }
        std::cout << "fp-scaling: p=" << p << " max_ratio=" << worst << "\n";
    }
    emit(o, records);
    ok = ok && identity_ratio_ok(o, records);
    std::cout << "fp-scaling: " << (ok ? "OK" : "BREACH") << "\n";
    return ok ? 0 : 1;
}

int cmd_contrast(const Opts& o) {
    const LipschitzFn f = catalog_lookup(o.function);
    std::vector<int> dims = o.dims.empty() ? std::vector<int>{8, 16, 32, 64} : o.dims;
    const auto rows =
        contrast_report(ensemble_from_string(o.ensemble), f, dims, o.trials, o.seed);
    std::vector<ExperimentRecord> records;
    for (const ContrastRow& r : rows) {
        records.push_back(make_record("contrast-s1", o.seed, 0, r.dim, f.name(), std::nullopt,
                                      r.max_trace_ratio, 1.0));
        records.push_back(make_record("contrast-weak", o.seed, 0, r.dim, f.name(), std::nullopt,
                                      r.max_weak_ratio, 1.0));
        std::cout << "contrast: dim=" << r.dim << " s1_ratio=" << r.max_trace_ratio
                  << " weak_ratio=" << r.max_weak_ratio << "\n";
    }
    emit(o, records);
    const bool ok = identity_ratio_ok(o, records);
    std::cout << "contrast: " << (ok ? "OK" : "BREACH") << "\n";
    return ok ? 0 : 1;
}

GridField sampled_step(const Grid& g, double a, double b, double sign_split) {
    // chi_[a, split) - chi_[split, b) sampled; exact dyadic coordinates keep
    // the discrete mean exactly zero.
    GridField f(g);
    for (int i = 0; i < g.samples; ++i) {
        const double x = g.coord(i);
        if (x >= a && x < sign_split)
            f.values[static_cast<size_t>(i)] = 1.0;
        else if (x >= sign_split && x < b)
            f.values[static_cast<size_t>(i)] = -1.0;
    }
    return f;
}

int cmd_smoothing(const Opts& o) {
    std::vector<ExperimentRecord> records;
    const std::vector<double> ls = {1, 2, 4, 8, 16, 32};
    double first = 0.0, prev = 0.0, last = 0.0;
    bool monotone = true;
    double control_drift = 0.0;
    for (size_t i = 0; i < ls.size(); ++i) {
        const double l = ls[i];
        const Grid g(1, 8.0 * l, static_cast<int>(8.0 * l * 32.0)); // spacing 1/16
        const GridField step = sampled_step(g, 0.0, 2.0, 1.0);
        const GridField gauss = gaussian_density(l, g);
        const double value = l1_mass(convolve(step, gauss));
        // positive control: convolution preserves the mass of chi_[0,1)
        GridField pos(g);
        for (int j = 0; j < g.samples; ++j) {
            const double x = g.coord(j);
            if (x >= 0.0 && x < 1.0)
                pos.values[static_cast<size_t>(j)] = 1.0;
        }
        control_drift =
            std::max(control_drift, std::abs(l1_mass(convolve(pos, gauss)) - l1_mass(pos)));
        if (i == 0)
            first = value;
        else if (value > prev)
            monotone = false;
        prev = value;
        last = value;
        records.push_back(make_record("smoothing", o.seed, static_cast<int>(i),
                                      static_cast<int>(l), "step", std::nullopt, value, first));
        std::cout << "smoothing: l=" << l << " l1=" << value << "\n";
    }
    emit(o, records);
    const bool ok = monotone && last <= 0.05 * first && control_drift <= 1e-6;
    std::cout << "smoothing: final/initial=" << last / first
              << " control_drift=" << control_drift << (ok ? " OK" : " BREACH") << "\n";
    return ok ? 0 : 1;
}

int cmd_transference(const Opts& o) {
    ComplexMatrix a(3);
    a(1, 1) = 1.0;
    a(2, 2) = 2.0;
    const HermitianMatrix ah(std::move(a));
    GaussianStream gs(trial_seed(o.seed, 0));
    const ComplexMatrix v = gaussian_complex(3, gs);
    const LipschitzFn f = catalog::piecewise_linear({1.0}, {-1.0, 1.0}); // |t - 1|
    const CircleSymbol tan_sym = tan_symbol();
    const CutoffSymbol cut = cutoff_symbol(2); // covers the difference set of diag(0,1,2)
    std::vector<ExperimentRecord> records;
    std::vector<double> errors;
    for (double l : {2.0, 4.0, 8.0}) {
        const Grid g(2, 8.0 * l, static_cast<int>(8.0 * l * 16.0)); // spacing 1/8
        const LatticeSymbol symbol = sample_circle_symbol(g, tan_sym, cut);
        const TransferenceResult res = transference_error(ah, v, f, symbol, l, g);
        errors.push_back(res.error);
        records.push_back(make_record("transference", o.seed, static_cast<int>(errors.size()) - 1,
                                      static_cast<int>(l), f.name(), std::nullopt, res.error,
                                      errors.front()));
        std::cout << "transference: l=" << l << " error=" << res.error
                  << " snap_distance=" << res.snap_distance << "\n";
    }
    emit(o, records);
    bool ok = true;
    for (size_t i = 1; i < errors.size(); ++i)
        if (errors[i] > 0.5 * errors[i - 1])
            ok = false;
    std::cout << "transference: " << (ok ? "OK (error at least halves per doubling)" : "BREACH")
              << "\n";
    return ok ? 0 : 1;
}

int cmd_kernel_check(const Opts& o) {
    std::vector<ExperimentRecord> records;
    // Single harmonic alpha_1 = 1: |K| = 1/(2 pi |z|^2) exactly.
    std::vector<cplx> coeffs(3);
    coeffs[2] = 1.0;
    const CircleSymbol harmonic(std::move(coeffs), 1, false);
    {
        const double h = 1.0 / 32.0;
        const int n = 134;
        const Grid g(2, 0.5 * n * h, n);
        const AnnulusKernel k = kernel_from_symbol(harmonic, g, 0.5, 2.0);
        const CzConstants c = cz_condition_check(k);
        const double c0_exact = 1.0 / (2.0 * M_PI);
        const double c1_exact = std::sqrt(5.0) / (2.0 * M_PI);
        records.push_back(make_record("kernel-check", o.seed, 0, 1, "harmonic", std::nullopt,
                                      c.c0, c0_exact));
        records.push_back(make_record("kernel-check", o.seed, 1, 1, "harmonic", std::nullopt,
                                      c.c1, c1_exact));
        const bool ok0 = std::abs(c.c0 - c0_exact) <= 1e-6;
        const bool ok1 = std::abs(c.c1 - c1_exact) <= 0.02 * c1_exact;
        std::cout << "kernel-check: harmonic C0=" << c.c0 << " (exact " << c0_exact << ") C1="
                  << c.c1 << " (exact " << c1_exact << ")" << ((ok0 && ok1) ? " OK" : " BREACH")
                  << "\n";
        if (!(ok0 && ok1)) {
            emit(o, records);
            return 1;
        }
    }
    {
        const CircleSymbol tan_sym = tan_symbol();
        const double h = 1.0 / 160.0;
        const int n = 3208;
        const Grid g(2, 0.5 * n * h, n);
        const AnnulusKernel k = kernel_from_symbol(tan_sym, g, 0.1, 10.0);
        const CzConstants c = cz_condition_check(k);
        records.push_back(make_record("kernel-check", o.seed, 2, 64, "tan", std::nullopt, c.c0, 0.0));
        records.push_back(make_record("kernel-check", o.seed, 3, 64, "tan", std::nullopt, c.c1, 0.0));
        std::cout << "kernel-check: tan C0=" << c.c0 << " C1=" << c.c1 << "\n";
    }
    emit(o, records);
    std::cout << "kernel-check: OK\n";
    return 0;
}

int cmd_tensor_check(const Opts& o) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::gaussian_hermitian;
    spec.dim = o.dim;
    spec.seed = o.seed;
    const auto samples = sample_ensemble(spec, o.trials);
    const double lower = std::exp(-1.0) / std::sqrt(M_PI);
    const double eps = 1e-3;
    std::vector<ExperimentRecord> records;
    bool ok = true;
    for (int t = 0; t < o.trials; ++t) {
        const ComplexMatrix& x = samples[static_cast<size_t>(t)].first.matrix();
        const double base = weak_l1_quasinorm(x);
        double first_value = 0.0;
        for (double l : {1.0, 3.0, 10.0}) {
            const Grid g(1, 8.0 * l, 1280);
            const WeightedSingularSeq density = field_to_weighted(gaussian_density(l, g));
            const double value = weak_l1_weighted(tensor_weighted(x, density));
            if (l == 1.0)
                first_value = value;
            if (value < lower * base - eps || value > base + eps ||
                std::abs(value - first_value) > eps)
                ok = false;
            records.push_back(make_record("tensor-check", o.seed, t, static_cast<int>(l),
                                          "gaussian", std::nullopt, value, base));
        }
    }
    emit(o, records);
    std::cout << "tensor-check: trials=" << o.trials << " dim=" << o.dim
              << (ok ? " OK (sandwich and l-invariance hold)" : " BREACH") << "\n";
    return ok ? 0 : 1;
}

void add_common(CLI::App* sub, Opts& o) {
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--trials", o.trials, "number of trials");
    sub->add_option("--function", o.function,
                    "function name: identity, abs, sin, soft_abs, piecewise");
    sub->add_option("--p", o.p, "Schatten exponent (fp-scaling)");
    sub->add_option("--ensemble", o.ensemble,
                    "ensemble: gaussian_hermitian, diagonal_crossing, low_rank_perturbation");
    sub->add_option("--out", o.out, "report output path");
    sub->add_option("--format", o.format, "report format: csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--tol", o.tol, "assertion tolerance");
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"numerical laboratory for weak-(1,infinity) operator Lipschitz estimates"};
    app.set_config("--config");
    app.allow_config_extras(true);
    app.require_subcommand(1);

    Opts o;
    std::string command;

    auto* identity = app.add_subcommand("identity-check", "commutator identity residuals");
    add_common(identity, o);
    identity->add_option("--dim", o.dim, "matrix dimension");
    identity->callback([&command] { command = "identity-check"; });

    auto* np = app.add_subcommand("np-ratio", "weak commutator ratios on Gaussian pairs");
    add_common(np, o);
    np->add_option("--dim", o.dim, "matrix dimension");
    np->callback([&command] { command = "np-ratio"; });

    auto* perturb = app.add_subcommand("perturb-ratio", "weak perturbation ratios + dilation check");
    add_common(perturb, o);
    perturb->add_option("--dim", o.dim, "matrix dimension");
    perturb->callback([&command] { command = "perturb-ratio"; });

    auto* fp = app.add_subcommand("fp-scaling", "Schatten-p ratio curve");
    add_common(fp, o);
    fp->add_option("--dim", o.dim, "matrix dimension");
    fp->callback([&command] { command = "fp-scaling"; });

    auto* contrast = app.add_subcommand("contrast", "trace-norm vs weak-norm ratio curves");
    add_common(contrast, o);
    contrast->add_option("--dim", o.dims, "matrix dimensions (repeatable, ascending)");
    contrast->callback([&command] { command = "contrast"; });

    auto* smoothing = app.add_subcommand("smoothing", "Gaussian smoothing decay sweep");
    add_common(smoothing, o);
    smoothing->callback([&command] { command = "smoothing"; });

    auto* transference = app.add_subcommand("transference", "multiplier transference sweep");
    add_common(transference, o);
    transference->callback([&command] { command = "transference"; });

    auto* kernel = app.add_subcommand("kernel-check", "kernel decay constants");
    add_common(kernel, o);
    kernel->callback([&command] { command = "kernel-check"; });

    auto* tensor = app.add_subcommand("tensor-check", "weighted tensor sandwich check");
    add_common(tensor, o);
    tensor->add_option("--dim", o.dim, "matrix dimension");
    tensor->callback([&command] { command = "tensor-check"; });

    std::vector<std::string> argv_like = args;
    argv_like.insert(argv_like.begin(), "weaklip");
    std::vector<const char*> argv;
    argv.reserve(argv_like.size());
    for (const std::string& s : argv_like)
        argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (command == "identity-check")
            return cmd_identity_check(o);
        if (command == "np-ratio")
            return cmd_np_ratio(o);
        if (command == "perturb-ratio")
            return cmd_perturb_ratio(o);
        if (command == "fp-scaling")
            return cmd_fp_scaling(o);
        if (command == "contrast")
            return cmd_contrast(o);
        if (command == "smoothing")
            return cmd_smoothing(o);
        if (command == "transference")
            return cmd_transference(o);
        if (command == "kernel-check")
            return cmd_kernel_check(o);
        if (command == "tensor-check")
            return cmd_tensor_check(o);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 2;
}

} // namespace weaklip
