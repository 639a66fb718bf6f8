// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: decomposition verification, overhead queries,
// single-state cut estimation, and the robustness-vs-error sweep.
//
// Exit codes: 0 success, 1 validation or usage error, 2 verification failure.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcut/channels.hpp"
#include "qcut/entangle.hpp"
#include "qcut/estimator.hpp"
#include "qcut/experiment.hpp"

namespace {

using namespace qcut;

const std::map<std::string, AllocationMode> kModeNames = {
    {"proportional", AllocationMode::proportional},
    {"multinomial", AllocationMode::multinomial},
    {"montecarlo", AllocationMode::montecarlo},
};

int cmd_verify(const std::vector<double>& ks, double tolerance) {
    const ComplexMatrix target = choi_identity();
    bool ok = true;

    const double harada_dev = max_abs_diff(choi(harada_cut()), target);
    std::printf("harada        kappa = %-12.10g max Choi deviation = %-12.6g %s\n", 3.0, harada_dev,
                harada_dev <= tolerance ? "ok" : "FAIL");
    ok = ok && harada_dev <= tolerance;

    for (double k : ks) {
        const WireCutDecomposition d = nme_cut(k);
        const double dev = max_abs_diff(choi(d), target);
        std::printf("nme k = %-8.6g kappa = %-12.10g max Choi deviation = %-12.6g %s\n", k,
                    d.kappa(), dev, dev <= tolerance ? "ok" : "FAIL");
        if (dev > tolerance) {
            std::printf("  identity violated at k = %.10g (deviation %.6g > tolerance %.6g)\n", k,
                        dev, tolerance);
            ok = false;
        }
    }
    std::printf("verification %s (tolerance %.6g)\n", ok ? "PASSED" : "FAILED", tolerance);
    return ok ? 0 : 2;
}

int cmd_kappa(double k, double epsilon) {
    const double r = robustness_of_k(k);
    std::printf("k          = %.12g\n", k);
    std::printf("robustness = %.12g\n", r);
    std::printf("c          = %.12g\n", 1.0 - r);
    std::printf("kappa      = %.12g\n", kappa_nme(k));
    std::printf("shots(eps=%g) = %llu\n", epsilon,
                static_cast<unsigned long long>(shots_for_accuracy(std::max(1.0, kappa_nme(k)), epsilon)));
    return 0;
}

PureState resolve_state(const std::string& spec) {
    const double s = 1.0 / std::sqrt(2.0);
    if (spec == "zero") return PureState({1.0, 0.0});
    if (spec == "one") return PureState({0.0, 1.0});
    if (spec == "plus") return PureState({s, s});
    if (spec == "i") return PureState({s, cdouble(0.0, s)});
    // Anything else must be a seed for a Haar draw.
    std::uint64_t seed = 0;
    try {
        std::size_t pos = 0;
        seed = std::stoull(spec, &pos);
        if (pos != spec.size()) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
        throw DomainError("state must be zero|one|plus|i or an unsigned Haar seed");
    }
    Rng rng(derive_seed(seed, {kStateStream}));
    const ComplexMatrix u = haar_random_unitary(2, rng);
    return PureState({u(0, 0), u(1, 0)});
}

int cmd_cut(const std::string& state_spec, double k, std::uint64_t shots, std::uint64_t seed,
            AllocationMode mode, bool clip) {
    const PureState input = resolve_state(state_spec);
    const WireCutDecomposition d = nme_cut(k);

    const auto exact = computational_probs(DensityOperator::from_pure(input));

    Rng rng(seed);
    CutEstimate est = estimate_distribution(d, input, shots, mode, rng);
    if (clip) est = clip_and_renormalize(std::move(est));

    std::printf("state          = %s\n", state_spec.c_str());
    std::printf("k              = %.12g   (kappa = %.12g)\n", k, d.kappa());
    std::printf("mode           = %s\n", to_string(mode).c_str());
    std::printf("exact probs    = (%.12g, %.12g)\n", exact[0], exact[1]);
    std::printf("estimate       = (%.12g, %.12g)\n", est.probs[0], est.probs[1]);
    std::printf("l2 error       = %.12g\n", l2_error(est.probs, {exact[0], exact[1]}));
    std::printf("shot plan      =");
    for (std::size_t i = 0; i < est.shots_used.size(); ++i) {
        std::printf(" %s:%llu", to_string(d.terms()[i].label()).c_str(),
                    static_cast<unsigned long long>(est.shots_used[i]));
    }
    std::printf("\n");
    return 0;
}

int cmd_sweep(const ExperimentConfig& config, unsigned threads, const std::string& out_path,
              RecordFormat format) {
    const auto records = run_sweep(config, threads);
    write_records(records, format, std::filesystem::path(out_path));

    // Per-budget monotonicity summary: mean L2 should fall as robustness
    // rises, up to statistical noise.
    std::printf("wrote %zu records to %s\n", records.size(), out_path.c_str());
    for (std::uint64_t budget : config.shot_budgets) {
        std::vector<const ExperimentRecord*> row;
        for (const auto& r : records) {
            if (r.shots == budget) row.push_back(&r);
        }
        std::printf("shots %-8llu mean_l2 by robustness:", static_cast<unsigned long long>(budget));
        bool monotone = true;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::printf(" %.5g", row[i]->mean_l2);
            if (i > 0) {
                const double slack = 2.0 * std::sqrt(row[i - 1]->stderr_l2 * row[i - 1]->stderr_l2 +
                                                     row[i]->stderr_l2 * row[i]->stderr_l2);
                if (row[i]->mean_l2 > row[i - 1]->mean_l2 + slack) monotone = false;
            }
        }
        std::printf("  [%s]\n", monotone ? "non-increasing" : "violation beyond 2 stderr");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-probabilistic wire cutting with non-maximally entangled resource states"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Check cut decompositions against the identity channel");
    std::vector<double> verify_ks = {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 10.0};
    double verify_tol = 1e-10;
    verify->add_option("--k", verify_ks, "Schmidt ratios to verify (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    verify->add_option("--tol", verify_tol, "max allowed Choi deviation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // kappa
    auto* kappa = app.add_subcommand("kappa", "Report sampling overhead for a resource state");
    double kappa_k = 1.0;
    double kappa_r = -1.0;
    double kappa_eps = 0.01;
    auto* opt_k = kappa->add_option("--k", kappa_k, "Schmidt ratio k >= 0");
    auto* opt_r = kappa->add_option("--robustness", kappa_r, "robustness in [0, 1]");
    kappa->add_option("--epsilon", kappa_eps, "target accuracy for the nominal shot count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    opt_k->excludes(opt_r);
    opt_r->excludes(opt_k);

    // cut
    auto* cut = app.add_subcommand("cut", "Estimate one state's distribution through a cut");
    std::string cut_state = "plus";
    double cut_k = 1.0;
    std::uint64_t cut_shots = 4096;
    std::uint64_t cut_seed = 1;
    AllocationMode cut_mode = AllocationMode::proportional;
    bool cut_clip = false;
    cut->add_option("--state", cut_state, "zero|one|plus|i or an unsigned Haar seed")
        ->capture_default_str();
    cut->add_option("--k", cut_k, "Schmidt ratio of the resource state")->capture_default_str();
    cut->add_option("--shots", cut_shots, "total shot budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cut->add_option("--seed", cut_seed, "seed for the shot sampling")->capture_default_str();
    cut->add_option("--mode", cut_mode, "shot allocation mode (default proportional)")
        ->transform(CLI::CheckedTransformer(kModeNames, CLI::ignore_case));
    cut->add_flag("--clip", cut_clip, "clip the estimate to [0,1] and renormalize");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Robustness-vs-error sweep over random states");
    ExperimentConfig config;
    unsigned sweep_threads = 1;
    std::string sweep_out = "sweep.csv";
    std::string sweep_format = "csv";
    sweep->add_option("--states", config.n_states, "number of random states")->capture_default_str();
    sweep->add_option("--robustness", config.robustness_levels, "robustness levels")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--shots", config.shot_budgets, "shot budgets")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--seed", config.master_seed, "master seed")->capture_default_str();
    sweep->add_option("--mode", config.mode, "shot allocation mode (default proportional)")
        ->transform(CLI::CheckedTransformer(kModeNames, CLI::ignore_case));
    sweep->add_flag("--clip", config.clip, "clip estimates before the L2 error");
    sweep->add_option("--threads", sweep_threads, "worker threads (output is thread-invariant)")
        ->capture_default_str();
    sweep->add_option("-o,--out", sweep_out, "output file")->capture_default_str();
    sweep->add_option("--format", sweep_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(verify)) return cmd_verify(verify_ks, verify_tol);
        if (app.got_subcommand(kappa)) {
            double k = kappa_k;
            if (opt_r->count() > 0) k = k_from_robustness(kappa_r);
            return cmd_kappa(k, kappa_eps);
        }
        if (app.got_subcommand(cut)) {
            return cmd_cut(cut_state, cut_k, cut_shots, cut_seed, cut_mode, cut_clip);
        }
        if (app.got_subcommand(sweep)) {
            return cmd_sweep(config, sweep_threads, sweep_out,
                             sweep_format == "json" ? RecordFormat::json : RecordFormat::csv);
        }
    } catch (const qcut::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
