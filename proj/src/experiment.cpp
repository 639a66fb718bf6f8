// SPDX-License-Identifier: Apache-2.0
#include "qcut/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace qcut {

std::vector<std::uint64_t> ExperimentConfig::default_shot_budgets() {
    std::vector<std::uint64_t> budgets;
    for (std::uint64_t n = 64; n <= 65536; n *= 2) budgets.push_back(n);
    return budgets;
}

void ExperimentConfig::validate() const {
    if (robustness_levels.empty()) throw ValidationError("no robustness levels configured");
    for (double r : robustness_levels) {
        if (!(r >= 0.0) || !(r <= 1.0)) throw ValidationError("robustness levels must lie in [0, 1]");
    }
    if (shot_budgets.empty()) throw ValidationError("no shot budgets configured");
    for (std::uint64_t n : shot_budgets) {
        if (n == 0) throw ValidationError("shot budgets must be >= 1");
    }
    if (n_states == 0) throw ValidationError("n_states must be >= 1");
}

double run_trial(const ComplexMatrix& u, double robustness, std::uint64_t shots, Rng& rng,
                 AllocationMode mode, bool clip) {
    if (u.rows() != 2 || u.cols() != 2) throw DimensionError("input unitary must be 2x2");
    if (!is_unitary(u, kStructuralTol)) throw DomainError("input matrix is not unitary");

    const PureState input({u(0, 0), u(1, 0)}); // u|0>
    const std::array<double, 2> exact = {std::norm(u(0, 0)), std::norm(u(1, 0))};

    const WireCutDecomposition d = nme_cut(k_from_robustness(robustness));
    CutEstimate est = estimate_distribution(d, input, shots, mode, rng);
    if (clip) est = clip_and_renormalize(std::move(est));
    return l2_error(est.probs, exact);
}

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config, unsigned threads) {
    config.validate();

    const std::size_t n_levels = config.robustness_levels.size();
    const std::size_t n_budgets = config.shot_budgets.size();
    const std::size_t n_states = config.n_states;

    // Per-cell errors land in a preallocated grid; aggregation afterwards
    // walks it in a fixed order, so thread count cannot change the result.
    std::vector<double> errors(n_states * n_levels * n_budgets, 0.0);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            Rng state_rng(derive_seed(config.master_seed, {kStateStream, s}));
            const ComplexMatrix u = haar_random_unitary(2, state_rng);
            for (std::size_t ri = 0; ri < n_levels; ++ri) {
                for (std::size_t bi = 0; bi < n_budgets; ++bi) {
                    Rng cell_rng(derive_seed(config.master_seed, {kCellStream, s, ri, bi}));
                    errors[(s * n_levels + ri) * n_budgets + bi] =
                        run_trial(u, config.robustness_levels[ri], config.shot_budgets[bi], cell_rng,
                                  config.mode, config.clip);
                }
            }
        }
    };

    const std::size_t n_threads = std::max<std::size_t>(
        1, std::min<std::size_t>(threads == 0 ? 1 : threads, n_states));
    if (n_threads == 1) {
        work(0, n_states);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            const std::size_t begin = n_states * t / n_threads;
            const std::size_t end = n_states * (t + 1) / n_threads;
            pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<ExperimentRecord> records;
    records.reserve(n_levels * n_budgets);
    for (std::size_t ri = 0; ri < n_levels; ++ri) {
        for (std::size_t bi = 0; bi < n_budgets; ++bi) {
            double mean = 0.0;
            for (std::size_t s = 0; s < n_states; ++s) {
                mean += errors[(s * n_levels + ri) * n_budgets + bi];
            }
            mean /= static_cast<double>(n_states);

            double var = 0.0;
            for (std::size_t s = 0; s < n_states; ++s) {
                const double d = errors[(s * n_levels + ri) * n_budgets + bi] - mean;
                var += d * d;
            }
            const double stderr_l2 =
                n_states > 1 ? std::sqrt(var / static_cast<double>(n_states - 1))
                                   / std::sqrt(static_cast<double>(n_states))
                             : 0.0;

            ExperimentRecord rec;
            rec.robustness = config.robustness_levels[ri];
            rec.k = k_from_robustness(rec.robustness);
            rec.shots = config.shot_budgets[bi];
            rec.n_states = n_states;
            rec.mean_l2 = mean;
            rec.stderr_l2 = stderr_l2;
            rec.seed = config.master_seed;
            records.push_back(rec);
        }
    }

    std::sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
        if (a.robustness != b.robustness) return a.robustness < b.robustness;
        return a.shots < b.shots;
    });
    return records;
}

namespace {

// Shortest representation that parses back to the same double; locale-free.
std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

void write_records(const std::vector<ExperimentRecord>& records, RecordFormat format,
                   std::ostream& out) {
    if (records.empty()) throw DomainError("no records to write");

    if (format == RecordFormat::csv) {
        out << "robustness,k,shots,n_states,mean_l2,stderr_l2,seed\n";
        for (const auto& r : records) {
            out << format_double(r.robustness) << ',' << format_double(r.k) << ',' << r.shots << ','
                << r.n_states << ',' << format_double(r.mean_l2) << ','
                << format_double(r.stderr_l2) << ',' << r.seed << '\n';
        }
    } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : records) {
            arr.push_back({{"robustness", r.robustness},
                           {"k", r.k},
                           {"shots", r.shots},
                           {"n_states", r.n_states},
                           {"mean_l2", r.mean_l2},
                           {"stderr_l2", r.stderr_l2},
                           {"seed", r.seed}});
        }
        out << arr.dump(2) << '\n';
    }
    if (!out) throw IoError("failed to write records");
}

void write_records(const std::vector<ExperimentRecord>& records, RecordFormat format,
                   const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) throw IoError("cannot open output file: " + destination.string());
    write_records(records, format, out);
}

} // namespace qcut
