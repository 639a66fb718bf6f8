// SPDX-License-Identifier: Apache-2.0
#include "qcut/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcut {

std::string to_string(AllocationMode mode) {
    switch (mode) {
        case AllocationMode::proportional: return "proportional";
        case AllocationMode::multinomial: return "multinomial";
        case AllocationMode::montecarlo: return "montecarlo";
    }
    return "unknown";
}

CutEstimate clip_and_renormalize(CutEstimate estimate) {
    double sum = 0.0;
    for (auto& p : estimate.probs) {
        p = std::min(1.0, std::max(0.0, p));
        sum += p;
    }
    if (sum > 0.0) {
        for (auto& p : estimate.probs) p /= sum;
    } else {
        estimate.probs = {0.5, 0.5};
    }
    return estimate;
}

Observable::Observable(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != 2 || matrix_.cols() != 2) {
        throw DimensionError("observable must be 2x2");
    }
    if (!is_hermitian(matrix_, kExactTol)) throw ValidationError("observable is not Hermitian");
}

Observable Observable::identity() { return Observable(ComplexMatrix::identity(2)); }

Observable Observable::pauli_z() { return Observable(qcut::pauli_z()); }

bool Observable::is_diagonal(double tol) const {
    return std::abs(matrix_(0, 1)) <= tol && std::abs(matrix_(1, 0)) <= tol;
}

namespace {

std::vector<std::uint64_t> largest_remainder(const std::vector<double>& p, std::uint64_t total) {
    const std::size_t m = p.size();
    std::vector<std::uint64_t> counts(m, 0);
    std::vector<double> fractional(m, 0.0);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double raw = static_cast<double>(total) * p[i];
        const double fl = std::floor(raw);
        counts[i] = static_cast<std::uint64_t>(fl);
        fractional[i] = raw - fl;
        assigned += counts[i];
    }
    // Remaining shots go to the largest fractional parts, ties to the lower
    // term index.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fractional[a] > fractional[b]; });
    for (std::size_t i = 0; assigned < total; ++i) {
        counts[order[i % m]] += 1;
        ++assigned;
    }
    return counts;
}

std::size_t draw_term(const std::vector<double>& p, Rng& rng) {
    const double u = uniform_double(rng);
    std::size_t pick = 0;
    double csum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) pick = i; // rounding-edge fallback: last positive term
        csum += p[i];
        if (u < csum) return i;
    }
    return pick;
}

} // namespace

ShotPlan allocate_shots(const WireCutDecomposition& d, std::uint64_t total, AllocationMode mode,
                        Rng* rng) {
    const auto& p = d.probabilities();
    ShotPlan plan;
    plan.total = total;
    plan.mode = mode;

    if (mode == AllocationMode::proportional) {
        plan.per_term = largest_remainder(p, total);
        return plan;
    }

    if (rng == nullptr) throw DomainError("sampling allocation modes require a random source");
    plan.per_term.assign(p.size(), 0);
    for (std::uint64_t s = 0; s < total; ++s) plan.per_term[draw_term(p, *rng)] += 1;
    return plan;
}

CutEstimate estimate_distribution(const WireCutDecomposition& d, const PureState& input,
                                  std::uint64_t total, AllocationMode mode, Rng& rng) {
    if (total == 0) throw DomainError("shot budget must be at least 1");

    const ShotPlan plan = allocate_shots(d, total, mode, &rng);
    const auto& terms = d.terms();

    CutEstimate est;
    est.kappa = d.kappa();
    est.shots_used = plan.per_term;
    est.per_term_freqs.assign(terms.size(), {0.0, 0.0});

    std::vector<std::array<std::uint64_t, 2>> counts(terms.size(), {0, 0});
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::uint64_t s = 0; s < plan.per_term[i]; ++s) {
            counts[i][static_cast<std::size_t>(sample_term(terms[i], input, rng))] += 1;
        }
        if (plan.per_term[i] > 0) {
            const double n = static_cast<double>(plan.per_term[i]);
            est.per_term_freqs[i] = {static_cast<double>(counts[i][0]) / n,
                                     static_cast<double>(counts[i][1]) / n};
        }
    }

    if (mode == AllocationMode::montecarlo) {
        // Per-shot estimator: each shot contributes sign(c_i) * kappa to its
        // outcome bin.
        for (std::size_t b = 0; b < 2; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const double sign = terms[i].coefficient() < 0.0 ? -1.0 : 1.0;
                acc += sign * static_cast<double>(counts[i][b]);
            }
            est.probs[b] = est.kappa * acc / static_cast<double>(total);
        }
    } else {
        // Coefficient-weighted recombination of the per-term frequencies.
        // Terms that received no shots contribute zero.
        for (std::size_t b = 0; b < 2; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                acc += terms[i].coefficient() * est.per_term_freqs[i][b];
            }
            est.probs[b] = acc;
        }
    }
    return est;
}

double estimate_expectation(const WireCutDecomposition& d, const PureState& input,
                            const Observable& obs, std::uint64_t total, AllocationMode mode,
                            Rng& rng) {
    if (!obs.is_diagonal()) {
        throw UnsupportedObservable(
            "only computational-diagonal observables are supported; rotate on the receiver side");
    }
    const CutEstimate est = estimate_distribution(d, input, total, mode, rng);
    return est.probs[0] * obs.matrix()(0, 0).real() + est.probs[1] * obs.matrix()(1, 1).real();
}

std::uint64_t shots_for_accuracy(double kappa, double epsilon) {
    if (!(kappa >= 1.0)) throw DomainError("kappa must be >= 1");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
    return static_cast<std::uint64_t>(std::ceil(kappa * kappa / (epsilon * epsilon)));
}

double l2_error(const std::array<double, 2>& estimate, const std::array<double, 2>& exact) {
    const double d0 = estimate[0] - exact[0];
    const double d1 = estimate[1] - exact[1];
    return std::sqrt(d0 * d0 + d1 * d1);
}

double l2_error(const std::vector<double>& estimate, const std::vector<double>& exact) {
    if (estimate.size() != 2 || exact.size() != 2) {
        throw DimensionError("l2_error expects length-2 vectors");
    }
    return l2_error(std::array<double, 2>{estimate[0], estimate[1]},
                    std::array<double, 2>{exact[0], exact[1]});
}

} // namespace qcut
