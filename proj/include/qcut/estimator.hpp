// SPDX-License-Identifier: Apache-2.0
//
// Finite-shot estimation of computational-basis distributions and
// expectation values from a wire-cut decomposition: shot allocation over the
// terms, per-term sampling, and quasi-probability recombination.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qcut/channels.hpp"
#include "qcut/qmath.hpp"
#include "qcut/random.hpp"

namespace qcut {

enum class AllocationMode {
    proportional, // deterministic largest-remainder apportionment of total * p_i
    multinomial,  // counts sampled from the p_i distribution
    montecarlo    // per-shot term draws, recombined with sign(c_i) * kappa weights
};

std::string to_string(AllocationMode mode);

struct ShotPlan {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> per_term;
    AllocationMode mode = AllocationMode::proportional;
};

// Result of one estimation run. probs is a quasi-probability estimate and
// may stray outside [0, 1]; it is not clipped by default because clipping
// would break unbiasedness.
struct CutEstimate {
    std::array<double, 2> probs{};
    std::vector<std::array<double, 2>> per_term_freqs;
    std::vector<std::uint64_t> shots_used;
    double kappa = 0.0;
};

// Optional post-processing: clamp probs to [0, 1] and renormalize.
CutEstimate clip_and_renormalize(CutEstimate estimate);

// 2x2 Hermitian observable. Estimation supports computational-diagonal
// observables only; rotate on the receiver side for anything else.
class Observable {
public:
    explicit Observable(ComplexMatrix matrix);

    static Observable identity();
    static Observable pauli_z();

    const ComplexMatrix& matrix() const { return matrix_; }
    bool is_diagonal(double tol = kExactTol) const;

private:
    ComplexMatrix matrix_;
};

// Distributes `total` shots over the decomposition's terms. The rng is only
// consumed by the sampling modes and may be null for proportional.
ShotPlan allocate_shots(const WireCutDecomposition& d, std::uint64_t total, AllocationMode mode,
                        Rng* rng = nullptr);

// Runs the shot plan, tallies per-term outcome frequencies and recombines
// them into an unbiased estimate of the output distribution.
CutEstimate estimate_distribution(const WireCutDecomposition& d, const PureState& input,
                                  std::uint64_t total, AllocationMode mode, Rng& rng);

// sum_b P(b) * obs[b][b] from an estimated distribution.
double estimate_expectation(const WireCutDecomposition& d, const PureState& input,
                            const Observable& obs, std::uint64_t total, AllocationMode mode,
                            Rng& rng);

// Nominal shot count ceil(kappa^2 / epsilon^2) for target accuracy epsilon.
// The constant factor is a convention, not a guarantee.
std::uint64_t shots_for_accuracy(double kappa, double epsilon);

// Euclidean distance between two length-2 probability vectors.
double l2_error(const std::array<double, 2>& estimate, const std::array<double, 2>& exact);
double l2_error(const std::vector<double>& estimate, const std::vector<double>& exact);

} // namespace qcut
