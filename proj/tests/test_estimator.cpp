// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qcut/estimator.hpp"
#include "qcut/random.hpp"

using namespace qcut;

namespace {

PureState haar_one_qubit_state(Rng& rng) {
    const ComplexMatrix u = haar_random_unitary(2, rng);
    return PureState({u(0, 0), u(1, 0)});
}

double exact_p0(const WireCutDecomposition& d, const PureState& input) {
    return computational_probs(apply_decomposition_exact(d, DensityOperator::from_pure(input)))[0];
}

struct RunStats {
    double mean = 0.0;
    double variance = 0.0;
    double stderr_mean = 0.0;
};

RunStats repeated_estimates(const WireCutDecomposition& d, const PureState& input,
                            std::uint64_t shots, AllocationMode mode, int runs,
                            std::uint64_t seed) {
    std::vector<double> values(runs);
    for (int r = 0; r < runs; ++r) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
        values[r] = estimate_distribution(d, input, shots, mode, rng).probs[0];
    }
    RunStats st;
    st.mean = std::accumulate(values.begin(), values.end(), 0.0) / runs;
    for (double v : values) st.variance += (v - st.mean) * (v - st.mean);
    st.variance /= runs - 1;
    st.stderr_mean = std::sqrt(st.variance / runs);
    return st;
}

} // namespace

TEST_CASE("allocate_shots proportional") {
    {
        const ShotPlan plan = allocate_shots(nme_cut(1.0), 1000, AllocationMode::proportional);
        CHECK(plan.per_term == std::vector<std::uint64_t>{1000, 0, 0});
    }
    {
        // p = (1, 0.2, 0.2)/1.4; floors (714, 142, 142), two remainder shots
        // to the two largest fractional parts.
        const ShotPlan plan = allocate_shots(nme_cut(0.5), 1000, AllocationMode::proportional);
        CHECK(plan.per_term == std::vector<std::uint64_t>{714, 143, 143});
    }
    {
        const ShotPlan plan = allocate_shots(harada_cut(), 3, AllocationMode::proportional);
        CHECK(plan.per_term == std::vector<std::uint64_t>{1, 1, 1});
    }
    {
        const ShotPlan plan = allocate_shots(harada_cut(), 0, AllocationMode::proportional);
        CHECK(plan.per_term == std::vector<std::uint64_t>{0, 0, 0});
    }
}

TEST_CASE("allocate_shots stays within one shot of the exact share") {
    const WireCutDecomposition d = nme_cut(0.37);
    for (std::uint64_t total : {1ull, 7ull, 100ull, 12345ull}) {
        const ShotPlan plan = allocate_shots(d, total, AllocationMode::proportional);
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < plan.per_term.size(); ++i) {
            CHECK(std::abs(static_cast<double>(plan.per_term[i]) -
                           static_cast<double>(total) * d.probabilities()[i]) < 1.0);
            sum += plan.per_term[i];
        }
        CHECK(sum == total);
    }
}

TEST_CASE("allocate_shots sampling modes") {
    const WireCutDecomposition d = nme_cut(0.0);
    Rng rng(5);
    for (AllocationMode mode : {AllocationMode::multinomial, AllocationMode::montecarlo}) {
        const ShotPlan plan = allocate_shots(d, 9000, mode, &rng);
        CHECK(std::accumulate(plan.per_term.begin(), plan.per_term.end(), 0ull) == 9000);
        // Counts should land near total/3; 10 sigma leaves no flake room.
        for (std::uint64_t n : plan.per_term) {
            CHECK(std::abs(static_cast<double>(n) - 3000.0) <= 10.0 * std::sqrt(9000.0 * (1.0 / 3.0) * (2.0 / 3.0)));
        }
    }
    CHECK_THROWS_AS(allocate_shots(d, 10, AllocationMode::multinomial, nullptr), DomainError);
}

TEST_CASE("estimate_distribution deterministic cases") {
    const WireCutDecomposition d = nme_cut(1.0);
    const PureState zero({1.0, 0.0});
    Rng rng(7);
    const CutEstimate est = estimate_distribution(d, zero, 500, AllocationMode::proportional, rng);
    CHECK(est.probs[0] == 1.0);
    CHECK(est.probs[1] == 0.0);
    CHECK(est.kappa == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(est.shots_used == std::vector<std::uint64_t>{500, 0, 0});

    CHECK_THROWS_AS(estimate_distribution(d, zero, 0, AllocationMode::proportional, rng),
                    DomainError);
}

TEST_CASE("proportional recombination is exactly normalized") {
    Rng state_rng(11);
    for (double k : {0.0, 0.5, 1.0}) {
        const WireCutDecomposition d = nme_cut(k);
        for (int i = 0; i < 10; ++i) {
            const PureState input = haar_one_qubit_state(state_rng);
            Rng rng(derive_seed(1234, {static_cast<std::uint64_t>(i)}));
            const CutEstimate est =
                estimate_distribution(d, input, 2000, AllocationMode::proportional, rng);
            CHECK(std::abs(est.probs[0] + est.probs[1] - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("exact-limit recombination reproduces the identity distribution") {
    // Replacing the empirical frequencies by the exact term distributions
    // must give the exact input distribution.
    const double s = 1.0 / std::sqrt(2.0);
    const PureState plus({s, s});
    const WireCutDecomposition d = harada_cut();
    double p0 = 0.0;
    double p1 = 0.0;
    for (const auto& term : d.terms()) {
        const auto probs =
            computational_probs(apply_term_exact(term, DensityOperator::from_pure(plus)));
        p0 += term.coefficient() * probs[0];
        p1 += term.coefficient() * probs[1];
    }
    CHECK(p0 == doctest::Approx(0.5).epsilon(1e-12));

    // <Z> on |+> in the same exact limit vanishes by symmetry.
    const Observable z = Observable::pauli_z();
    CHECK(std::abs(p0 * z.matrix()(0, 0).real() + p1 * z.matrix()(1, 1).real()) <= 1e-12);
}

TEST_CASE("unbiasedness across k and allocation modes") {
    Rng state_rng(17);
    const PureState input = haar_one_qubit_state(state_rng);
    const int runs = 500;
    const std::uint64_t shots = 10000;

    for (double k : {0.0, 0.5, 1.0}) {
        const WireCutDecomposition d = nme_cut(k);
        const double exact = exact_p0(d, input);
        for (AllocationMode mode :
             {AllocationMode::proportional, AllocationMode::multinomial, AllocationMode::montecarlo}) {
            const RunStats st = repeated_estimates(d, input, shots, mode, runs,
                                                   derive_seed(99, {static_cast<std::uint64_t>(k * 16),
                                                                    static_cast<std::uint64_t>(mode)}));
            const double se = std::max(st.stderr_mean, 1e-9);
            INFO("k=", k, " mode=", to_string(mode), " mean=", st.mean, " exact=", exact);
            CHECK(std::abs(st.mean - exact) <= 4.0 * se);
        }
    }
}

TEST_CASE("variance shrinks as entanglement grows") {
    const int n_states = 100;
    const int runs = 60;
    const std::uint64_t shots = 2000;

    std::vector<double> mean_var;
    std::vector<double> se_var;
    for (double k : {0.0, 0.5, 1.0}) {
        const WireCutDecomposition d = nme_cut(k);
        std::vector<double> vars(n_states);
        for (int s = 0; s < n_states; ++s) {
            Rng one_state(derive_seed(7000, {static_cast<std::uint64_t>(s)}));
            const PureState input = haar_one_qubit_state(one_state);
            vars[s] = repeated_estimates(d, input, shots, AllocationMode::proportional, runs,
                                         derive_seed(7100, {static_cast<std::uint64_t>(s),
                                                            static_cast<std::uint64_t>(k * 16)}))
                          .variance;
        }
        const double mean = std::accumulate(vars.begin(), vars.end(), 0.0) / n_states;
        double sq = 0.0;
        for (double v : vars) sq += (v - mean) * (v - mean);
        mean_var.push_back(mean);
        se_var.push_back(std::sqrt(sq / (n_states - 1) / n_states));
    }

    // Non-increasing in k, with slack of two combined standard errors.
    for (std::size_t i = 0; i + 1 < mean_var.size(); ++i) {
        const double combined = std::sqrt(se_var[i] * se_var[i] + se_var[i + 1] * se_var[i + 1]);
        CHECK(mean_var[i + 1] <= mean_var[i] + 2.0 * combined);
    }
    // And the endpoints must be clearly ordered: kappa drops from 3 to 1.
    CHECK(mean_var.back() < mean_var.front());
}

TEST_CASE("estimates are deterministic for a fixed seed") {
    const WireCutDecomposition d = nme_cut(0.4);
    Rng state_rng(29);
    const PureState input = haar_one_qubit_state(state_rng);
    for (AllocationMode mode :
         {AllocationMode::proportional, AllocationMode::multinomial, AllocationMode::montecarlo}) {
        Rng a(4321), b(4321);
        const CutEstimate ea = estimate_distribution(d, input, 5000, mode, a);
        const CutEstimate eb = estimate_distribution(d, input, 5000, mode, b);
        CHECK(ea.probs[0] == eb.probs[0]);
        CHECK(ea.probs[1] == eb.probs[1]);
        CHECK(ea.shots_used == eb.shots_used);
        REQUIRE(ea.per_term_freqs.size() == eb.per_term_freqs.size());
        for (std::size_t i = 0; i < ea.per_term_freqs.size(); ++i) {
            CHECK(ea.per_term_freqs[i][0] == eb.per_term_freqs[i][0]);
        }
    }
}

TEST_CASE("estimate_expectation") {
    const WireCutDecomposition d = nme_cut(0.5);
    const double s = 1.0 / std::sqrt(2.0);
    const PureState plus({s, s});
    Rng rng(31);

    // Identity observable: frequencies sum to 1 and coefficients sum to 1.
    CHECK(estimate_expectation(d, plus, Observable::identity(), 1000, AllocationMode::proportional,
                               rng) == doctest::Approx(1.0).epsilon(1e-12));

    // <Z> on |0> through the k=0.5 cut, checked for unbiasedness.
    const PureState zero({1.0, 0.0});
    double mean = 0.0;
    const int runs = 200;
    std::vector<double> values(runs);
    for (int r = 0; r < runs; ++r) {
        Rng rep(derive_seed(555, {static_cast<std::uint64_t>(r)}));
        values[r] =
            estimate_expectation(d, zero, Observable::pauli_z(), 10000, AllocationMode::proportional, rep);
        mean += values[r];
    }
    mean /= runs;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (runs - 1) / runs);
    CHECK(std::abs(mean - 1.0) <= 4.0 * std::max(se, 1e-9));

    CHECK_THROWS_AS(estimate_expectation(d, plus, Observable(hadamard()), 100,
                                         AllocationMode::proportional, rng),
                    UnsupportedObservable);
}

TEST_CASE("shots_for_accuracy") {
    CHECK(shots_for_accuracy(1.0, 1.0) == 1);
    CHECK(shots_for_accuracy(3.0, 0.01) == 90000);
    CHECK(shots_for_accuracy(1.4, 0.01) == 19600);
    CHECK_THROWS_AS(shots_for_accuracy(3.0, 0.0), DomainError);
    CHECK_THROWS_AS(shots_for_accuracy(0.5, 0.1), DomainError);
}

TEST_CASE("l2_error") {
    using pair_t = std::array<double, 2>;
    CHECK(l2_error(pair_t{0.3, 0.7}, pair_t{0.3, 0.7}) == 0.0);
    CHECK(l2_error(pair_t{1.0, 0.0}, pair_t{0.0, 1.0}) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(l2_error(pair_t{0.6, 0.4}, pair_t{0.5, 0.5}) ==
          doctest::Approx(0.1414213562373095).epsilon(1e-12));
    CHECK_THROWS_AS(l2_error(std::vector<double>{1.0}, std::vector<double>{1.0, 0.0}),
                    DimensionError);
}

TEST_CASE("clip_and_renormalize") {
    CutEstimate est;
    est.probs = {1.1, -0.1};
    const CutEstimate clipped = clip_and_renormalize(est);
    CHECK(clipped.probs[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(clipped.probs[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(clipped.probs[0] + clipped.probs[1] == doctest::Approx(1.0).epsilon(1e-15));
}
