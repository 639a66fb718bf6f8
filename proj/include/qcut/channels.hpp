// SPDX-License-Identifier: Apache-2.0
//
// Wire-cut decompositions of the single-qubit identity channel. A cut
// replaces the wire by a coefficient-weighted list of sub-experiments
// (CutTerms): the NME construction pairs a teleportation circuit using the
// resource |Phi^k> with two measure-and-prepare compensation circuits; the
// optimal entanglement-free cut uses three measure-and-prepare circuits.
//
// Every term carries both a declarative circuit description and an exact
// channel derived from it by simulation; decompositions are verified against
// the identity channel through their Choi matrices at construction time.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcut/entangle.hpp"
#include "qcut/qmath.hpp"
#include "qcut/random.hpp"

namespace qcut {

enum class TermLabel { tele, comp1, comp2, mp_general };

std::string to_string(TermLabel label);

// Receiver gate applied only when the named sender measurement bit is 1.
// Bits are indexed by sender qubit: bit 0 is the input wire's measurement.
struct ControlledGate {
    ComplexMatrix gate; // 2x2
    std::size_t control_bit;
};

// Declarative description of one sub-experiment. The sender register is the
// input qubit plus, when a resource pair is present, the sender half of that
// pair; the receiver qubit is the other half of the pair, or a fresh |0>.
// Sender gates act on the whole sender register and are followed by a
// computational measurement of every sender qubit.
struct TermCircuit {
    std::optional<PureState> resource;       // shared pair, sender half first
    std::vector<ComplexMatrix> sender_gates; // applied in order
    std::vector<ControlledGate> receiver_corrections;
    std::vector<ComplexMatrix> receiver_gates; // applied after corrections

    std::size_t sender_qubits() const { return resource ? 2 : 1; }
};

// One (sign, effect, preparation) entry of a measure-and-prepare channel
// rho -> sum_i a_i Tr[E_i rho] rho_i.
struct MpEffect {
    int sign;             // +1 or -1
    ComplexMatrix effect; // 2x2 PSD Hermitian POVM element
    DensityOperator prepare;
};

class MeasurePrepareChannel {
public:
    // Validates signs, PSD effects and sum(E_i) = I.
    explicit MeasurePrepareChannel(std::vector<MpEffect> terms);

    const std::vector<MpEffect>& terms() const { return terms_; }

    // Linear action on an arbitrary (not necessarily Hermitian) 2x2 matrix.
    ComplexMatrix apply_raw(const ComplexMatrix& rho) const;

private:
    std::vector<MpEffect> terms_;
};

namespace detail {

// Flattened circuit data sized for allocation-free per-shot sampling.
struct Sampler {
    bool has_resource = false;
    std::array<cdouble, 4> resource{};
    std::size_t sender_dim = 2; // 2 or 4
    std::array<cdouble, 16> sender_u{};
    struct CGate {
        std::array<cdouble, 4> gate;
        std::size_t bit;
    };
    std::array<CGate, 2> corrections{};
    std::size_t n_corrections = 0;
    std::array<cdouble, 4> receiver_u{};
};

} // namespace detail

// One sub-experiment of a decomposition, with both exact-channel and
// shot-sampled semantics. The exact channel is derived from the circuit by
// density-matrix simulation and validated to be CPTP at construction.
class CutTerm {
public:
    CutTerm(TermLabel label, double coefficient, TermCircuit circuit);

    TermLabel label() const { return label_; }
    double coefficient() const { return coefficient_; }
    const TermCircuit& circuit() const { return circuit_; }

    // Choi matrix sum_ij |i><j| (x) E(|i><j|); block (i,j) holds E(|i><j|).
    const ComplexMatrix& choi() const { return choi_; }

    // Measure-and-prepare view; present for terms without a resource state.
    const std::optional<MeasurePrepareChannel>& mp_channel() const { return mp_; }

    // Linear channel action on an arbitrary 2x2 matrix, via the Choi blocks.
    ComplexMatrix apply_raw(const ComplexMatrix& rho) const;

    const detail::Sampler& sampler() const { return sampler_; }

private:
    TermLabel label_;
    double coefficient_;
    TermCircuit circuit_;
    ComplexMatrix choi_;
    std::optional<MeasurePrepareChannel> mp_;
    detail::Sampler sampler_;
};

// Quasi-probabilistic decomposition of the identity channel: coefficients
// sum to 1, and the coefficient-weighted Choi sum must reproduce the
// identity channel within 1e-10 (checked at construction).
class WireCutDecomposition {
public:
    explicit WireCutDecomposition(std::vector<CutTerm> terms);

    const std::vector<CutTerm>& terms() const { return terms_; }
    std::vector<double> coefficients() const;

    // Sampling overhead kappa = sum_i |c_i|.
    double kappa() const { return kappa_; }

    // Sampling weights p_i = |c_i| / kappa.
    const std::vector<double>& probabilities() const { return probabilities_; }

private:
    std::vector<CutTerm> terms_;
    double kappa_;
    std::vector<double> probabilities_;
};

// Optimal entanglement-free wire cut: measurements in the H and SH bases
// plus a subtracted computational-measurement term; kappa = 3.
WireCutDecomposition harada_cut();

// NME wire cut: teleportation through |Phi^k> plus two compensation circuits
// weighted by +-c with c = 1 - R(|Phi^k>); kappa = 1 + 2c.
WireCutDecomposition nme_cut(double k);

// Closed form of the teleportation term's output: the diagonal of rho is
// preserved and the off-diagonal entries are scaled by 2kK^2. Kept separate
// from the circuit-derived channel as an independent cross-check.
DensityOperator teleport_exact(double k, const DensityOperator& rho);

DensityOperator apply_term_exact(const CutTerm& term, const DensityOperator& rho);

// sum_i c_i E_i(rho); equals rho for the decompositions built here.
DensityOperator apply_decomposition_exact(const WireCutDecomposition& d, const DensityOperator& rho);

ComplexMatrix choi(const CutTerm& term);
ComplexMatrix choi(const WireCutDecomposition& d);

// Choi matrix of the identity channel (the unnormalized maximally entangled
// projector).
ComplexMatrix choi_identity();

// One shot of a term: prepare, evolve, sample the sender measurements from
// the Born rule, collapse, apply the classically controlled corrections and
// receiver gates, then sample the receiver's computational measurement.
int sample_term(const CutTerm& term, const PureState& input, Rng& rng);

// Sampling overhead of the NME cut: kappa(k) = 3 - 2 R(|Phi^k>).
double kappa_nme(double k);

} // namespace qcut
