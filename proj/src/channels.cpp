// SPDX-License-Identifier: Apache-2.0
#include "qcut/channels.hpp"

#include <cmath>
#include <utility>

namespace qcut {

namespace {

// Product of the sender gate list as one unitary on the sender register.
ComplexMatrix combined_sender_unitary(const TermCircuit& circuit) {
    const std::size_t dim = circuit.sender_qubits() == 2 ? 4 : 2;
    ComplexMatrix w = ComplexMatrix::identity(dim);
    for (const auto& g : circuit.sender_gates) {
        if (g.rows() != dim || g.cols() != dim) {
            throw DimensionError("sender gate does not match the sender register");
        }
        w = g * w;
    }
    if (!is_unitary(w, kStructuralTol)) throw ValidationError("sender gates are not unitary");
    return w;
}

// Receiver gate product for a given sender outcome: corrections whose
// control bit is set, in order, then the fixed receiver gates.
ComplexMatrix receiver_unitary_for_outcome(const TermCircuit& circuit, std::size_t outcome) {
    const std::size_t n_bits = circuit.sender_qubits();
    ComplexMatrix g = ComplexMatrix::identity(2);
    for (const auto& cg : circuit.receiver_corrections) {
        if (cg.control_bit >= n_bits) throw DimensionError("correction control bit out of range");
        const std::size_t bit = (outcome >> (n_bits - 1 - cg.control_bit)) & 1u;
        if (bit) g = cg.gate * g;
    }
    for (const auto& rg : circuit.receiver_gates) g = rg * g;
    return g;
}

// Exact linear action of the circuit on an arbitrary 2x2 input matrix:
// joint density simulation, sender measurement as a diagonal-block sum.
ComplexMatrix apply_circuit_raw(const TermCircuit& circuit, const ComplexMatrix& rho_in) {
    ComplexMatrix rest = circuit.resource
                             ? outer(*circuit.resource)
                             : ComplexMatrix(2, 2, {1.0, 0.0, 0.0, 0.0});
    ComplexMatrix full = kron(rho_in, rest);

    const ComplexMatrix w_full = kron(combined_sender_unitary(circuit), ComplexMatrix::identity(2));
    full = w_full * full * w_full.dagger();

    const std::size_t sender_dim = circuit.sender_qubits() == 2 ? 4 : 2;
    ComplexMatrix out(2, 2);
    for (std::size_t s = 0; s < sender_dim; ++s) {
        ComplexMatrix block(2, 2);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) block(r, c) = full(2 * s + r, 2 * s + c);
        const ComplexMatrix g = receiver_unitary_for_outcome(circuit, s);
        out += g * block * g.dagger();
    }
    return out;
}

ComplexMatrix choi_from_circuit(const TermCircuit& circuit) {
    ComplexMatrix choi(4, 4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            ComplexMatrix basis(2, 2);
            basis(i, j) = 1.0;
            const ComplexMatrix image = apply_circuit_raw(circuit, basis);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) choi(2 * i + r, 2 * j + c) = image(r, c);
        }
    }
    return choi;
}

detail::Sampler build_sampler(const TermCircuit& circuit) {
    detail::Sampler sp;
    sp.has_resource = circuit.resource.has_value();
    if (sp.has_resource) {
        for (std::size_t i = 0; i < 4; ++i) sp.resource[i] = circuit.resource->amplitude(i);
    }
    sp.sender_dim = circuit.sender_qubits() == 2 ? 4 : 2;
    const ComplexMatrix w = combined_sender_unitary(circuit);
    for (std::size_t r = 0; r < sp.sender_dim; ++r)
        for (std::size_t c = 0; c < sp.sender_dim; ++c) sp.sender_u[r * sp.sender_dim + c] = w(r, c);

    if (circuit.receiver_corrections.size() > sp.corrections.size()) {
        throw DimensionError("too many receiver corrections");
    }
    sp.n_corrections = circuit.receiver_corrections.size();
    for (std::size_t i = 0; i < sp.n_corrections; ++i) {
        const auto& cg = circuit.receiver_corrections[i];
        sp.corrections[i].bit = cg.control_bit;
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) sp.corrections[i].gate[r * 2 + c] = cg.gate(r, c);
    }

    ComplexMatrix rprod = ComplexMatrix::identity(2);
    for (const auto& rg : circuit.receiver_gates) rprod = rg * rprod;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) sp.receiver_u[r * 2 + c] = rprod(r, c);
    return sp;
}

// Measure-and-prepare view of a resource-free circuit: effects come from
// the sender basis change, preparations from the receiver gates.
MeasurePrepareChannel mp_view(const TermCircuit& circuit) {
    const ComplexMatrix w = combined_sender_unitary(circuit);
    std::vector<MpEffect> effects;
    for (std::size_t j = 0; j < 2; ++j) {
        ComplexMatrix proj(2, 2);
        proj(j, j) = 1.0;
        const ComplexMatrix effect = w.dagger() * proj * w;
        const ComplexMatrix g = receiver_unitary_for_outcome(circuit, j);
        ComplexMatrix prep(2, 2);
        prep(0, 0) = 1.0;
        prep = g * prep * g.dagger();
        effects.push_back(MpEffect{+1, effect, DensityOperator(prep)});
    }
    return MeasurePrepareChannel(std::move(effects));
}

CutTerm make_mp_term(TermLabel label, double coefficient,
                     std::vector<ComplexMatrix> sender_gates,
                     std::vector<ComplexMatrix> receiver_gates) {
    TermCircuit circuit;
    circuit.sender_gates = std::move(sender_gates);
    circuit.receiver_corrections = {ControlledGate{pauli_x(), 0}};
    circuit.receiver_gates = std::move(receiver_gates);
    return CutTerm(label, coefficient, std::move(circuit));
}

CutTerm make_tele_term(double k, double coefficient) {
    // CNOT from the input wire onto the sender half of the pair, H on the
    // input wire, then both sender qubits are measured. The receiver applies
    // X controlled by the pair-half bit and Z controlled by the input bit.
    ComplexMatrix cnot(4, 4);
    cnot(0, 0) = 1.0;
    cnot(1, 1) = 1.0;
    cnot(2, 3) = 1.0;
    cnot(3, 2) = 1.0;

    TermCircuit circuit;
    circuit.resource = nme_state(k);
    circuit.sender_gates = {cnot, kron(hadamard(), identity2())};
    circuit.receiver_corrections = {ControlledGate{pauli_x(), 1}, ControlledGate{pauli_z(), 0}};
    return CutTerm(TermLabel::tele, coefficient, std::move(circuit));
}

} // namespace

std::string to_string(TermLabel label) {
    switch (label) {
        case TermLabel::tele: return "tele";
        case TermLabel::comp1: return "comp1";
        case TermLabel::comp2: return "comp2";
        case TermLabel::mp_general: return "mp-general";
    }
    return "unknown";
}

MeasurePrepareChannel::MeasurePrepareChannel(std::vector<MpEffect> terms) : terms_(std::move(terms)) {
    ComplexMatrix sum(2, 2);
    for (const auto& t : terms_) {
        if (t.sign != 1 && t.sign != -1) throw ValidationError("effect sign must be +1 or -1");
        if (t.effect.rows() != 2 || t.effect.cols() != 2) {
            throw DimensionError("POVM effect must be 2x2");
        }
        if (!is_hermitian(t.effect, kStructuralTol)) {
            throw ValidationError("POVM effect is not Hermitian");
        }
        if (hermitian_eigenvalues(t.effect).front() < -kStructuralTol) {
            throw ValidationError("POVM effect is not positive semi-definite");
        }
        sum += t.effect;
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(2)) > kStructuralTol) {
        throw ValidationError("POVM effects do not sum to the identity");
    }
}

ComplexMatrix MeasurePrepareChannel::apply_raw(const ComplexMatrix& rho) const {
    ComplexMatrix out(2, 2);
    for (const auto& t : terms_) {
        const cdouble weight = (t.effect * rho).trace() * static_cast<double>(t.sign);
        ComplexMatrix contrib = t.prepare.matrix();
        contrib *= weight;
        out += contrib;
    }
    return out;
}

CutTerm::CutTerm(TermLabel label, double coefficient, TermCircuit circuit)
    : label_(label), coefficient_(coefficient), circuit_(std::move(circuit)),
      choi_(choi_from_circuit(circuit_)), sampler_(build_sampler(circuit_)) {
    // Trace preservation: Tr_out of the Choi matrix must be the identity on
    // the input space.
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            cdouble t = 0.0;
            for (std::size_t r = 0; r < 2; ++r) t += choi_(2 * i + r, 2 * j + r);
            const cdouble expected = i == j ? cdouble(1.0) : cdouble(0.0);
            if (std::abs(t - expected) > kStructuralTol) {
                throw ValidationError("cut term channel is not trace preserving");
            }
        }
    }
    // Complete positivity: the Choi matrix is PSD.
    if (hermitian_eigenvalues(choi_).front() < -kStructuralTol) {
        throw ValidationError("cut term channel is not completely positive");
    }
    if (!circuit_.resource) mp_ = mp_view(circuit_);
}

ComplexMatrix CutTerm::apply_raw(const ComplexMatrix& rho) const {
    if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("cut term input must be 2x2");
    ComplexMatrix out(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const cdouble w = rho(i, j);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) out(r, c) += w * choi_(2 * i + r, 2 * j + c);
        }
    }
    return out;
}

WireCutDecomposition::WireCutDecomposition(std::vector<CutTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw ValidationError("decomposition needs at least one term");

    double coeff_sum = 0.0;
    kappa_ = 0.0;
    for (const auto& t : terms_) {
        coeff_sum += t.coefficient();
        kappa_ += std::abs(t.coefficient());
    }
    if (std::abs(coeff_sum - 1.0) > kExactTol) {
        throw ValidationError("decomposition coefficients do not sum to 1");
    }

    probabilities_.reserve(terms_.size());
    double prob_sum = 0.0;
    for (const auto& t : terms_) {
        probabilities_.push_back(std::abs(t.coefficient()) / kappa_);
        prob_sum += probabilities_.back();
    }
    if (std::abs(prob_sum - 1.0) > kExactTol) {
        throw ValidationError("sampling probabilities do not sum to 1");
    }

    if (max_abs_diff(choi(*this), choi_identity()) > kStructuralTol) {
        throw ValidationError("decomposition does not reproduce the identity channel");
    }
}

std::vector<double> WireCutDecomposition::coefficients() const {
    std::vector<double> c;
    c.reserve(terms_.size());
    for (const auto& t : terms_) c.push_back(t.coefficient());
    return c;
}

WireCutDecomposition harada_cut() {
    std::vector<CutTerm> terms;
    terms.push_back(make_mp_term(TermLabel::mp_general, 1.0, {hadamard()}, {hadamard()}));
    terms.push_back(make_mp_term(TermLabel::mp_general, 1.0, {phase_s().dagger(), hadamard()},
                                 {hadamard(), phase_s()}));
    terms.push_back(make_mp_term(TermLabel::mp_general, -1.0, {}, {pauli_x()}));
    return WireCutDecomposition(std::move(terms));
}

WireCutDecomposition nme_cut(double k) {
    const double c = 1.0 - robustness_of_k(k);
    std::vector<CutTerm> terms;
    terms.push_back(make_tele_term(k, 1.0));
    terms.push_back(make_mp_term(TermLabel::comp1, c, {hadamard()}, {hadamard()}));
    terms.push_back(
        make_mp_term(TermLabel::comp2, -c, {phase_s(), hadamard()}, {hadamard(), phase_s()}));
    return WireCutDecomposition(std::move(terms));
}

DensityOperator teleport_exact(double k, const DensityOperator& rho) {
    if (rho.dim() != 2) throw DimensionError("teleportation acts on one qubit");
    const double r = robustness_of_k(k);
    ComplexMatrix out = rho.matrix();
    out(0, 1) *= r;
    out(1, 0) *= r;
    return DensityOperator(std::move(out));
}

DensityOperator apply_term_exact(const CutTerm& term, const DensityOperator& rho) {
    if (rho.dim() != 2) throw DimensionError("cut term input must be a one-qubit state");
    return DensityOperator(term.apply_raw(rho.matrix()));
}

DensityOperator apply_decomposition_exact(const WireCutDecomposition& d, const DensityOperator& rho) {
    if (rho.dim() != 2) throw DimensionError("decomposition input must be a one-qubit state");
    ComplexMatrix out(2, 2);
    for (const auto& t : d.terms()) {
        ComplexMatrix contrib = t.apply_raw(rho.matrix());
        contrib *= cdouble(t.coefficient());
        out += contrib;
    }
    return DensityOperator(std::move(out));
}

ComplexMatrix choi(const CutTerm& term) { return term.choi(); }

ComplexMatrix choi(const WireCutDecomposition& d) {
    ComplexMatrix sum(4, 4);
    for (const auto& t : d.terms()) {
        ComplexMatrix contrib = t.choi();
        contrib *= cdouble(t.coefficient());
        sum += contrib;
    }
    return sum;
}

ComplexMatrix choi_identity() {
    ComplexMatrix c(4, 4);
    c(0, 0) = 1.0;
    c(0, 3) = 1.0;
    c(3, 0) = 1.0;
    c(3, 3) = 1.0;
    return c;
}

int sample_term(const CutTerm& term, const PureState& input, Rng& rng) {
    if (input.dim() != 2) throw DimensionError("cut term input must be a one-qubit state");
    const detail::Sampler& sp = term.sampler();
    const std::size_t sdim = sp.sender_dim;

    // Full register amplitudes, receiver qubit least significant.
    std::array<cdouble, 8> amp{};
    if (sp.has_resource) {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) amp[i * 4 + j] = input.amplitude(i) * sp.resource[j];
    } else {
        amp[0] = input.amplitude(0);
        amp[2] = input.amplitude(1);
    }

    // Sender unitary acts on the stride-2 sender blocks.
    std::array<cdouble, 8> evolved{};
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t row = 0; row < sdim; ++row) {
            cdouble acc = 0.0;
            for (std::size_t col = 0; col < sdim; ++col) {
                acc += sp.sender_u[row * sdim + col] * amp[col * 2 + r];
            }
            evolved[row * 2 + r] = acc;
        }
    }

    // Born-rule sample of the joint sender outcome, then collapse.
    std::array<double, 4> probs{};
    double total = 0.0;
    for (std::size_t s = 0; s < sdim; ++s) {
        probs[s] = std::norm(evolved[2 * s]) + std::norm(evolved[2 * s + 1]);
        total += probs[s];
    }
    const double u = uniform_double(rng) * total;
    std::size_t outcome = 0;
    double csum = 0.0;
    for (std::size_t s = 0; s < sdim; ++s) {
        if (probs[s] > 0.0) outcome = s; // rounding-edge fallback: last positive branch
        csum += probs[s];
        if (u < csum) {
            outcome = s;
            break;
        }
    }

    cdouble v0 = evolved[2 * outcome];
    cdouble v1 = evolved[2 * outcome + 1];

    const std::size_t n_bits = sdim == 4 ? 2 : 1;
    for (std::size_t i = 0; i < sp.n_corrections; ++i) {
        const auto& cg = sp.corrections[i];
        if ((outcome >> (n_bits - 1 - cg.bit)) & 1u) {
            const cdouble n0 = cg.gate[0] * v0 + cg.gate[1] * v1;
            const cdouble n1 = cg.gate[2] * v0 + cg.gate[3] * v1;
            v0 = n0;
            v1 = n1;
        }
    }
    {
        const cdouble n0 = sp.receiver_u[0] * v0 + sp.receiver_u[1] * v1;
        const cdouble n1 = sp.receiver_u[2] * v0 + sp.receiver_u[3] * v1;
        v0 = n0;
        v1 = n1;
    }

    const double p0 = std::norm(v0);
    const double p1 = std::norm(v1);
    return uniform_double(rng) * (p0 + p1) < p0 ? 0 : 1;
}

double kappa_nme(double k) {
    return 3.0 - 2.0 * robustness_of_k(k);
}

} // namespace qcut
