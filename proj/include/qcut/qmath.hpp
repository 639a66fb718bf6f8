// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra and density-operator primitives for one- and
// two-qubit systems. Everything here is sized for 2x2 and 4x4 matrices; no
// attempt is made to scale beyond that.
//
// Qubit ordering is big-endian throughout: the first tensor factor is qubit 0
// and supplies the most significant bit of a basis-state index.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "qcut/errors.hpp"

namespace qcut {

using cdouble = std::complex<double>;

// Structural checks (unitarity, PSD, channel identities) use 1e-10;
// exact-arithmetic assertions (trace, hermiticity, norms) use 1e-12.
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kExactTol = 1e-12;

// Dense row-major complex matrix. Equality is always tolerance-based via
// approx_equal(); there is deliberately no operator==.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<cdouble>& entries() const { return entries_; }

    ComplexMatrix dagger() const;
    cdouble trace() const;
    double max_abs() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cdouble scalar);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble scalar, ComplexMatrix m);

// Largest entrywise |a - b|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

// Common one-qubit gates.
ComplexMatrix identity2();
ComplexMatrix pauli_x();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
ComplexMatrix phase_s();

// Kronecker product with big-endian ordering (first factor = qubit 0).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_unitary(const ComplexMatrix& m, double tol = kStructuralTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kExactTol);

// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi with complex
// rotations; converges to machine precision in a few sweeps at these sizes.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Normalized pure state on one or two qubits.
class PureState {
public:
    explicit PureState(std::vector<cdouble> amplitudes);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const std::vector<cdouble>& amplitudes() const { return amplitudes_; }
    cdouble amplitude(std::size_t i) const { return amplitudes_[i]; }

private:
    std::vector<cdouble> amplitudes_;
};

// Outer product |psi><psi| as a raw matrix (no validation round trip).
ComplexMatrix outer(const PureState& psi);

// Hermitian, unit-trace, PSD matrix on one or two qubits. Validated at
// construction: hermiticity and trace within 1e-12, eigenvalues >= -1e-10.
class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix matrix);

    static DensityOperator from_pure(const PureState& psi);

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    ComplexMatrix matrix_;
};

// U rho U^dagger. Throws DomainError if u fails the unitarity check and
// DimensionError on shape mismatch.
DensityOperator apply_unitary(const ComplexMatrix& u, const DensityOperator& rho);

// Computational-basis probabilities: real diagonal, tolerance-level negatives
// clamped to zero.
std::vector<double> computational_probs(const DensityOperator& rho);

// Partial trace of a two-qubit state down to the kept qubit (0 or 1).
DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep);

// Singular value decomposition of a 2x2 complex matrix: m = u diag(s) v^dagger
// with s descending and u, v unitary.
struct Svd2 {
    ComplexMatrix u;
    std::array<double, 2> s;
    ComplexMatrix v;
};
Svd2 svd_2x2(const ComplexMatrix& m);

} // namespace qcut
