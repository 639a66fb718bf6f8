// SPDX-License-Identifier: Apache-2.0
#include "qcut/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qcut {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix shapes do not match");
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cdouble(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("entry count does not match rows x cols");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

cdouble ComplexMatrix::trace() const {
    if (rows_ != cols_) throw DimensionError("trace of a non-square matrix");
    cdouble t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scalar) {
    for (auto& e : entries_) e *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble ark = a(r, k);
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

ComplexMatrix operator*(cdouble scalar, ComplexMatrix m) { return m *= scalar; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

ComplexMatrix identity2() { return ComplexMatrix::identity(2); }

ComplexMatrix pauli_x() {
    return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
}

ComplexMatrix pauli_z() {
    return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
}

ComplexMatrix hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(2, 2, {h, h, h, -h});
}

ComplexMatrix phase_s() {
    return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, cdouble(0.0, 1.0)});
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs_diff(m.dagger() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs_diff(m, m.dagger()) <= tol;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("eigenvalues of a non-square matrix");
    const std::size_t n = m.rows();

    // Symmetrize so tolerance-level asymmetry cannot stall convergence.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

    const double scale = std::max(1.0, a.max_abs());
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-15 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double g = std::abs(apq);
                if (g <= 1e-15 * scale) continue;

                // Phase that makes the pivot real, then a classic real rotation.
                const cdouble phi = std::conj(apq) / g;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                ComplexMatrix j = ComplexMatrix::identity(n);
                j(p, p) = c;
                j(p, q) = s;
                j(q, p) = -phi * s;
                j(q, q) = phi * c;
                a = j.dagger() * a * j;
            }
        }
    }

    std::vector<double> evals(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = a(i, i).real();
    std::sort(evals.begin(), evals.end());
    return evals;
}

PureState::PureState(std::vector<cdouble> amplitudes) : amplitudes_(std::move(amplitudes)) {
    const std::size_t d = amplitudes_.size();
    if (d != 2 && d != 4) throw DimensionError("pure state must live on 1 or 2 qubits");
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > kExactTol) {
        throw ValidationError("pure state amplitudes are not normalized");
    }
}

ComplexMatrix outer(const PureState& psi) {
    const std::size_t d = psi.dim();
    ComplexMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = psi.amplitude(r) * std::conj(psi.amplitude(c));
    return m;
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    const std::size_t d = matrix_.rows();
    if (matrix_.cols() != d || (d != 2 && d != 4)) {
        throw DimensionError("density operator must be 2x2 or 4x4");
    }
    if (!is_hermitian(matrix_, kExactTol)) {
        throw ValidationError("density operator is not Hermitian");
    }
    if (std::abs(matrix_.trace() - cdouble(1.0)) > kExactTol) {
        throw ValidationError("density operator trace is not 1");
    }
    const auto evals = hermitian_eigenvalues(matrix_);
    if (evals.front() < -kStructuralTol) {
        throw ValidationError("density operator is not positive semi-definite");
    }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    return DensityOperator(outer(psi));
}

DensityOperator apply_unitary(const ComplexMatrix& u, const DensityOperator& rho) {
    if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
        throw DimensionError("unitary and state dimensions do not match");
    }
    if (!is_unitary(u, kStructuralTol)) {
        throw DomainError("matrix is not unitary");
    }
    return DensityOperator(u * rho.matrix() * u.dagger());
}

std::vector<double> computational_probs(const DensityOperator& rho) {
    std::vector<double> probs(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        double p = rho.matrix()(i, i).real();
        if (p < 0.0) p = 0.0; // tolerance-level negatives only, by invariant
        probs[i] = p;
    }
    return probs;
}

DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep) {
    if (rho.dim() != 4) throw DimensionError("partial trace requires a two-qubit state");
    if (keep > 1) throw DomainError("keep must be 0 or 1");

    const auto& m = rho.matrix();
    ComplexMatrix out(2, 2);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            cdouble sum = 0.0;
            for (std::size_t t = 0; t < 2; ++t) {
                // big-endian index: qubit 0 is the most significant bit
                const std::size_t row = keep == 0 ? r * 2 + t : t * 2 + r;
                const std::size_t col = keep == 0 ? c * 2 + t : t * 2 + c;
                sum += m(row, col);
            }
            out(r, c) = sum;
        }
    }
    return DensityOperator(out);
}

Svd2 svd_2x2(const ComplexMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw DimensionError("svd_2x2 requires a 2x2 matrix");

    // Eigen-decompose m^dagger m in closed form; its eigenvectors are the
    // right singular vectors.
    const ComplexMatrix b = m.dagger() * m;
    const double a = b(0, 0).real();
    const double d = b(1, 1).real();
    const cdouble bo = b(0, 1);
    const double g = std::abs(bo);
    const double half = 0.5 * (a + d);
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - d) * (a - d) + g * g));
    const double l0 = half + disc;

    cdouble v00, v10;
    if (g > 1e-300) {
        // (b - l0 I) v = 0  =>  v = (bo, l0 - a)
        v00 = bo;
        v10 = cdouble(l0 - a, 0.0);
        const double n = std::sqrt(std::norm(v00) + std::norm(v10));
        if (n > 0.0) {
            v00 /= n;
            v10 /= n;
        } else {
            v00 = 1.0;
            v10 = 0.0;
        }
    } else {
        // b is (numerically) diagonal; pick basis vectors ordered by size.
        if (a >= d) {
            v00 = 1.0;
            v10 = 0.0;
        } else {
            v00 = 0.0;
            v10 = 1.0;
        }
    }
    // Orthonormal complement spans the second eigenspace in 2 dimensions.
    const cdouble v01 = -std::conj(v10);
    const cdouble v11 = std::conj(v00);

    ComplexMatrix v(2, 2, {v00, v01, v10, v11});

    // Left singular vectors from the images m v_i, which are orthogonal in
    // exact arithmetic; the reconstruction then holds to rounding error even
    // when the eigenproblem is degenerate.
    const cdouble w00 = m(0, 0) * v00 + m(0, 1) * v10;
    const cdouble w10 = m(1, 0) * v00 + m(1, 1) * v10;
    double s0 = std::sqrt(std::norm(w00) + std::norm(w10));

    cdouble u00, u10;
    if (s0 > 1e-300) {
        u00 = w00 / s0;
        u10 = w10 / s0;
    } else {
        s0 = 0.0;
        u00 = 1.0;
        u10 = 0.0;
    }

    cdouble w01 = m(0, 0) * v01 + m(0, 1) * v11;
    cdouble w11 = m(1, 0) * v01 + m(1, 1) * v11;
    const cdouble proj = std::conj(u00) * w01 + std::conj(u10) * w11;
    w01 -= proj * u00;
    w11 -= proj * u10;
    double s1 = std::sqrt(std::norm(w01) + std::norm(w11));

    cdouble u01, u11;
    if (s1 > 1e-14 * std::max(1.0, s0)) {
        u01 = w01 / s1;
        u11 = w11 / s1;
    } else {
        s1 = std::max(0.0, s1);
        u01 = -std::conj(u10);
        u11 = std::conj(u00);
    }

    ComplexMatrix u(2, 2, {u00, u01, u10, u11});
    if (s1 > s0) { // rounding can flip the order of near-equal singular values
        std::swap(s0, s1);
        ComplexMatrix us(2, 2, {u(0, 1), u(0, 0), u(1, 1), u(1, 0)});
        ComplexMatrix vs(2, 2, {v(0, 1), v(0, 0), v(1, 1), v(1, 0)});
        return Svd2{std::move(us), {s0, s1}, std::move(vs)};
    }
    return Svd2{std::move(u), {s0, s1}, std::move(v)};
}

} // namespace qcut
