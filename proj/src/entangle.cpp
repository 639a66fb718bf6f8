// SPDX-License-Identifier: Apache-2.0
#include "qcut/entangle.hpp"

#include <cmath>

namespace qcut {

NmeResource::NmeResource(double k_) : k(k_) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("Schmidt ratio k must be finite and >= 0");
    normalization = 1.0 / std::sqrt(1.0 + k * k);
    robustness = 2.0 * k * normalization * normalization;
}

PureState nme_state(double k) {
    const NmeResource res(k);
    const double kk = res.normalization;
    return PureState({kk, 0.0, 0.0, k * kk});
}

double robustness_pure(double p0, double p1) {
    if (p0 < 0.0 || p1 < 0.0) throw DomainError("Schmidt coefficients must be nonnegative");
    if (std::abs(p0 * p0 + p1 * p1 - 1.0) > 1e-8) {
        throw DomainError("Schmidt coefficients must be normalized");
    }
    const double r = (p0 + p1) * (p0 + p1) - 1.0;
    return std::min(1.0, std::max(0.0, r));
}

double robustness_of_k(double k) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("Schmidt ratio k must be finite and >= 0");
    return 2.0 * k / (1.0 + k * k);
}

double k_from_robustness(double r) {
    if (!(r >= 0.0) || !(r <= 1.0)) throw DomainError("robustness must lie in [0, 1]");
    // Equal to (1 - sqrt(1 - r^2))/r but free of cancellation near r = 0.
    return r / (1.0 + std::sqrt(1.0 - r * r));
}

SchmidtDecomposition schmidt_decompose(const PureState& psi) {
    if (psi.dim() != 4) throw DimensionError("Schmidt decomposition requires a two-qubit state");

    ComplexMatrix m(2, 2,
                    {psi.amplitude(0), psi.amplitude(1), psi.amplitude(2), psi.amplitude(3)});
    Svd2 svd = svd_2x2(m);

    // |psi> = sum_l s_l |u_l> (x) |conj(v_l)>, so the second local unitary is
    // the entrywise conjugate of v.
    ComplexMatrix b(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) b(r, c) = std::conj(svd.v(r, c));

    return SchmidtDecomposition{svd.s[0], svd.s[1], std::move(svd.u), std::move(b)};
}

ComplexMatrix haar_random_unitary(std::size_t dim, Rng& rng) {
    if (dim == 0) throw DomainError("unitary dimension must be >= 1");

    ComplexMatrix z(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) z(r, c) = cdouble(gaussian(rng), gaussian(rng));

    // Modified Gram-Schmidt with a second pass; the re-orthogonalization
    // keeps the columns unitary to machine precision.
    ComplexMatrix q = z;
    for (std::size_t j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                cdouble dot = 0.0;
                for (std::size_t r = 0; r < dim; ++r) dot += std::conj(q(r, i)) * q(r, j);
                for (std::size_t r = 0; r < dim; ++r) q(r, j) -= dot * q(r, i);
            }
        }
        double norm2 = 0.0;
        for (std::size_t r = 0; r < dim; ++r) norm2 += std::norm(q(r, j));
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t r = 0; r < dim; ++r) q(r, j) *= inv;
    }
    return q;
}

} // namespace qcut
