// SPDX-License-Identifier: Apache-2.0
//
// Non-maximally entangled resource states |Phi^k> = K(|00> + k|11>), their
// Schmidt decomposition and robustness of entanglement, plus Haar-random
// unitary sampling for test-state generation.
#pragma once

#include "qcut/qmath.hpp"
#include "qcut/random.hpp"

namespace qcut {

// Schmidt-ratio parameterization of the resource pair. k = 0 is separable,
// k = 1 maximally entangled; robustness R = 2kK^2 with K = 1/sqrt(1 + k^2).
struct NmeResource {
    explicit NmeResource(double k);

    double k;
    double normalization; // K
    double robustness;    // R = 2kK^2
};

// |psi> = (a (x) b)(p0|00> + p1|11>) with real nonnegative p0 >= p1; any
// phases are folded into the local unitaries a and b.
struct SchmidtDecomposition {
    double p0;
    double p1;
    ComplexMatrix a;
    ComplexMatrix b;
};

// The resource state |Phi^k> as a two-qubit pure state.
PureState nme_state(double k);

// Robustness of entanglement of a pure two-qubit state from its Schmidt
// coefficients: (p0 + p1)^2 - 1, clamped to [0, 1] for tolerance-level
// excursions. Inputs must be nonnegative and normalized within 1e-8.
double robustness_pure(double p0, double p1);

// R(|Phi^k>) = 2k/(1 + k^2).
double robustness_of_k(double k);

// Inverse of robustness_of_k on the branch k in [0, 1]. Both branches (k and
// 1/k) describe the same physics; the small branch is numerically stable
// near r = 0 and is the canonical choice here.
double k_from_robustness(double r);

// Schmidt decomposition of a two-qubit pure state via svd_2x2 of its 2x2
// amplitude matrix M[i][j] = <ij|psi>.
SchmidtDecomposition schmidt_decompose(const PureState& psi);

// Haar-distributed unitary via QR of a complex Gaussian matrix. Modified
// Gram-Schmidt produces the unique QR factor with a real positive diagonal
// of R, which is exactly the sign-corrected construction.
ComplexMatrix haar_random_unitary(std::size_t dim, Rng& rng);

} // namespace qcut
