// SPDX-License-Identifier: Apache-2.0
//
// Random-source plumbing. All randomness in the library flows through an
// explicitly injected Rng; nothing keeps a hidden generator. Samplers are
// built on the raw 64-bit stream so results are reproducible for a fixed
// seed independent of standard-library distribution internals.
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace qcut {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; u1 lies in (0, 1] so the log is safe.
inline double gaussian(Rng& rng) {
    const double u1 = 1.0 - uniform_double(rng);
    const double u2 = uniform_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// splitmix64 finalizer; full-avalanche mixing for seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed and an index path,
// e.g. derive_seed(master, {stream_tag, state_index, cell_index}). Used to
// make parallel execution order irrelevant to results.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(master);
    for (std::uint64_t v : path) h = mix64(h ^ v);
    return h;
}

} // namespace qcut
