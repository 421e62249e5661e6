#pragma once

#include <cstdint>

#include "breg/common.hpp"

namespace breg {

/// Deterministic 64-bit generator used for every stochastic routine in the
/// library: the SplitMix64 sequence (Weyl increment 0x9E3779B97F4A7C15,
/// murmur-style finalizer).  Normals come from Box-Muller on top of it.
/// The generator is fixed, not configurable, so that results for a given
/// seed are identical across platforms and reruns.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform double strictly inside (0, 1); safe under log().
    double next_unit();

    /// Standard normal via Box-Muller; the paired deviate is cached.
    double next_normal();

    /// Uniform double in [lo, hi).
    double next_range(double lo, double hi);

    /// Index draw from a weight vector (weights need not be normalized
    /// exactly; the last index absorbs roundoff).
    int next_categorical(const Vector& weights);

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Stream splitting for parallel replicates: replicate `index` of a run
/// seeded with `seed` uses derive_seed(seed, index).  The mix is the
/// SplitMix64 finalizer applied to seed XOR a Weyl multiple of the index,
/// so streams for distinct indices are decorrelated and the mapping is
/// reproducible.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace breg
