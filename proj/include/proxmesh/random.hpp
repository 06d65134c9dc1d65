#pragma once

#include <cstdint>
#include <random>

namespace proxmesh {

using Rng = std::mt19937_64;

/// Independent stream for trial `trial` of a run seeded with `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Uniform integer in [0, n). The std distributions are not specified
/// bit-for-bit across standard libraries, so reports would not be portable.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

inline bool one_in(Rng& rng, std::uint64_t n) { return uniform_below(rng, n) == 0; }

} // namespace proxmesh
