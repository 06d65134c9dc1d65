#include "proxmesh/random.hpp"

#include <limits>

namespace proxmesh {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return Rng(splitmix64(splitmix64(seed) ^ (trial * 0xd1342543de82ef95ULL + 1)));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

} // namespace proxmesh
