#pragma once

#include <cstdint>
#include <random>

namespace tvarch {

/// splitmix64 mixing step. Used to derive independent, reproducible
/// per-replicate seeds from (base seed, replicate counter) pairs so that
/// parallel replicates do not share or race on RNG state.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t counter) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace tvarch
