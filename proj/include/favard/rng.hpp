#pragma once

#include <cstdint>
#include <random>

namespace favard {

// Scrambles a (seed, counter) pair into an independent 64-bit stream seed.
// Every randomized audit derives its generator through this, so audits are
// individually reproducible from the single top-level seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t counter) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(counter)));
}

}  // namespace favard
