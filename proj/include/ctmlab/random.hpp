#pragma once

#include <cstdint>

namespace ctmlab {

// splitmix64 (Steele, Lea, Vigna). Used everywhere a seeded stream is
// needed so that results are identical across platforms and worker counts.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// i-th draw of a counter-based stream: independent of draw order, so
// sampled runs can be sharded across workers without changing results.
inline uint64_t counter_rng(uint64_t seed, uint64_t i) {
    uint64_t s = seed ^ (i * 0x9e3779b97f4a7c15ULL);
    uint64_t a = splitmix64(s);
    return splitmix64(s) ^ a;
}

// Map a 64-bit draw to [0, bound) by 128-bit multiply (Lemire).
// Bias is bound/2^64, negligible for every rulespace handled here.
inline uint64_t bounded(uint64_t draw, uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(draw) * bound) >> 64);
}

} // namespace ctmlab
