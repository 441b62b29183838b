#pragma once

#include <cstdint>

namespace mbsim {

// splitmix64, used for seeding and for per-trial seed derivation.
// Bijective on uint64, so distinct inputs give distinct outputs.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic 64-bit generator: xoshiro256** seeded via splitmix64.
// Identical seed + identical call sequence -> identical outputs, on
// every platform. Never use std:: distributions on top of this; the
// draw helpers below are part of the reproducibility contract.
class Rng {
public:
    static constexpr const char* kAlgorithm = "xoshiro256** (seeded via splitmix64)";

    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : s_) {
            x = splitmix64(x);
            w = x;
        }
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, bound). Lemire rejection, unbiased.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        while (true) {
            uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            uint64_t lo = static_cast<uint64_t>(m);
            if (lo >= bound || lo >= (0ULL - bound) % bound)
                return static_cast<uint64_t>(m >> 64);
        }
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace mbsim
