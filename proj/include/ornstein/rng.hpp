#pragma once

#include <cmath>
#include <cstdint>

namespace ornstein {

// Deterministic, platform-independent generator. std::uniform_*_distribution
// is implementation-defined, so reports seeded with the same value would not
// be byte-identical across standard libraries; this one is pinned.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), bias-free via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // Uniform in [0, 1) with 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi] inclusive.
    long long next_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Standard normal via Box-Muller; deterministic given the stream position.
    double next_normal() {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    // Independent child stream; used to keep parallel restarts deterministic.
    SplitMix64 fork(std::uint64_t salt) {
        SplitMix64 tmp(state ^ (0x632be59bd9b4e019ull * (salt + 1)));
        return SplitMix64(tmp.next());
    }
};

} // namespace ornstein
