#pragma once

// Seeded generator with platform-independent draws. The standard
// distributions are implementation-defined, so byte-identical reports need
// our own mapping from the engine output.

#include "axrel/field/exact_real.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace axrel {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a, used to derive per-site seeds from labels.
inline std::uint64_t hash_label(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
    Rng(std::uint64_t seed, std::string_view site) : engine_(splitmix64(hash_label(site, splitmix64(seed)))) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [lo, hi]; modulo bias is irrelevant at our ranges.
    long uniform(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }
    bool coin() { return (next() & 1) != 0; }
    /// Uniform in [0, 1), 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Rational p/q with 1 <= q <= max_den and |p/q| <= bound.
    ExactReal rational(long bound, long max_den) {
        long q = uniform(1, max_den);
        long p = uniform(-bound * q, bound * q);
        return ExactReal::rational(p, q);
    }
    /// Rational in the open interval (lo, hi) with denominator <= max_den.
    ExactReal rational_in(const ExactReal& lo, const ExactReal& hi, long max_den) {
        long q = uniform(1, max_den);
        long p = uniform(1, q - 1 > 0 ? q - 1 : 1);
        ExactReal s = q > 1 ? ExactReal::rational(p, q) : ExactReal::rational(1, 2);
        return lo + s * (hi - lo);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace axrel
