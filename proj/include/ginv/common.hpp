#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ginv {

/// Index of a point of the underlying set X = {0..n-1}.
using Point = std::uint32_t;

/// A tuple in X^omega packed as a base-n integer, most significant
/// component first, so numeric order equals lexicographic tuple order.
using TupleCode = std::uint64_t;

/// Resource caps for group/orbit construction.
struct Caps {
    std::uint64_t group_cap = 1'000'000;        // max number of group elements
    std::uint64_t point_cap = 1'000'000;        // max size of the point set
    std::uint64_t tuple_cap = std::uint64_t{1} << 26; // max size of X^omega
};

/// Compensated (Kahan) accumulator. Orbit sums may run over millions of
/// terms; plain accumulation loses too much for the 1e-12 invariance checks.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

/// SplitMix64 output function.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// k-th draw of the SplitMix64 stream seeded by `seed`; pure in (seed, k).
inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t k) {
    return mix64(seed + k * 0x9E3779B97F4A7C15ull);
}

/// Map 64 random bits to a double in (0, 1]. Never returns 0, so it is safe
/// under log().
inline double uniform01(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// k-th standard normal of the stream seeded by `seed` (Box-Muller, cosine
/// branch). Entry (seed, k) is a pure function, independent of draw order.
inline double counter_normal(std::uint64_t seed, std::uint64_t k) {
    const double u1 = uniform01(counter_bits(seed, 2 * k));
    const double u2 = uniform01(counter_bits(seed, 2 * k + 1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Derive an independent child seed (e.g. one per Monte-Carlo trial).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    return mix64(base ^ mix64(salt ^ 0xA5A5A5A55A5A5A5Aull));
}

} // namespace ginv
