#pragma once

#include <cmath>
#include <vector>

#include "ginv/common.hpp"
#include "ginv/group.hpp"

namespace testutil {

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ginv::counter_normal(seed, i);
    return v;
}

inline std::vector<double> random_int_vector(std::size_t n, std::uint64_t seed,
                                             int lo = -4, int hi = 4) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto bits = ginv::counter_bits(seed, i);
        v[i] = static_cast<double>(lo + static_cast<int>(bits % (hi - lo + 1)));
    }
    return v;
}

// Brute-force equivalence oracle: does some g send a to b exactly?
inline bool equivalent(const std::vector<double>& a, const std::vector<double>& b,
                       const ginv::FiniteGroup& G) {
    for (const auto& g : G.elements())
        if (ginv::act_vector(g, a) == b) return true;
    return false;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline double norm_inf(const std::vector<double>& a) {
    double d = 0.0;
    for (double v : a) d = std::max(d, std::abs(v));
    return d;
}

} // namespace testutil
