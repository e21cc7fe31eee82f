// Small shared helpers: 128-bit integer printing, saturating combinatorics,
// and the budget-guard exception used by the enumeration oracles.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thincirc {

using int128 = __int128;
using uint128 = unsigned __int128;

// Thrown when an enumeration would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline std::string to_string_int128(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    uint128 u = neg ? static_cast<uint128>(-(v + 1)) + 1 : static_cast<uint128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

constexpr std::uint64_t kSaturated = UINT64_MAX;

// n^e, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow_u64(std::uint64_t n, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (n != 0 && r > kSaturated / n) return kSaturated;
        r *= n;
    }
    return r;
}

// Binomial coefficient C(n, r), saturating at UINT64_MAX.
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    uint128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;  // exact: product of i consecutive integers
        if (acc > static_cast<uint128>(kSaturated)) return kSaturated;
    }
    return static_cast<std::uint64_t>(acc);
}

// Smallest k with 2^k >= n. Requires n >= 1.
inline unsigned ceil_log2_u64(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("ceil_log2_u64: n must be positive");
    unsigned k = 0;
    std::uint64_t p = 1;
    while (p < n) {
        p <<= 1;
        ++k;
        if (k > 63) break;
    }
    return k;
}

}  // namespace thincirc
