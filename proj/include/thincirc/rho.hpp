// The exponent rho(K, L) = max over 1 <= n <= K+L-2 of (n+2) / min|A+B|,
// computed in exact rational arithmetic.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "thincirc/rational.hpp"
#include "thincirc/sumset.hpp"

namespace thincirc {

enum class RhoBranch {
    none,            // value produced by a direct scan
    two_rows,        // K = 2 closed form (L+2)/(2L), attained at n = L
    full_dim,        // (K+L)/(KL), attained at n = K+L-2
    near_full_dim,   // (K+L-1)/(KL-3), attained at n = K+L-3
    middle,          // 2(L+2)/(K(2L-K+1)), attained at n = L
};

inline const char* rho_branch_name(RhoBranch b) {
    switch (b) {
        case RhoBranch::none: return "scan";
        case RhoBranch::two_rows: return "two_rows";
        case RhoBranch::full_dim: return "full_dim";
        case RhoBranch::near_full_dim: return "near_full_dim";
        case RhoBranch::middle: return "middle";
    }
    return "?";
}

struct RhoValue {
    Rational value;
    std::int64_t argmax_n = 0;  // smallest n attaining the maximum (scan),
                                // or the branch's nominal n (closed form)
    RhoBranch branch = RhoBranch::none;
};

namespace detail {

inline void check_rho_args(std::int64_t k_size, std::int64_t l_size) {
    if (k_size < 2) throw std::invalid_argument("rho: K must be >= 2");
    if (k_size > l_size) throw std::invalid_argument("rho: need K <= L");
}

}  // namespace detail

// (n+2) / min_sumset_size(n, K, L) for one n.
inline Rational rho_at(std::int64_t n, std::int64_t k_size, std::int64_t l_size) {
    return Rational(n + 2) / Rational(min_sumset_size({n, k_size, l_size}));
}

// Direct maximization over n = 1 .. K+L-2; argmax_n is the smallest maximizer.
inline RhoValue rho_by_max(std::int64_t k_size, std::int64_t l_size) {
    detail::check_rho_args(k_size, l_size);
    RhoValue best;
    for (std::int64_t n = 1; n <= k_size + l_size - 2; ++n) {
        Rational r = rho_at(n, k_size, l_size);
        if (best.argmax_n == 0 || r > best.value) {
            best.value = r;
            best.argmax_n = n;
        }
    }
    best.branch = RhoBranch::none;
    return best;
}

// Closed form: rho(2, L) = (L+2)/(2L); for K >= 3,
// rho(K, L) = max{ (K+L)/(KL), (K+L-1)/(KL-3), 2(L+2)/(K(2L-K+1)) }.
inline RhoValue rho_closed(std::int64_t k_size, std::int64_t l_size) {
    detail::check_rho_args(k_size, l_size);
    if (k_size == 2)
        return {Rational(l_size + 2, 2 * l_size), l_size, RhoBranch::two_rows};
    Rational t_full(k_size + l_size, k_size * l_size);
    Rational t_near(k_size + l_size - 1, k_size * l_size - 3);
    Rational t_mid(2 * (l_size + 2), k_size * (2 * l_size - k_size + 1));
    RhoValue out{t_full, k_size + l_size - 2, RhoBranch::full_dim};
    if (t_near > out.value) out = {t_near, k_size + l_size - 3, RhoBranch::near_full_dim};
    if (t_mid > out.value) out = {t_mid, l_size, RhoBranch::middle};
    return out;
}

// Strict upper bound rho(K, L) < (K+L+2)/(KL); defined for K >= 3 only.
inline bool rho_upper_bound_check(std::int64_t k_size, std::int64_t l_size) {
    detail::check_rho_args(k_size, l_size);
    if (k_size < 3) throw std::invalid_argument("rho_upper_bound_check: requires K >= 3");
    return rho_closed(k_size, l_size).value <
           Rational(k_size + l_size + 2, k_size * l_size);
}

}  // namespace thincirc
