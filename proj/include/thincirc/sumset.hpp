// Minimum sumset cardinalities for sets of prescribed sizes and dimension.
//
// Conventions: A and B are finite sets in R^n with |A| = K <= L = |B| and
// dim(A+B) = n, 1 <= n <= K+L-2. Extremal pairs are "long simplices": an
// arithmetic progression along a common axis plus unit spokes, the two sets
// sharing the axis and s of the spokes.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "thincirc/point_set.hpp"
#include "thincirc/util.hpp"

namespace thincirc {

// n*K + L - n*(n+1)/2. Lower bound on |A+B|; may be slack (even negative).
inline std::int64_t ruzsa_bound(std::int64_t n, std::int64_t k_size, std::int64_t l_size) {
    if (n < 1 || k_size < 1 || l_size < 1) throw std::invalid_argument("ruzsa_bound: bad arguments");
    return n * k_size + l_size - n * (n + 1) / 2;
}

// L + sum_{i=1}^{K-1} min(n, L-i). Refines ruzsa_bound.
inline std::int64_t ruzsa_refined_bound(std::int64_t n, std::int64_t k_size, std::int64_t l_size) {
    if (n < 1 || k_size < 1 || l_size < 1)
        throw std::invalid_argument("ruzsa_refined_bound: bad arguments");
    std::int64_t total = l_size;
    for (std::int64_t i = 1; i <= k_size - 1; ++i)
        total += std::min(n, l_size - i);
    return total;
}

// Long simplex in R^n: {0, e1, 2*e1, ..., (size-1-|spokes|)*e1} plus the unit
// vectors named by `spokes` (1-based axis indices, all distinct and != 1).
inline PointSet long_simplex(std::size_t n, std::size_t size,
                             const std::vector<std::size_t>& spokes) {
    if (n < 1) throw std::invalid_argument("long_simplex: ambient dimension must be >= 1");
    if (size < spokes.size() + 1)
        throw std::invalid_argument("long_simplex: size too small for spoke count");
    std::vector<bool> seen(n + 1, false);
    for (std::size_t ax : spokes) {
        if (ax < 2 || ax > n) throw std::invalid_argument("long_simplex: spoke axis out of range");
        if (seen[ax]) throw std::invalid_argument("long_simplex: repeated spoke axis");
        seen[ax] = true;
    }
    std::vector<std::vector<std::int64_t>> pts;
    std::size_t prog_top = size - spokes.size() - 1;
    for (std::size_t m = 0; m <= prog_top; ++m) {
        std::vector<std::int64_t> v(n, 0);
        v[0] = static_cast<std::int64_t>(m);
        pts.push_back(std::move(v));
    }
    for (std::size_t ax : spokes) {
        std::vector<std::int64_t> v(n, 0);
        v[ax - 1] = 1;
        pts.push_back(std::move(v));
    }
    return PointSet(n, std::move(pts));
}

// Partition parameters of a long-simplex pair: s shared spokes, s_a spokes
// private to A, s_b private to B; ambient n = s + s_a + s_b + 1.
struct SimplexSplit {
    std::int64_t s = 0;
    std::int64_t s_a = 0;
    std::int64_t s_b = 0;

    std::int64_t n() const { return s + s_a + s_b + 1; }
};

namespace detail {

inline void check_split(std::int64_t k_size, std::int64_t l_size, const SimplexSplit& sp) {
    if (!(2 <= k_size && k_size <= l_size))
        throw std::invalid_argument("simplex pair: need 2 <= K <= L");
    if (sp.s < 0 || sp.s_a < 0 || sp.s_b < 0)
        throw std::invalid_argument("simplex pair: negative spoke count");
    if (sp.s + sp.s_a > k_size - 1)
        throw std::invalid_argument("simplex pair: s + s_a exceeds K - 1");
    if (sp.s + sp.s_b > l_size - 1)
        throw std::invalid_argument("simplex pair: s + s_b exceeds L - 1");
}

}  // namespace detail

// The concrete extremal pair: A uses axes 2..s+1 (shared) and s+2..s+s_a+1,
// B uses axes 2..s+1 and s+s_a+2..n, both with progressions along axis 1.
inline std::pair<PointSet, PointSet> simplex_pair(std::int64_t k_size, std::int64_t l_size,
                                                  const SimplexSplit& sp) {
    detail::check_split(k_size, l_size, sp);
    std::size_t n = static_cast<std::size_t>(sp.n());
    std::vector<std::size_t> spokes_a, spokes_b;
    for (std::int64_t i = 0; i < sp.s; ++i) {
        spokes_a.push_back(static_cast<std::size_t>(2 + i));
        spokes_b.push_back(static_cast<std::size_t>(2 + i));
    }
    for (std::int64_t i = 0; i < sp.s_a; ++i)
        spokes_a.push_back(static_cast<std::size_t>(sp.s + 2 + i));
    for (std::int64_t i = 0; i < sp.s_b; ++i)
        spokes_b.push_back(static_cast<std::size_t>(sp.s + sp.s_a + 2 + i));
    return {long_simplex(n, static_cast<std::size_t>(k_size), spokes_a),
            long_simplex(n, static_cast<std::size_t>(l_size), spokes_b)};
}

// |A+B| for the pair above, in closed form:
//   (s_b+1)K + (s_a+1)L + s*max(L-s_b, K-s_a) - n - s(s+1)/2 - s_a*s_b.
// Debug builds recompute the Minkowski sum of the concrete pair on every call.
inline std::int64_t simplex_pair_sum_size(std::int64_t k_size, std::int64_t l_size,
                                          const SimplexSplit& sp) {
    detail::check_split(k_size, l_size, sp);
    std::int64_t n = sp.n();
    std::int64_t v = (sp.s_b + 1) * k_size + (sp.s_a + 1) * l_size +
                     sp.s * std::max(l_size - sp.s_b, k_size - sp.s_a) - n -
                     sp.s * (sp.s + 1) / 2 - sp.s_a * sp.s_b;
#ifndef NDEBUG
    auto [a, b] = simplex_pair(k_size, l_size, sp);
    std::int64_t direct = static_cast<std::int64_t>(minkowski_sum(a, b).size());
    if (direct != v)
        throw std::logic_error("simplex_pair_sum_size: formula " + std::to_string(v) +
                               " != construction " + std::to_string(direct));
#endif
    return v;
}

struct SumsetBoundQuery {
    std::int64_t n = 1;       // dim(A+B)
    std::int64_t k_size = 2;  // |A|
    std::int64_t l_size = 2;  // |B|, K <= L
};

namespace detail {

inline void check_query(const SumsetBoundQuery& q) {
    if (!(2 <= q.k_size && q.k_size <= q.l_size))
        throw std::invalid_argument("sumset bound: need 2 <= K <= L");
    if (q.n < 1 || q.n > q.k_size + q.l_size - 2)
        throw std::invalid_argument("sumset bound: need 1 <= n <= K+L-2");
}

}  // namespace detail

// Minimum of |A+B| over long-simplex pairs with s + s_a + s_b = n - 1 (the
// extremal family), by case dispatch on n:
//   n = K+L-2          -> K*L          (dim A + dim B = n forces all sums distinct)
//   n <= L-K           -> L + n(K-1)
//   L-K <= n <= L      -> (n+1)K - (n-L+K)(n-L+K+1)/2
//   L <= n <= K+L-3    -> KL - (K+L-n)(K+L-n-1)/2
// This is a lower bound on |A+B| for every pair with dim(A+B) = n. For
// n <= 2 and for n = K+L-2 the bound is attained by a pair whose sum has
// dimension exactly n; at some interior n the only attaining pairs are
// degenerate (sum dimension n-1), so the bound can be strict over sets of
// dimension exactly n — e.g. K = L = 3, n = 3: bound 6, dimension-3 minimum 8.
// Where two ranges overlap (n = L-K, n = L) both formulas are evaluated and
// must agree; a discrepancy is an internal error.
inline std::int64_t min_sumset_size(const SumsetBoundQuery& q) {
    detail::check_query(q);
    const std::int64_t k = q.k_size, l = q.l_size, n = q.n;
    if (n == k + l - 2) return k * l;
    std::optional<std::int64_t> value;
    auto take = [&](std::int64_t v) {
        if (value && *value != v)
            throw std::logic_error("min_sumset_size: boundary formulas disagree: " +
                                   std::to_string(*value) + " vs " + std::to_string(v));
        value = v;
    };
    if (n <= l - k) take(l + n * (k - 1));
    if (l - k <= n && n <= l) {
        std::int64_t t = n - l + k;
        take((n + 1) * k - t * (t + 1) / 2);
    }
    if (l <= n && n <= k + l - 3) {
        std::int64_t u = k + l - n;
        take(k * l - u * (u - 1) / 2);
    }
    if (!value) throw std::logic_error("min_sumset_size: no case matched");
    return *value;
}

struct PartitionSearchResult {
    std::int64_t value = 0;
    SimplexSplit split;  // a split attaining the value
};

// Independent oracle: minimum of simplex_pair_sum_size over all admissible
// splits with s + s_a + s_b = n - 1. At n = K+L-2 the dimension constraint
// forces dim A + dim B = n and all K*L sums distinct, so KL is returned
// outright; lower-valued splits at that n degenerate to dim(A+B) < n.
inline PartitionSearchResult min_sumset_by_partition_search(const SumsetBoundQuery& q) {
    detail::check_query(q);
    const std::int64_t k = q.k_size, l = q.l_size, n = q.n;
    if (n == k + l - 2) return {k * l, SimplexSplit{0, k - 1, l - 2}};
    std::optional<PartitionSearchResult> best;
    for (std::int64_t s = 0; s <= n - 1; ++s) {
        for (std::int64_t s_a = 0; s_a + s <= n - 1; ++s_a) {
            SimplexSplit sp{s, s_a, n - 1 - s - s_a};
            if (sp.s + sp.s_a > k - 1 || sp.s + sp.s_b > l - 1) continue;
            std::int64_t v = simplex_pair_sum_size(k, l, sp);
            if (!best || v < best->value) best = PartitionSearchResult{v, sp};
        }
    }
    if (!best) throw std::logic_error("min_sumset_by_partition_search: no admissible split");
    return *best;
}

// Exhaustive spot oracle: minimum |A+B| over all A, B inside the grid
// {0..radius}^n with 0 in both sets, |A| = K, |B| = L and affine dimension of
// A+B exactly n. Intended for tiny parameters; guarded by `pair_budget`.
// Agreement with min_sumset_size is guaranteed only for n <= 2 (see the note
// on that function about degenerate extremal pairs at larger n).
inline std::int64_t min_sumset_grid_exhaustive(const SumsetBoundQuery& q, std::int64_t radius,
                                               std::uint64_t pair_budget = 20'000'000) {
    detail::check_query(q);
    if (radius < 1) throw std::invalid_argument("grid oracle: radius must be >= 1");
    const std::size_t n = static_cast<std::size_t>(q.n);
    std::uint64_t grid = saturating_pow_u64(static_cast<std::uint64_t>(radius) + 1,
                                            static_cast<unsigned>(n));
    if (grid == kSaturated || grid > 1'000'000)
        throw BudgetExceeded("grid oracle: grid too large");

    std::vector<std::vector<std::int64_t>> points;
    points.reserve(grid);
    std::vector<std::int64_t> cur(n, 0);
    for (std::uint64_t idx = 0; idx < grid; ++idx) {
        points.push_back(cur);
        for (std::size_t d = 0; d < n; ++d) {
            if (++cur[d] <= radius) break;
            cur[d] = 0;
        }
    }
    // point 0 is the origin; choose the remaining K-1 / L-1 from the rest
    std::uint64_t pool = grid - 1;
    std::uint64_t pairs = binomial_u64(pool, static_cast<std::uint64_t>(q.k_size - 1));
    std::uint64_t pairs_b = binomial_u64(pool, static_cast<std::uint64_t>(q.l_size - 1));
    if (pairs == kSaturated || pairs_b == kSaturated || pairs > pair_budget / std::max<std::uint64_t>(pairs_b, 1))
        throw BudgetExceeded("grid oracle: pair budget exceeded");

    auto combinations = [&](std::int64_t pick) {
        std::vector<std::vector<std::size_t>> out;
        if (pick == 0) {
            out.push_back({});
            return out;
        }
        if (static_cast<std::uint64_t>(pick) > pool) return out;  // grid too small
        std::vector<std::size_t> idx(static_cast<std::size_t>(pick));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i + 1;  // skip origin
        while (true) {
            out.push_back(idx);
            std::ptrdiff_t i = static_cast<std::ptrdiff_t>(idx.size()) - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] ==
                                 grid - idx.size() + static_cast<std::size_t>(i)) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < idx.size(); ++j)
                idx[j] = idx[j - 1] + 1;
        }
        return out;
    };

    auto build = [&](const std::vector<std::size_t>& chosen) {
        std::vector<std::vector<std::int64_t>> pts;
        pts.reserve(chosen.size() + 1);
        pts.push_back(points[0]);
        for (std::size_t c : chosen) pts.push_back(points[c]);
        return PointSet(n, std::move(pts));
    };

    auto as = combinations(q.k_size - 1);
    auto bs = combinations(q.l_size - 1);
    std::optional<std::int64_t> best;
    for (const auto& ca : as) {
        PointSet a = build(ca);
        for (const auto& cb : bs) {
            PointSet b = build(cb);
            PointSet sum = minkowski_sum(a, b);
            if (best && static_cast<std::int64_t>(sum.size()) >= *best) continue;
            if (affine_dim(sum) != n) continue;
            best = static_cast<std::int64_t>(sum.size());
        }
    }
    if (!best)
        throw std::domain_error("grid oracle: no configuration of required dimension in grid");
    return *best;
}

}  // namespace thincirc
