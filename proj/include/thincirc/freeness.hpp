// Exact decision procedures for all-ones k x l blocks.
//
// Three deciders with one contract:
//   find_block_naive       exhaustive row-subset scan over matrix entries
//   find_rectangle_integer plain integer sums a_i + b_j inside a support
//   is_free_cyclic         sums taken mod n on a plus-circulant
//
// The shift normalization behind the two search variants: if any block
// exists, one exists with a_1 = 0 (translate rows by -a_1 and columns by
// +a_1; integer sums stay below the capacity because every sum lies in S).
// So the search walks offset tuples 0 = d_1 < d_2 < ... < d_k and tests
// T = intersection of (S - d_i); a block exists iff some T has >= l members.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "thincirc/bitwords.hpp"
#include "thincirc/circulant.hpp"
#include "thincirc/support_set.hpp"

namespace thincirc {

enum class SumMode { integer_sums, cyclic };

inline const char* sum_mode_name(SumMode m) {
    return m == SumMode::integer_sums ? "integer_sums" : "cyclic";
}

struct Witness {
    std::vector<std::uint64_t> rows;  // ascending, distinct
    std::vector<std::uint64_t> cols;  // ascending, distinct
    SumMode mode = SumMode::integer_sums;
};

enum class SearchStatus { free_confirmed, witness_found, budget_exhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::free_confirmed;
    std::optional<Witness> witness;
    std::uint64_t work = 0;  // intersection work, counted in machine words
};

struct FreenessOptions {
    std::uint64_t budget = 50'000'000;     // max intersection work (machine words)
    std::uint64_t naive_order_limit = 32;  // find_block_naive refuses larger n
    unsigned max_k = 6;                    // offset searches refuse larger k
};

namespace detail {

inline void check_block_shape(unsigned k, unsigned l) {
    if (k < 2 || l < 2) throw std::invalid_argument("block search: k and l must be >= 2");
}

// Shared offset-tuple search. child_of(acc, d) must AND the d-shifted base
// set into a copy of acc. Offsets are enumerated lexicographically, so the
// first hit yields the smallest witness rows {0, d_2, ..., d_k}.
template <class Shift>
SearchResult offset_search(const BitWords& base, std::uint64_t universe, unsigned k, unsigned l,
                           const FreenessOptions& opts, SumMode mode, Shift&& shift) {
    SearchResult res;
    const std::uint64_t words = (universe + 63) / 64;
    // admissible offsets: |S and (S - d)| >= l
    std::vector<std::uint64_t> cand;
    for (std::uint64_t d = 1; d < universe; ++d) {
        BitWords t = base;
        shift(t, d);
        res.work += words;
        if (t.count() >= l) cand.push_back(d);
        if (res.work > opts.budget) {
            res.status = SearchStatus::budget_exhausted;
            return res;
        }
    }
    if (cand.size() + 1 < k) return res;  // not enough rows available

    std::vector<std::uint64_t> chosen{0};
    // returns true when finished (witness or budget), filling res
    auto dfs = [&](auto&& self, const BitWords& acc, std::size_t from) -> bool {
        for (std::size_t ci = from; ci < cand.size(); ++ci) {
            if (cand.size() - ci < k - chosen.size()) break;  // too few offsets left
            BitWords t = acc;
            shift(t, cand[ci]);
            res.work += words;
            if (res.work > opts.budget) {
                res.status = SearchStatus::budget_exhausted;
                return true;
            }
            if (t.count() < l) continue;
            chosen.push_back(cand[ci]);
            if (chosen.size() == k) {
                res.status = SearchStatus::witness_found;
                res.witness = Witness{chosen, t.members(l), mode};
                return true;
            }
            if (self(self, t, ci + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    dfs(dfs, base, 0);
    return res;
}

}  // namespace detail

// Exhaustive oracle over matrix entries; works for either orientation.
// Returns the lexicographically smallest witness (rows first, then the l
// smallest shared columns). Refuses n beyond the configured order limit.
inline SearchResult find_block_naive(const CirculantMatrix& m, unsigned k, unsigned l,
                                     const FreenessOptions& opts = {}) {
    detail::check_block_shape(k, l);
    std::uint64_t n = m.n();
    std::uint64_t limit = std::min<std::uint64_t>(opts.naive_order_limit, 64);
    if (n > limit)
        throw std::invalid_argument("find_block_naive: order " + std::to_string(n) +
                                    " exceeds limit " + std::to_string(limit));
    SearchResult res;
    if (k > n) return res;

    std::vector<std::uint64_t> row_mask(n, 0);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j)
            if (m.entry(i, j)) row_mask[i] |= std::uint64_t{1} << j;

    std::vector<std::uint64_t> rows;
    auto lowest_bits = [&](std::uint64_t mask, unsigned count) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t j = 0; j < n && out.size() < count; ++j)
            if ((mask >> j) & 1) out.push_back(j);
        return out;
    };
    auto dfs = [&](auto&& self, std::uint64_t first, std::uint64_t acc) -> bool {
        for (std::uint64_t i = first; i + (k - rows.size()) <= n; ++i) {
            std::uint64_t next = acc & row_mask[i];
            ++res.work;
            if (static_cast<unsigned>(std::popcount(next)) < l) continue;
            rows.push_back(i);
            if (rows.size() == k) {
                res.status = SearchStatus::witness_found;
                res.witness = Witness{rows, lowest_bits(next, l), SumMode::cyclic};
                return true;
            }
            if (self(self, i + 1, next)) return true;
            rows.pop_back();
        }
        return false;
    };
    dfs(dfs, 0, ~std::uint64_t{0} >> (64 - n));
    return res;
}

// Integer-sum block inside a support: k row offsets and l column values, all
// in [0, capacity), with every plain sum a_i + b_j a member of S.
inline SearchResult find_rectangle_integer(const SupportSet& s, unsigned k, unsigned l,
                                           const FreenessOptions& opts = {}) {
    detail::check_block_shape(k, l);
    if (k > opts.max_k)
        throw std::invalid_argument("find_rectangle_integer: k exceeds configured limit");
    if (s.size() < k || s.size() < l) return {};  // each row/column of a block holds >= l/k ones
    BitWords base = BitWords::from_members(s.members(), s.capacity());
    return detail::offset_search(base, s.capacity(), k, l, opts, SumMode::integer_sums,
                                 [&](BitWords& acc, std::uint64_t d) { acc.and_shift_down(base, d); });
}

// Cyclic-sum block in a plus-circulant: sums a_i + b_j taken mod n.
inline SearchResult is_free_cyclic(const CirculantMatrix& m, unsigned k, unsigned l,
                                   const FreenessOptions& opts = {}) {
    detail::check_block_shape(k, l);
    if (m.orientation() != Orientation::plus)
        throw std::invalid_argument("is_free_cyclic: unsupported mode (minus orientation)");
    if (k > opts.max_k)
        throw std::invalid_argument("is_free_cyclic: k exceeds configured limit");
    const SupportSet& s = m.row();
    if (s.size() < k || s.size() < l) return {};
    if (k > m.n()) return {};
    BitWords base = BitWords::from_members(s.members(), s.capacity());
    return detail::offset_search(base, m.n(), k, l, opts, SumMode::cyclic,
                                 [&](BitWords& acc, std::uint64_t d) { acc.and_rotate_down(base, d); });
}

// Re-verification helpers; every returned witness must satisfy these.
inline bool verify_witness_integer(const SupportSet& s, const Witness& w, unsigned k, unsigned l) {
    if (w.rows.size() != k || w.cols.size() != l) return false;
    for (std::size_t i = 0; i < w.rows.size(); ++i)
        if (i > 0 && w.rows[i] <= w.rows[i - 1]) return false;
    for (std::size_t j = 0; j < w.cols.size(); ++j)
        if (j > 0 && w.cols[j] <= w.cols[j - 1]) return false;
    for (std::uint64_t r : w.rows)
        for (std::uint64_t c : w.cols) {
            if (r >= s.capacity() || c >= s.capacity()) return false;
            if (!s.contains(r + c)) return false;
        }
    return true;
}

inline bool verify_witness_entries(const CirculantMatrix& m, const Witness& w, unsigned k,
                                   unsigned l) {
    if (w.rows.size() != k || w.cols.size() != l) return false;
    for (std::size_t i = 0; i < w.rows.size(); ++i)
        if (i > 0 && w.rows[i] <= w.rows[i - 1]) return false;
    for (std::size_t j = 0; j < w.cols.size(); ++j)
        if (j > 0 && w.cols[j] <= w.cols[j - 1]) return false;
    for (std::uint64_t r : w.rows)
        for (std::uint64_t c : w.cols) {
            if (r >= m.n() || c >= m.n()) return false;
            if (!m.entry(r, c)) return false;
        }
    return true;
}

}  // namespace thincirc
