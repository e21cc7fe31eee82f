// Sum-coincidence analysis of rectangles (a_1..a_k | b_1..b_l), entries
// distinct within each block. A rectangle's sums a_i+b_j induce a canonical
// pattern; rectangles sharing the pattern form a class whose size and count
// obey the bounds checked by the verify_* routines below.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "thincirc/linalg.hpp"
#include "thincirc/parallel.hpp"
#include "thincirc/point_set.hpp"
#include "thincirc/rational.hpp"
#include "thincirc/rho.hpp"
#include "thincirc/util.hpp"

namespace thincirc {

struct Rectangle {
    std::vector<std::uint64_t> a;  // rows, pairwise distinct
    std::vector<std::uint64_t> b;  // columns, pairwise distinct
};

inline void validate_rectangle(const Rectangle& e) {
    auto distinct = [](const std::vector<std::uint64_t>& v) {
        std::vector<std::uint64_t> s = v;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) == s.end();
    };
    if (e.a.empty() || e.b.empty())
        throw std::invalid_argument("rectangle: both blocks must be non-empty");
    if (!distinct(e.a) || !distinct(e.b))
        throw std::invalid_argument("rectangle: entries must be distinct within each block");
}

inline std::string rectangle_str(const Rectangle& e) {
    std::ostringstream os;
    auto block = [&os](const std::vector<std::uint64_t>& v) {
        os << '(';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ')';
    };
    os << "a=";
    block(e.a);
    os << " b=";
    block(e.b);
    return os.str();
}

// Canonical k*l labeling: cells share a label iff their sums coincide;
// labels are 1-based in row-major first-occurrence order.
struct SumPattern {
    std::uint64_t k = 0, l = 0;
    std::vector<std::uint32_t> labels;  // size k*l, row-major

    std::uint32_t label_count() const {
        return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
    }
    bool operator==(const SumPattern& o) const = default;
    bool operator<(const SumPattern& o) const {
        if (k != o.k) return k < o.k;
        if (l != o.l) return l < o.l;
        return labels < o.labels;
    }
};

inline SumPattern sum_pattern(const Rectangle& e) {
    validate_rectangle(e);
    SumPattern p;
    p.k = e.a.size();
    p.l = e.b.size();
    p.labels.resize(p.k * p.l);
    std::map<std::uint64_t, std::uint32_t> label_of;
    std::uint32_t next = 1;
    for (std::size_t i = 0; i < p.k; ++i)
        for (std::size_t j = 0; j < p.l; ++j) {
            auto [it, fresh] = label_of.emplace(e.a[i] + e.b[j], next);
            if (fresh) ++next;
            p.labels[i * p.l + j] = it->second;
        }
    return p;
}

inline std::uint64_t points_count(const Rectangle& e) {
    validate_rectangle(e);
    std::set<std::uint64_t> sums;
    for (std::uint64_t x : e.a)
        for (std::uint64_t y : e.b) sums.insert(x + y);
    return sums.size();
}

namespace detail {

// Generating equations of the coincidence system: within each label group,
// first cell vs. each later cell gives x_i0 + y_j0 - x_i - y_j = 0 over the
// k+l variables x_1..x_k, y_1..y_l.
inline std::vector<std::vector<Rational>> coincidence_rows(const SumPattern& p) {
    std::size_t vars = static_cast<std::size_t>(p.k + p.l);
    std::vector<std::ptrdiff_t> first_cell(p.label_count() + 1, -1);
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < p.k; ++i)
        for (std::size_t j = 0; j < p.l; ++j) {
            std::uint32_t c = p.labels[i * p.l + j];
            if (first_cell[c] < 0) {
                first_cell[c] = static_cast<std::ptrdiff_t>(i * p.l + j);
                continue;
            }
            std::size_t i0 = static_cast<std::size_t>(first_cell[c]) / p.l;
            std::size_t j0 = static_cast<std::size_t>(first_cell[c]) % p.l;
            std::vector<Rational> row(vars, Rational(0));
            row[i0] = row[i0] + Rational(1);
            row[p.k + j0] = row[p.k + j0] + Rational(1);
            row[i] = row[i] - Rational(1);
            row[p.k + j] = row[p.k + j] - Rational(1);
            rows.push_back(std::move(row));
        }
    return rows;
}

}  // namespace detail

inline std::uint64_t pattern_solution_dim(const SumPattern& p) {
    auto rows = detail::coincidence_rows(p);
    return p.k + p.l - rational_rank(std::move(rows), static_cast<std::size_t>(p.k + p.l));
}

inline std::uint64_t solution_dim(const Rectangle& e) {
    return pattern_solution_dim(sum_pattern(e));
}

struct RectangleAnalysis {
    std::uint64_t m = 0;  // distinct sums
    std::uint64_t n = 0;  // solution-space dimension of the coincidence system
    PointSet A_img, B_img;
};

// Pin x_1 = y_1 = 0, parameterize the remaining solution space by its n-2
// free variables, and read each variable's coefficient vector as a point.
// Coordinates are cleared to integers by the common denominator; cardinality
// and affine dimension of A+B are unchanged by that scaling.
inline RectangleAnalysis pattern_psi_images(const SumPattern& p,
                                            std::vector<std::size_t> col_order = {}) {
    std::size_t vars = static_cast<std::size_t>(p.k + p.l);
    RectangleAnalysis out;
    out.m = p.label_count();
    out.n = pattern_solution_dim(p);
    if (out.n < 3)
        throw std::logic_error("psi images: solution dimension " + std::to_string(out.n) +
                               " < 3 for pattern of shape " + std::to_string(p.k) + "x" +
                               std::to_string(p.l));

    auto rows = detail::coincidence_rows(p);
    std::vector<Rational> pin_x(vars, Rational(0)), pin_y(vars, Rational(0));
    pin_x[0] = Rational(1);
    pin_y[p.k] = Rational(1);
    rows.push_back(std::move(pin_x));
    rows.push_back(std::move(pin_y));

    LinearBasis basis = solve_homogeneous(std::move(rows), vars, std::move(col_order));
    if (basis.free_cols.size() != out.n - 2)
        throw std::logic_error("psi images: expected " + std::to_string(out.n - 2) +
                               " free variables, got " + std::to_string(basis.free_cols.size()));

    std::size_t dim = basis.free_cols.size();
    int128 lcm = 1;
    for (const auto& row : basis.expr)
        for (const auto& c : row) {
            int128 g = Rational::gcd128(lcm, c.den);
            lcm = lcm / g * c.den;
        }
    auto scale_var = [&](std::size_t v) {
        std::vector<std::int64_t> pt(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            int128 s = basis.expr[v][j].num * (lcm / basis.expr[v][j].den);
            if (s > INT64_MAX || s < INT64_MIN)
                throw std::logic_error("psi images: scaled coordinate overflow");
            pt[j] = static_cast<std::int64_t>(s);
        }
        return pt;
    };
    std::vector<std::vector<std::int64_t>> apts, bpts;
    for (std::size_t i = 0; i < p.k; ++i) apts.push_back(scale_var(i));
    for (std::size_t j = 0; j < p.l; ++j) bpts.push_back(scale_var(p.k + j));
    out.A_img = PointSet(dim, std::move(apts));
    out.B_img = PointSet(dim, std::move(bpts));
    return out;
}

inline RectangleAnalysis psi_images(const Rectangle& e) {
    return pattern_psi_images(sum_pattern(e));
}

// --- Enumeration ---------------------------------------------------------

namespace detail {

inline void enum_guard(std::uint64_t N, std::uint64_t k, std::uint64_t l, bool override_guard) {
    if (override_guard) return;
    std::uint64_t cost = saturating_pow_u64(N, static_cast<unsigned>(k + l));
    if (cost > 100'000'000ULL)
        throw BudgetExceeded("rectangle enumeration over " + std::to_string(N) + "^" +
                             std::to_string(k + l) + " tuples exceeds the guard; override to force");
}

// All tuples of `len` distinct values from [0,N), lexicographic; `ascending`
// restricts to increasing tuples.
template <typename Fn>
void for_each_block(std::uint64_t N, std::size_t len, bool ascending,
                    std::vector<std::uint64_t>& cur, Fn&& fn) {
    if (cur.size() == len) {
        fn(cur);
        return;
    }
    for (std::uint64_t v = 0; v < N; ++v) {
        if (ascending) {
            if (!cur.empty() && v <= cur.back()) continue;
        } else {
            if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
        }
        cur.push_back(v);
        for_each_block(N, len, ascending, cur, fn);
        cur.pop_back();
    }
}

}  // namespace detail

// Visits rectangles with coordinates in [0,N), both blocks lexicographically
// ordered; `ordered` visits all distinct-entry tuples, otherwise only
// increasing blocks (one representative per value set).
template <typename Fn>
void for_each_rectangle(std::uint64_t N, std::uint64_t k, std::uint64_t l, bool ordered, Fn&& fn) {
    if (N < k || N < l) return;
    std::vector<std::uint64_t> a, bstack;
    detail::for_each_block(N, static_cast<std::size_t>(k), !ordered, a,
                           [&](const std::vector<std::uint64_t>& ablock) {
                               detail::for_each_block(
                                   N, static_cast<std::size_t>(l), !ordered, bstack,
                                   [&](const std::vector<std::uint64_t>& bblock) {
                                       fn(Rectangle{ablock, bblock});
                                   });
                           });
}

inline std::vector<Rectangle> enumerate_rectangles(std::uint64_t N, std::uint64_t k,
                                                   std::uint64_t l, bool ordered = false,
                                                   bool override_guard = false) {
    detail::enum_guard(N, k, l, override_guard);
    std::vector<Rectangle> out;
    for_each_rectangle(N, k, l, ordered, [&](const Rectangle& e) { out.push_back(e); });
    return out;
}

// --- Class table and batch verification ----------------------------------

struct ClassEntry {
    SumPattern pattern;
    std::uint64_t count = 0;  // ordered rectangles in the class
    std::uint64_t m = 0;
    std::uint64_t n = 0;
};

struct ClassTable {
    std::uint64_t N = 0, k = 0, l = 0;
    std::uint64_t rectangles = 0;  // total ordered rectangles
    std::vector<ClassEntry> classes;  // sorted by pattern
};

// Groups ordered rectangles by pattern. Partitions the enumeration by the
// first row value; partial maps merge deterministically.
inline ClassTable build_class_table(std::uint64_t N, std::uint64_t k, std::uint64_t l,
                                    unsigned jobs = 1, bool override_guard = false) {
    detail::enum_guard(N, k, l, override_guard);
    ClassTable table;
    table.N = N;
    table.k = k;
    table.l = l;
    if (N < k || N < l) return table;

    std::vector<std::map<SumPattern, std::uint64_t>> partial(static_cast<std::size_t>(N));
    parallel_for(static_cast<std::size_t>(N), jobs, [&](std::size_t a0) {
        auto& counts = partial[a0];
        std::vector<std::uint64_t> a{static_cast<std::uint64_t>(a0)}, bstack;
        detail::for_each_block(N, static_cast<std::size_t>(k), false, a,
                               [&](const std::vector<std::uint64_t>& ablock) {
                                   detail::for_each_block(
                                       N, static_cast<std::size_t>(l), false, bstack,
                                       [&](const std::vector<std::uint64_t>& bblock) {
                                           ++counts[sum_pattern(Rectangle{ablock, bblock})];
                                       });
                               });
    });

    std::map<SumPattern, std::uint64_t> merged;
    for (const auto& part : partial)
        for (const auto& [pat, cnt] : part) merged[pat] += cnt;

    for (const auto& [pat, cnt] : merged) {
        ClassEntry e;
        e.pattern = pat;
        e.count = cnt;
        e.m = pat.label_count();
        e.n = pattern_solution_dim(pat);
        table.rectangles += cnt;
        table.classes.push_back(std::move(e));
    }
    return table;
}

struct Lemma1Report {
    std::uint64_t N = 0, k = 0, l = 0;
    std::uint64_t rectangles = 0;
    std::uint64_t classes = 0;
    Rational max_fill;  // max over classes of count / N^n
    std::vector<std::string> violations;
};

inline Lemma1Report verify_lemma1(std::uint64_t N, std::uint64_t k, std::uint64_t l,
                                  unsigned jobs = 1, bool override_guard = false) {
    ClassTable table = build_class_table(N, k, l, jobs, override_guard);
    Lemma1Report rep;
    rep.N = N;
    rep.k = k;
    rep.l = l;
    rep.rectangles = table.rectangles;
    rep.classes = table.classes.size();
    rep.max_fill = Rational(0);
    for (const auto& c : table.classes) {
        std::uint64_t bound = saturating_pow_u64(N, static_cast<unsigned>(c.n));
        Rational fill(static_cast<int128>(c.count),
                      static_cast<int128>(bound));
        if (rep.max_fill < fill) rep.max_fill = fill;
        if (c.count > bound)
            rep.violations.push_back("class with m=" + std::to_string(c.m) +
                                     " n=" + std::to_string(c.n) + " has " +
                                     std::to_string(c.count) + " members > " +
                                     std::to_string(bound));
    }
    return rep;
}

struct Lemma2Bucket {
    std::uint64_t n = 0;
    std::uint64_t classes = 0;
    std::uint64_t bound = 0;  // C(k^2 l^2, k+l-n)
};

struct Lemma2Report {
    std::uint64_t N = 0, k = 0, l = 0;
    std::uint64_t classes = 0;
    std::vector<Lemma2Bucket> buckets;  // ascending n
    std::vector<std::string> violations;
};

inline Lemma2Report verify_lemma2(std::uint64_t N, std::uint64_t k, std::uint64_t l,
                                  unsigned jobs = 1, bool override_guard = false) {
    ClassTable table = build_class_table(N, k, l, jobs, override_guard);
    Lemma2Report rep;
    rep.N = N;
    rep.k = k;
    rep.l = l;
    rep.classes = table.classes.size();
    std::map<std::uint64_t, std::uint64_t> per_n;
    for (const auto& c : table.classes) ++per_n[c.n];
    for (const auto& [n, cnt] : per_n) {
        Lemma2Bucket b;
        b.n = n;
        b.classes = cnt;
        b.bound = binomial_u64(k * k * l * l, k + l - n);
        rep.buckets.push_back(b);
        if (cnt > b.bound)
            rep.violations.push_back("n=" + std::to_string(n) + ": " + std::to_string(cnt) +
                                     " classes > binomial bound " + std::to_string(b.bound));
    }
    return rep;
}

struct Lemma3Report {
    std::uint64_t N = 0, k = 0, l = 0;
    std::uint64_t rectangles = 0;
    std::uint64_t classes = 0;
    std::uint64_t min_m = 0, max_m = 0;
    std::uint64_t min_n = 0, max_n = 0;
    // Observed image sizes; the images may collapse below k or l.
    std::uint64_t min_a_size = 0, max_a_size = 0;
    std::uint64_t min_b_size = 0, max_b_size = 0;
    Rational rho;  // exponent used in the chain check
    std::vector<std::string> violations;
};

// Per-rectangle checks: image sumset size m and affine dimension n-2, the
// chain n <= rho(k,l) * m, and the m/n range bounds. Analyses are cached per
// pattern; every rectangle is still matched against its cached class.
inline Lemma3Report verify_lemma3(std::uint64_t N, std::uint64_t k, std::uint64_t l,
                                  bool override_guard = false) {
    detail::enum_guard(N, k, l, override_guard);
    Lemma3Report rep;
    rep.N = N;
    rep.k = k;
    rep.l = l;
    RhoValue rho = rho_closed(std::min(k, l), std::max(k, l));
    rep.rho = rho.value;

    struct Cached {
        RectangleAnalysis analysis;
        std::uint64_t sum_size = 0;
        std::uint64_t sum_dim = 0;
    };
    std::map<SumPattern, Cached> cache;
    auto limit_violations = [&rep](const std::string& msg) {
        if (rep.violations.size() < 64) rep.violations.push_back(msg);
    };

    for_each_rectangle(N, k, l, /*ordered=*/true, [&](const Rectangle& e) {
        ++rep.rectangles;
        SumPattern pat = sum_pattern(e);
        auto it = cache.find(pat);
        if (it == cache.end()) {
            Cached c;
            c.analysis = pattern_psi_images(pat);
            PointSet sum = minkowski_sum(c.analysis.A_img, c.analysis.B_img);
            c.sum_size = sum.pts.size();
            c.sum_dim = affine_dim(sum);
            it = cache.emplace(std::move(pat), std::move(c)).first;
        }
        const Cached& c = it->second;
        std::uint64_t m = points_count(e);
        std::uint64_t n = c.analysis.n;

        if (m != c.analysis.m)
            limit_violations(rectangle_str(e) + ": direct sum count " + std::to_string(m) +
                             " != pattern label count " + std::to_string(c.analysis.m));
        if (c.sum_size != m)
            limit_violations(rectangle_str(e) + ": |A+B| = " + std::to_string(c.sum_size) +
                             " != m = " + std::to_string(m));
        if (c.sum_dim != n - 2)
            limit_violations(rectangle_str(e) + ": dim(A+B) = " + std::to_string(c.sum_dim) +
                             " != n-2 = " + std::to_string(n - 2));
        if (m < k + l - 1 || m > k * l)
            limit_violations(rectangle_str(e) + ": m = " + std::to_string(m) +
                             " outside [k+l-1, kl]");
        if (n < 3 || n > k + l)
            limit_violations(rectangle_str(e) + ": n = " + std::to_string(n) +
                             " outside [3, k+l]");
        // n <= rho * m, exact rational comparison
        Rational lhs(static_cast<int128>(n));
        Rational rhs = rho.value * Rational(static_cast<int128>(m));
        if (rhs < lhs)
            limit_violations(rectangle_str(e) + ": chain n <= rho*m fails: " + std::to_string(n) +
                             " > " + rhs.str());

        std::uint64_t asz = c.analysis.A_img.pts.size();
        std::uint64_t bsz = c.analysis.B_img.pts.size();
        if (rep.min_m == 0 && rep.max_m == 0) {
            rep.min_m = rep.max_m = m;
            rep.min_n = rep.max_n = n;
            rep.min_a_size = rep.max_a_size = asz;
            rep.min_b_size = rep.max_b_size = bsz;
        } else {
            rep.min_m = std::min(rep.min_m, m);
            rep.max_m = std::max(rep.max_m, m);
            rep.min_n = std::min(rep.min_n, n);
            rep.max_n = std::max(rep.max_n, n);
            rep.min_a_size = std::min(rep.min_a_size, asz);
            rep.max_a_size = std::max(rep.max_a_size, asz);
            rep.min_b_size = std::min(rep.min_b_size, bsz);
            rep.max_b_size = std::max(rep.max_b_size, bsz);
        }
    });
    rep.classes = cache.size();
    return rep;
}

}  // namespace thincirc
