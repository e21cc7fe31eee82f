// Exact linear algebra over the rationals, sized for tiny systems
// (coincidence systems have at most k+l <= 12 variables).
#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "thincirc/rational.hpp"

namespace thincirc {

// Parameterization of the solution space of a homogeneous system:
// variable v equals sum_j expr[v][j] * t_j over the free variables t_j.
struct LinearBasis {
    std::size_t vars = 0;
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> free_cols;  // in col_order preference order
    std::vector<std::vector<Rational>> expr;
};

namespace detail {

// Reduced row echelon form, probing columns in col_order. Returns pivot
// bookkeeping; `rows` is modified in place.
inline void rref(std::vector<std::vector<Rational>>& rows, std::size_t vars,
                 const std::vector<std::size_t>& col_order,
                 std::vector<std::size_t>& pivot_cols, std::vector<std::ptrdiff_t>& pivot_row_of) {
    pivot_cols.clear();
    pivot_row_of.assign(vars, -1);
    std::size_t r = 0;
    for (std::size_t c : col_order) {
        if (r == rows.size()) break;
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c].num == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rational inv = Rational(1) / rows[r][c];
        for (auto& x : rows[r]) x = x * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].num == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = 0; j < vars; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        pivot_row_of[c] = static_cast<std::ptrdiff_t>(r);
        pivot_cols.push_back(c);
        ++r;
    }
}

inline std::vector<std::size_t> identity_order(std::size_t vars) {
    std::vector<std::size_t> o(vars);
    std::iota(o.begin(), o.end(), std::size_t{0});
    return o;
}

}  // namespace detail

inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows, std::size_t vars) {
    std::vector<std::size_t> pivots;
    std::vector<std::ptrdiff_t> pivot_row_of;
    detail::rref(rows, vars, detail::identity_order(vars), pivots, pivot_row_of);
    return pivots.size();
}

inline std::size_t integer_rank(const std::vector<std::vector<std::int64_t>>& m) {
    if (m.empty()) return 0;
    std::size_t vars = m.front().size();
    std::vector<std::vector<Rational>> rows;
    rows.reserve(m.size());
    for (const auto& r : m) {
        if (r.size() != vars) throw std::invalid_argument("integer_rank: ragged matrix");
        std::vector<Rational> row;
        row.reserve(vars);
        for (std::int64_t x : r) row.emplace_back(x);
        rows.push_back(std::move(row));
    }
    return rational_rank(std::move(rows), vars);
}

// Solve the homogeneous system rows * z = 0. Free variables are the first
// columns (in col_order) that receive no pivot.
inline LinearBasis solve_homogeneous(std::vector<std::vector<Rational>> rows, std::size_t vars,
                                     std::vector<std::size_t> col_order = {}) {
    if (col_order.empty()) col_order = detail::identity_order(vars);
    if (col_order.size() != vars)
        throw std::invalid_argument("solve_homogeneous: bad column order");
    for (const auto& r : rows)
        if (r.size() != vars) throw std::invalid_argument("solve_homogeneous: ragged system");

    LinearBasis out;
    out.vars = vars;
    std::vector<std::ptrdiff_t> pivot_row_of;
    detail::rref(rows, vars, col_order, out.pivot_cols, pivot_row_of);

    for (std::size_t c : col_order)
        if (pivot_row_of[c] < 0) out.free_cols.push_back(c);

    std::vector<std::size_t> free_index(vars, 0);
    for (std::size_t j = 0; j < out.free_cols.size(); ++j) free_index[out.free_cols[j]] = j;

    out.expr.assign(vars, std::vector<Rational>(out.free_cols.size(), Rational(0)));
    for (std::size_t v = 0; v < vars; ++v) {
        if (pivot_row_of[v] < 0) {
            out.expr[v][free_index[v]] = Rational(1);
        } else {
            const auto& row = rows[static_cast<std::size_t>(pivot_row_of[v])];
            for (std::size_t j = 0; j < out.free_cols.size(); ++j)
                out.expr[v][j] = -row[out.free_cols[j]];
        }
    }
    return out;
}

}  // namespace thincirc
