// Finite integer point sets: Minkowski sums and exact affine dimension.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "thincirc/linalg.hpp"

namespace thincirc {

// Set of distinct integer vectors in a fixed ambient dimension,
// kept sorted for deterministic iteration.
struct PointSet {
    std::size_t dim = 0;
    std::vector<std::vector<std::int64_t>> pts;

    PointSet() = default;
    PointSet(std::size_t d, std::vector<std::vector<std::int64_t>> points)
        : dim(d), pts(std::move(points)) {
        for (const auto& p : pts)
            if (p.size() != dim) throw std::invalid_argument("PointSet: point of wrong dimension");
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }

    std::size_t size() const { return pts.size(); }
    bool operator==(const PointSet&) const = default;
};

inline PointSet minkowski_sum(const PointSet& a, const PointSet& b) {
    if (a.dim != b.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    std::vector<std::vector<std::int64_t>> sums;
    sums.reserve(a.size() * b.size());
    for (const auto& p : a.pts)
        for (const auto& q : b.pts) {
            std::vector<std::int64_t> s(a.dim);
            for (std::size_t i = 0; i < a.dim; ++i) s[i] = p[i] + q[i];
            sums.push_back(std::move(s));
        }
    return PointSet(a.dim, std::move(sums));
}

// Dimension of the affine hull: rank of {p - p0} over the rationals.
inline std::size_t affine_dim(const PointSet& ps) {
    if (ps.pts.empty()) throw std::invalid_argument("affine_dim: empty point set");
    if (ps.pts.size() == 1) return 0;
    std::vector<std::vector<std::int64_t>> diffs;
    diffs.reserve(ps.size() - 1);
    const auto& p0 = ps.pts.front();
    for (std::size_t i = 1; i < ps.size(); ++i) {
        std::vector<std::int64_t> d(ps.dim);
        for (std::size_t j = 0; j < ps.dim; ++j) d[j] = ps.pts[i][j] - p0[j];
        diffs.push_back(std::move(d));
    }
    return integer_rank(diffs);
}

}  // namespace thincirc
