// Boolean circulant matrices, stored as one defining row.
//
// entry(i, j) = row[(i + j) mod n] for plus orientation,
//              row[(i - j) mod n] for minus orientation.
// Plus-circulants are symmetric; every row and column carries |support| ones.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "thincirc/support_set.hpp"

namespace thincirc {

enum class Orientation { plus, minus };

inline const char* orientation_name(Orientation o) {
    return o == Orientation::plus ? "plus" : "minus";
}

class CirculantMatrix {
public:
    CirculantMatrix(SupportSet row, Orientation orientation)
        : row_(std::move(row)), orientation_(orientation) {}

    std::uint64_t n() const { return row_.capacity(); }
    Orientation orientation() const { return orientation_; }
    const SupportSet& row() const { return row_; }

    bool entry(std::uint64_t i, std::uint64_t j) const {
        std::uint64_t n = row_.capacity();
        if (i >= n || j >= n) throw std::invalid_argument("CirculantMatrix::entry: index out of range");
        std::uint64_t idx;
        if (orientation_ == Orientation::plus) {
            idx = (i + j) % n;  // i + j < 2^27 at the supported orders, no overflow
        } else {
            idx = (i + n - j) % n;
        }
        return row_.contains(idx);
    }

private:
    SupportSet row_;
    Orientation orientation_;
};

inline CirculantMatrix make_circulant(SupportSet row, Orientation orientation) {
    return CirculantMatrix(std::move(row), orientation);
}

struct WeightReport {
    std::uint64_t weight = 0;      // total ones; always n * row_weight
    std::uint64_t row_weight = 0;  // ones per row = |support|
};

inline WeightReport weight(const CirculantMatrix& m) {
    return {m.n() * m.row().size(), m.row().size()};
}

// Order-2N plus-circulant with the same support. The top-left N x N block of
// the result reproduces the integer-sum incidence pattern of the support:
// entry(i, j) = [i + j in S] for i, j < N, since i + j < 2N never wraps.
inline CirculantMatrix embed_double(const SupportSet& s) {
    return CirculantMatrix(SupportSet(2 * s.capacity(), s.members()), Orientation::plus);
}

}  // namespace thincirc
