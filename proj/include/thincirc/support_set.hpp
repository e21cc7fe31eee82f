// Support sets: the distinct one-positions of a circulant's defining row.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thincirc {

// Immutable sorted set of indices below a fixed capacity.
// Duplicate input members are rejected, not merged.
class SupportSet {
public:
    SupportSet(std::uint64_t capacity, std::vector<std::uint64_t> members)
        : capacity_(capacity), members_(std::move(members)) {
        if (capacity_ == 0) throw std::invalid_argument("SupportSet: capacity must be positive");
        std::sort(members_.begin(), members_.end());
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (members_[i] >= capacity_)
                throw std::invalid_argument("SupportSet: member " + std::to_string(members_[i]) +
                                            " out of range [0, " + std::to_string(capacity_) + ")");
            if (i > 0 && members_[i] == members_[i - 1])
                throw std::invalid_argument("SupportSet: duplicate member " +
                                            std::to_string(members_[i]));
        }
    }

    std::uint64_t capacity() const { return capacity_; }
    const std::vector<std::uint64_t>& members() const { return members_; }
    std::uint64_t size() const { return members_.size(); }

    bool contains(std::uint64_t v) const {
        return std::binary_search(members_.begin(), members_.end(), v);
    }

private:
    std::uint64_t capacity_;
    std::vector<std::uint64_t> members_;
};

}  // namespace thincirc
