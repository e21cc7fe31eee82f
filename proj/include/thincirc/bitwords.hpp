// Word-packed bit sets sized for support intersection searches.
//
// The block search needs two primitives on a fixed universe [0, n):
//   acc &= (src >> d)          integer shift: bit x becomes src bit x+d
//   acc &= rot_down(src, d)    cyclic shift:  bit x becomes src bit (x+d) mod n
// Both are computed word-at-a-time without materializing the shifted set.
#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace thincirc {

class BitWords {
public:
    explicit BitWords(std::uint64_t nbits)
        : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    template <class Container>
    static BitWords from_members(const Container& members, std::uint64_t nbits) {
        BitWords b(nbits);
        for (std::uint64_t m : members) b.set(m);
        return b;
    }

    std::uint64_t size_bits() const { return nbits_; }

    void set(std::uint64_t i) {
        if (i >= nbits_) throw std::out_of_range("BitWords::set");
        w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    bool test(std::uint64_t i) const {
        if (i >= nbits_) return false;
        return (w_[i >> 6] >> (i & 63)) & 1;
    }

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (std::uint64_t word : w_) c += static_cast<std::uint64_t>(std::popcount(word));
        return c;
    }

    // this &= (src >> d); bits shifted past the low end disappear.
    void and_shift_down(const BitWords& src, std::uint64_t d) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= down_word(src.w_, i, d);
    }

    // this &= cyclic-down-rotation of src by d over [0, nbits); 0 < d < nbits.
    void and_rotate_down(const BitWords& src, std::uint64_t d) {
        std::uint64_t up = nbits_ - d;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t word = down_word(src.w_, i, d) | up_word(src.w_, i, up);
            w_[i] &= word;
        }
        mask_tail();
    }

    // Ascending positions of set bits; stops after `limit` if limit > 0.
    std::vector<std::uint64_t> members(std::uint64_t limit = 0) const {
        std::vector<std::uint64_t> out;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t word = w_[i];
            while (word != 0) {
                unsigned bit = static_cast<unsigned>(std::countr_zero(word));
                out.push_back(static_cast<std::uint64_t>(i) * 64 + bit);
                if (limit != 0 && out.size() == limit) return out;
                word &= word - 1;
            }
        }
        return out;
    }

private:
    // Word i of (w >> d).
    static std::uint64_t down_word(const std::vector<std::uint64_t>& w, std::size_t i,
                                   std::uint64_t d) {
        std::size_t q = static_cast<std::size_t>(d >> 6);
        unsigned r = static_cast<unsigned>(d & 63);
        std::uint64_t lo = (i + q < w.size()) ? w[i + q] : 0;
        if (r == 0) return lo;
        std::uint64_t hi = (i + q + 1 < w.size()) ? w[i + q + 1] : 0;
        return (lo >> r) | (hi << (64 - r));
    }

    // Word i of (w << s).
    static std::uint64_t up_word(const std::vector<std::uint64_t>& w, std::size_t i,
                                 std::uint64_t s) {
        std::size_t q = static_cast<std::size_t>(s >> 6);
        unsigned r = static_cast<unsigned>(s & 63);
        std::uint64_t lo = (i >= q) ? w[i - q] : 0;
        if (r == 0) return lo;
        std::uint64_t hi = (i >= q + 1) ? w[i - q - 1] : 0;
        return (lo << r) | (hi >> (64 - r));
    }

    void mask_tail() {
        unsigned used = static_cast<unsigned>(nbits_ & 63);
        if (used != 0 && !w_.empty()) w_.back() &= (std::uint64_t{1} << used) - 1;
    }

    std::uint64_t nbits_;
    std::vector<std::uint64_t> w_;
};

}  // namespace thincirc
