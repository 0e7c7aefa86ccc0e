#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmrpa {

/// Packed bit vector over GF(2). Bit i lives at bit (i % 64) of word (i / 64);
/// bits past size() are kept zero so whole-word comparison and popcount are valid.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    /// Parses a string of '0'/'1' characters, one per bit.
    static BitVec from_bit_string(std::string_view s);
    /// Parses a hex string: 4 bits per digit, the first bit of the vector is the
    /// most significant bit of the first digit, zero padding at the end.
    static BitVec from_hex(std::string_view s, std::size_t n_bits);
    /// Accepts either form. A string of exactly n_bits '0'/'1' characters is read
    /// as bits; otherwise it must be hex of length ceil(n_bits/4).
    static BitVec parse(std::string_view s, std::size_t n_bits);

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool b) {
        const std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (b)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        if (o.n_ != n_) throw std::invalid_argument("BitVec xor: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    std::size_t weight() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::size_t(std::popcount(w));
        return c;
    }
    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }
    std::optional<std::size_t> first_set() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return (i << 6) + std::size_t(std::countr_zero(w_[i]));
        return std::nullopt;
    }

    bool operator==(const BitVec&) const = default;

    std::string to_bit_string() const;
    std::string to_hex() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Rank over GF(2) of a set of equal-length rows.
std::size_t gf2_rank(std::vector<BitVec> rows);

/// True iff `word` is in the row span of `rows`.
bool gf2_in_span(const std::vector<BitVec>& rows, const BitVec& word);

}  // namespace rmrpa
