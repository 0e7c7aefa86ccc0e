#include "rmrpa/bit_vec.hpp"

#include <algorithm>
#include <cctype>

namespace rmrpa {

BitVec BitVec::from_bit_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(i, true);
        else if (s[i] != '0')
            throw std::invalid_argument("bit string: expected only '0'/'1'");
    }
    return v;
}

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

BitVec BitVec::from_hex(std::string_view s, std::size_t n_bits) {
    const std::size_t digits = (n_bits + 3) / 4;
    if (s.size() != digits)
        throw std::invalid_argument("hex string: expected " + std::to_string(digits) +
                                    " digits for " + std::to_string(n_bits) + " bits");
    BitVec v(n_bits);
    for (std::size_t d = 0; d < digits; ++d) {
        const int x = hex_digit(s[d]);
        if (x < 0) throw std::invalid_argument("hex string: bad digit");
        for (int b = 0; b < 4; ++b) {
            const std::size_t i = 4 * d + std::size_t(b);
            const bool bit = (x >> (3 - b)) & 1;
            if (i < n_bits)
                v.set(i, bit);
            else if (bit)
                throw std::invalid_argument("hex string: nonzero padding bits");
        }
    }
    return v;
}

BitVec BitVec::parse(std::string_view s, std::size_t n_bits) {
    const bool binary_chars = std::all_of(s.begin(), s.end(),
                                          [](char c) { return c == '0' || c == '1'; });
    if (binary_chars && s.size() == n_bits) return from_bit_string(s);
    return from_hex(s, n_bits);
}

std::string BitVec::to_bit_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string BitVec::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve((n_ + 3) / 4);
    for (std::size_t d = 0; d * 4 < n_; ++d) {
        int x = 0;
        for (int b = 0; b < 4; ++b) {
            const std::size_t i = 4 * d + std::size_t(b);
            x = (x << 1) | ((i < n_ && get(i)) ? 1 : 0);
        }
        s.push_back(digits[x]);
    }
    return s;
}

std::size_t gf2_rank(std::vector<BitVec> rows) {
    std::size_t rank = 0;
    std::vector<std::pair<std::size_t, BitVec>> basis;  // (pivot, reduced row)
    for (auto& row : rows) {
        for (const auto& [pivot, b] : basis)
            if (row.size() > pivot && row.get(pivot)) row ^= b;
        if (auto p = row.first_set()) {
            basis.emplace_back(*p, std::move(row));
            ++rank;
        }
    }
    return rank;
}

bool gf2_in_span(const std::vector<BitVec>& rows, const BitVec& word) {
    std::vector<BitVec> all = rows;
    const std::size_t r = gf2_rank(all);
    all.push_back(word);
    return gf2_rank(std::move(all)) == r;
}

}  // namespace rmrpa
