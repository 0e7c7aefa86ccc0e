#include "rmrpa/rm_code.hpp"

#include <numeric>
#include <stdexcept>

namespace rmrpa {

namespace {

// Masks of all degree-<=r monomials, degree ascending, lex order of index sets
// within a degree.
std::vector<std::uint32_t> monomial_masks(int m, int r) {
    std::vector<std::uint32_t> masks;
    for (int d = 0; d <= r; ++d) {
        if (d == 0) {
            masks.push_back(0);
            continue;
        }
        std::vector<int> idx(d);
        std::iota(idx.begin(), idx.end(), 1);  // {1, 2, ..., d}
        while (true) {
            std::uint32_t mask = 0;
            for (int i : idx) mask |= std::uint32_t(1) << (m - i);
            masks.push_back(mask);
            int j = d - 1;
            while (j >= 0 && idx[j] == m - (d - 1 - j)) --j;
            if (j < 0) break;
            ++idx[j];
            for (int t = j + 1; t < d; ++t) idx[t] = idx[t - 1] + 1;
        }
    }
    return masks;
}

}  // namespace

RmCode new_rm_code(int m, int r) {
    if (m < 0 || m > 24 || r < 0 || r > m)
        throw std::invalid_argument("new_rm_code: need 0 <= r <= m <= 24");
    RmCode code;
    code.m = m;
    code.r = r;
    code.n = std::size_t(1) << m;
    code.monomials = monomial_masks(m, r);
    code.k = code.monomials.size();
    return code;
}

Codeword encode(const RmCode& code, const Message& msg) {
    if (msg.size() != code.k)
        throw std::invalid_argument("encode: message length " + std::to_string(msg.size()) +
                                    " != k = " + std::to_string(code.k));
    Codeword cw(code.n);
    for (std::size_t j = 0; j < code.k; ++j) {
        if (!msg.get(j)) continue;
        const std::uint32_t mask = code.monomials[j];
        for (std::size_t p = 0; p < code.n; ++p)
            if ((p & mask) == mask) cw.flip(p);
    }
    return cw;
}

std::vector<Codeword> all_codewords(const RmCode& code) {
    if (code.k > 24) throw std::invalid_argument("all_codewords: k > 24");
    std::vector<Codeword> out;
    out.reserve(std::size_t(1) << code.k);
    for_each_codeword(code, [&](std::uint64_t, Codeword cw) { out.push_back(std::move(cw)); });
    return out;
}

std::size_t exhaustive_min_weight(const RmCode& code) {
    if (code.k > 24) throw std::invalid_argument("exhaustive_min_weight: k > 24");
    std::vector<Codeword> rows(code.k);
    Message unit(code.k);
    for (std::size_t j = 0; j < code.k; ++j) {
        unit.set(j, true);
        rows[j] = encode(code, unit);
        unit.set(j, false);
    }
    // Gray-code walk: messages gray(u) and gray(u-1) differ in bit ctz(u).
    Codeword cur(code.n);
    std::size_t best = code.n + 1;
    const std::uint64_t total = std::uint64_t(1) << code.k;
    for (std::uint64_t u = 1; u < total; ++u) {
        cur ^= rows[std::size_t(std::countr_zero(u))];
        best = std::min(best, cur.weight());
    }
    return best;
}

std::size_t min_distance(const RmCode& code) {
    const std::size_t d = std::size_t(1) << (code.m - code.r);
    if (code.k <= 24 && code.k + std::size_t(code.m) <= 26) {
        if (exhaustive_min_weight(code) != d)
            throw std::logic_error("min_distance: exhaustive check failed");
    }
    return d;
}

bool is_codeword(const RmCode& code, const Codeword& word) {
    if (word.size() != code.n) return false;
    std::vector<BitVec> rows(code.k);
    Message unit(code.k);
    for (std::size_t j = 0; j < code.k; ++j) {
        unit.set(j, true);
        rows[j] = encode(code, unit);
        unit.set(j, false);
    }
    return gf2_in_span(rows, word);
}

}  // namespace rmrpa
