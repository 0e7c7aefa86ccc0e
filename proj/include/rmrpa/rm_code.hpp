#pragma once

#include <cstdint>
#include <vector>

#include "rmrpa/bit_vec.hpp"

namespace rmrpa {

using Codeword = BitVec;  // length n = 2^m, indexed by evaluation points
using Message = BitVec;   // length k, monomial coefficients in basis order

/// Reed-Muller code RM(m, r): evaluations of m-variable Boolean polynomials of
/// degree <= r on {0,1}^m.
///
/// Conventions, fixed project-wide:
///  - Evaluation point z = (z_1,...,z_m) maps to index sum_i z_i 2^(m-i), i.e. the
///    point index read MSB-first is (z_1 ... z_m); index order equals the standard
///    lexicographic order on points.
///  - Monomial basis order: total degree ascending, ties broken by lexicographic
///    order of the variable-index sets ({1,2} before {1,3} before {2,3}).
///    Message bit j is the coefficient of the j-th basis monomial; bit 0 is the
///    constant term.
///  - The message counter of a message is sum_j b_j 2^j (bit 0 least significant).
struct RmCode {
    int m = 0;
    int r = 0;
    std::size_t n = 1;  // 2^m
    std::size_t k = 1;  // sum_{i<=r} C(m, i)
    /// Monomial masks in basis order; monomial j evaluates to 1 at point p iff
    /// (p & monomials[j]) == monomials[j]. Variable x_i owns index bit (m - i).
    std::vector<std::uint32_t> monomials;
};

/// Builds RM(m, r). Requires 0 <= r <= m <= 24 (memory guard).
RmCode new_rm_code(int m, int r);

/// Evaluates the polynomial with coefficient vector `msg` at all 2^m points.
Codeword encode(const RmCode& code, const Message& msg);

/// Visits all 2^k codewords once, in message-counter order: f(counter, codeword).
/// Refuses when k > 24.
template <typename F>
void for_each_codeword(const RmCode& code, F&& f) {
    if (code.k > 24) throw std::invalid_argument("for_each_codeword: k > 24");
    Message msg(code.k);
    const std::uint64_t total = std::uint64_t(1) << code.k;
    for (std::uint64_t u = 0; u < total; ++u) {
        for (std::size_t j = 0; j < code.k; ++j) msg.set(j, (u >> j) & 1);
        f(u, encode(code, msg));
    }
}

/// All codewords in message-counter order. Refuses when k > 24.
std::vector<Codeword> all_codewords(const RmCode& code);

/// Minimum nonzero weight found by a Gray-code scan of all 2^k codewords.
/// Refuses when k > 24.
std::size_t exhaustive_min_weight(const RmCode& code);

/// Returns 2^(m-r). For small codes (k <= 24 and 2^(k+m) modest) the value is
/// confirmed against exhaustive_min_weight.
std::size_t min_distance(const RmCode& code);

/// Membership test via GF(2) rank against the generator rows.
bool is_codeword(const RmCode& code, const Codeword& word);

}  // namespace rmrpa
