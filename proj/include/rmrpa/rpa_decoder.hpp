#pragma once

#include <cstdint>
#include <vector>

#include "rmrpa/bms_channel.hpp"
#include "rmrpa/rm_code.hpp"

namespace rmrpa {

/// LLRs indexed by evaluation point, same point order as Codeword.
using LlrVector = std::vector<double>;

struct DecoderConfig {
    int n_max = 1;                        // iterations per recursion level
    double llr_clamp = kDefaultLlrClamp;  // magnitude cap on aggregated LLRs
};

/// Default iteration count ceil(m/2); the same value is used down the recursion.
int default_iteration_count(int m);

/// LLR of the XOR of two bits: log((e^(a+b)+1)/(e^a+e^b)), evaluated in the
/// stable min-plus form with two log1p corrections. Symmetric; |result| never
/// exceeds min(|a|, |b|).
double boxplus(double a, double b);

/// Index of the coset {z, z^v} within project()'s output: cosets are ordered by
/// their canonical representative min(z, z^v), ascending.
std::size_t coset_index(std::size_t z, std::uint32_t v);

/// Coset-parity LLRs along the one-dimensional subspace {0, v}, v != 0.
LlrVector project(const LlrVector& L, std::uint32_t v);

/// Salt for tie resolution, derived from the bit pattern of an LLR vector.
std::uint64_t llr_salt(const LlrVector& L);
/// Keyed tie-resolution hash shared by fht_decode and the ML oracle.
std::uint64_t tie_hash(std::uint64_t salt, std::uint64_t candidate_counter);

/// ML decision for a first-order code via the fast Walsh-Hadamard transform.
/// The candidate codewords are sigma * chi_s with chi_s(z) = (-1)^(z.s); bit i-1
/// of the reported s integer is s_i (coefficient of z_i), so the integer
/// sigma_bit + 2*s equals the rm-code message counter of the matching message.
///
/// Score ties are resolved by the smallest tie_hash(llr_salt(L), counter), then
/// the smallest counter. A fixed candidate order here would systematically favor
/// one codeword and visibly skew hard-input (BSC/BEC) error rates between the
/// all-zeros and random-message modes, where score ties are common; the salted
/// hash keeps the decoder a deterministic function of L without preferring any
/// codeword. The ML oracle applies the identical rule, so equivalence is exact.
struct FhtResult {
    Codeword codeword;
    int sigma = 1;        // +1 or -1
    std::uint32_t s = 0;  // s_1 in bit 0
    double score = 0.0;   // winning correlation sum_z L(z) * sigma * chi_s(z)
};
FhtResult fht_decode(const LlrVector& L);

/// Aggregation step: out(z) = mean over v != 0 of (1 - 2 y_hat^(v)(coset of z))
/// * L(z^v), clamped. `estimates[v-1]` is the decoded projection along v, in
/// project()'s coset order.
LlrVector aggregate(const LlrVector& L, const std::vector<Codeword>& estimates, double clamp);

/// Recursive projection-aggregation decoding of RM(m, r), r >= 1. A first-order
/// code is decoded with one FHT pass. Otherwise each of up to cfg.n_max
/// iterations projects along all 2^m - 1 subspaces, decodes the projections as
/// RM(m-1, r-1) with the same cfg, aggregates, and replaces L; the loop exits
/// early once an iteration leaves the hard-decision pattern unchanged. Returns
/// the final hard decision.
Codeword rpa_decode(const RmCode& code, const LlrVector& L, const DecoderConfig& cfg);

/// Bit z is 1 iff L(z) < 0 (zero maps to 0).
Codeword hard_decision(const LlrVector& L);

}  // namespace rmrpa
