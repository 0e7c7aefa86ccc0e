#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmrpa/bms_channel.hpp"
#include "rmrpa/rm_code.hpp"
#include "rmrpa/rpa_decoder.hpp"

namespace rmrpa {

// Brute-force references for tests. These deliberately share no code paths with
// the implementations they check: the ML oracle enumerates messages instead of
// transforming, and the aggregation oracle is a literal transcription of the
// defining sum with its own coset arithmetic.

struct OracleVerdict {
    bool matched = false;
    std::string detail;  // first mismatch; empty when matched
};

/// Exhaustive ML decoding: the codeword minimizing sum of L(z) over its set
/// bits (equivalently, maximizing correlation with the +-1 image). Metric ties
/// resolve by the smallest tie_hash(llr_salt(L), message counter), then the
/// smallest counter - the same rule as fht_decode, so the two agree exactly,
/// ties included. Refuses when k > 24.
Codeword ml_decode_exhaustive(const RmCode& code, const LlrVector& L);

/// Literal double-loop form of the aggregation sum.
LlrVector naive_aggregate(const LlrVector& L, const std::vector<Codeword>& estimates,
                          double clamp = kDefaultLlrClamp);

struct PairHistogram {
    std::size_t alphabet = 0;                       // |Y| of the base channel
    std::vector<std::uint64_t> counts0, counts1;    // index y1*|Y|+y2, by parity
    std::uint64_t samples0 = 0, samples1 = 0;
    double tv_distance = 0.0;  // max over parity of TV(empirical, exact W-)
};

/// Draws `samples` pairs through two independent channel uses with i.i.d.
/// uniform inputs, bins them by (y1, y2) and input parity, and reports the
/// total-variation distance to the exact combined channel.
PairHistogram empirical_projected_channel(const DiscreteBms& ch, std::uint64_t samples,
                                          SplitMix64& rng);

}  // namespace rmrpa
