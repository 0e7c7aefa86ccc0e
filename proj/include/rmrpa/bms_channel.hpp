#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rmrpa/rng.hpp"

namespace rmrpa {

inline constexpr double kDefaultLlrClamp = 40.0;

/// Sampled-symbol encoding, as doubles:
///   BSC     -> 0.0 / 1.0
///   BEC     -> 0.0 / 1.0 / kBecErasure
///   BI-AWGN -> the real channel output (input 0 maps to +1, input 1 to -1)
///   custom  -> the output index
inline constexpr double kBecErasure = 2.0;

/// An explicit binary-input channel: output y has probability p0[y] under input 0
/// and p1[y] under input 1. Valid instances are normalized (sums within 1e-12 of 1),
/// nonnegative, and output-symmetric: some pairing pi of outputs has
/// p0[y] = p1[pi(y)] for all y. Build through make_discrete_bms, which validates.
struct DiscreteBms {
    std::vector<double> p0;
    std::vector<double> p1;
    std::vector<std::string> labels;  // optional; empty means "use indices"
};

DiscreteBms make_discrete_bms(std::vector<double> p0, std::vector<double> p1,
                              std::vector<std::string> labels = {});

struct Bsc {
    double p;  // crossover, in (0, 1/2)
};
struct Bec {
    double eps;  // erasure probability, in (0, 1)
};
struct BiAwgn {
    double sigma;  // noise std dev, > 0; unit-energy antipodal inputs
};

using ChannelModel = std::variant<Bsc, Bec, BiAwgn, DiscreteBms>;

// Validating constructors; degenerate parameter values are rejected.
ChannelModel make_bsc(double p);
ChannelModel make_bec(double eps);
ChannelModel make_biawgn(double sigma);

/// One memoryless channel use. Deterministic given the rng state.
double sample(const ChannelModel& ch, int input, SplitMix64& rng);

/// Output index of one use of an explicit channel.
int sample_index(const DiscreteBms& ch, int input, SplitMix64& rng);

/// log(W(y|0) / W(y|1)), clamped to [-clamp, clamp]. Throws on symbols the
/// channel cannot produce.
double llr(const ChannelModel& ch, double symbol, double clamp = kDefaultLlrClamp);
double llr_of_output(const DiscreteBms& ch, std::size_t idx, double clamp = kDefaultLlrClamp);

/// Bhattacharyya parameter Z: sum_y sqrt(W(y|0) W(y|1)).
/// Closed forms: BSC 2*sqrt(p(1-p)); BEC eps; BI-AWGN exp(-1/(2 sigma^2)).
double bhattacharyya(const DiscreteBms& ch);
double bhattacharyya(const ChannelModel& ch);

/// The channel seen by the XOR of the inputs of two independent uses:
/// W-(y1,y2 | s) = 1/2 * sum_{u1^u2=s} W(y1|u1) W(y2|u2).
/// Output (y1, y2) maps to index y1*|Y| + y2. Requires |Y| <= 4096.
DiscreteBms combine_minus(const DiscreteBms& ch);

/// Merges outputs whose LLRs agree within tol (probabilities summed); keeps the
/// Bhattacharyya parameter to ~1e-10. Output order: LLR ascending.
DiscreteBms merge_equivalent_outputs(const DiscreteBms& ch, double tol = 1e-9);

/// Exact discrete form of an already-discrete model; throws for BI-AWGN.
DiscreteBms to_discrete(const ChannelModel& ch);

/// Discrete version suitable for combine_minus. Discrete channels pass through
/// unchanged; BI-AWGN is binned symmetrically in the LLR domain into `levels`
/// outputs (levels even, >= 4).
DiscreteBms quantize(const ChannelModel& ch, int levels);

/// Z_1..Z_r where Z_r = Z(ch) and Z_i = Z of ch combined (r-i) times, merging
/// equivalent outputs between levels.
std::vector<double> exact_bhattacharyya_sequence(const DiscreteBms& ch, int r,
                                                 double merge_tol = 1e-9);

/// Raised by parse_channel_spec; the CLI maps it to a usage error.
class ChannelSpecError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Grammar: "bsc:<p>", "bec:<eps>", "awgn:<sigma>", "custom:<path>". The custom
/// file has one output per line: symbol-id, p(y|0), p(y|1) (comma or whitespace
/// separated; '#' starts a comment).
ChannelModel parse_channel_spec(const std::string& spec);

std::string channel_spec_string(const ChannelModel& ch);

}  // namespace rmrpa
