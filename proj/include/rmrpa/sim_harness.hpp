#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rmrpa/bms_channel.hpp"
#include "rmrpa/bounds.hpp"
#include "rmrpa/oracle.hpp"
#include "rmrpa/rm_code.hpp"

namespace rmrpa {

struct SimConfig {
    RmCode code;
    ChannelModel channel = Bsc{0.1};
    std::uint64_t trials = 1;
    std::uint64_t max_frame_errors = 0;  // early stop; 0 disables
    std::uint64_t seed = 0;
    int n_max = 1;
    bool all_zeros_mode = true;  // transmit C = 0 (valid by channel symmetry)
    int workers = 0;             // 0 = hardware concurrency
    double llr_clamp = kDefaultLlrClamp;
};

struct SimResult {
    std::uint64_t trials_run = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t bit_errors = 0;
    double fer = 0.0;
    double ber = 0.0;
    std::pair<double, double> fer_ci95{0.0, 0.0};  // exact (Clopper-Pearson)
    bool truncated = false;                        // stopped at max_frame_errors
    double wall_seconds = 0.0;
    SimConfig config_echo;
};

/// Exact binomial (Clopper-Pearson) two-sided interval.
std::pair<double, double> clopper_pearson(std::uint64_t errors, std::uint64_t trials,
                                          double confidence = 0.95);

/// Seeded Monte Carlo frame/bit error estimation. Trial t draws its noise and
/// message from substreams keyed by (seed, t), so the result is identical for
/// every worker count; early stopping scans trials in index order.
SimResult run_trials(const SimConfig& cfg);

/// Runs matched-seed batches in all-zeros and random-message modes; matched
/// when the two 95% FER intervals overlap. Requires trials >= 1000.
OracleVerdict symmetry_check(const SimConfig& cfg);

struct SweepEntry {
    bool ok = false;
    std::string error;  // set when this config failed
    SimResult sim;
    BoundReport bound;
};

/// Pairs each simulation with its analytic bound (Z taken from the channel);
/// individual failures are reported per entry and the sweep continues.
std::vector<SweepEntry> sweep(const std::vector<SimConfig>& cfgs);

}  // namespace rmrpa
