#include "rmrpa/sim_harness.hpp"

#include <boost/math/distributions/beta.hpp>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rmrpa/rpa_decoder.hpp"

namespace rmrpa {

namespace {

// Trials are processed in fixed-size chunks: a chunk is decoded in parallel,
// then scanned in index order so early stopping cannot depend on scheduling.
constexpr std::uint64_t kChunk = 1024;

struct TrialOutcome {
    bool frame_error = false;
    std::uint32_t bit_errors = 0;
};

TrialOutcome run_one_trial(const SimConfig& cfg, std::uint64_t trial) {
    SplitMix64 noise_rng = substream(cfg.seed, trial, 0);
    Codeword sent(cfg.code.n);
    if (!cfg.all_zeros_mode) {
        SplitMix64 msg_rng = substream(cfg.seed, trial, 1);
        Message msg(cfg.code.k);
        for (std::size_t j = 0; j < cfg.code.k; ++j) msg.set(j, msg_rng.next_double() < 0.5);
        sent = encode(cfg.code, msg);
    }
    LlrVector L(cfg.code.n);
    for (std::size_t z = 0; z < cfg.code.n; ++z) {
        const double y = sample(cfg.channel, sent.get(z) ? 1 : 0, noise_rng);
        L[z] = llr(cfg.channel, y, cfg.llr_clamp);
    }
    const Codeword decoded =
        rpa_decode(cfg.code, L, DecoderConfig{cfg.n_max, cfg.llr_clamp});
    TrialOutcome out;
    out.frame_error = decoded != sent;
    out.bit_errors = std::uint32_t((decoded ^ sent).weight());
    return out;
}

}  // namespace

std::pair<double, double> clopper_pearson(std::uint64_t errors, std::uint64_t trials,
                                          double confidence) {
    if (trials == 0 || errors > trials)
        throw std::invalid_argument("clopper_pearson: need 0 <= errors <= trials, trials > 0");
    const double alpha = 1.0 - confidence;
    const double k = double(errors), n = double(trials);
    double lo = 0.0, hi = 1.0;
    if (errors > 0)
        lo = boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1.0), alpha / 2.0);
    if (errors < trials)
        hi = boost::math::quantile(boost::math::beta_distribution<>(k + 1.0, n - k),
                                   1.0 - alpha / 2.0);
    return {lo, hi};
}

SimResult run_trials(const SimConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_trials: need trials >= 1");
    if (cfg.code.r < 1) throw std::invalid_argument("run_trials: need r >= 1");
    if (cfg.n_max < 1) throw std::invalid_argument("run_trials: need n_max >= 1");
    if (cfg.workers < 0) throw std::invalid_argument("run_trials: workers must be >= 0");

    unsigned workers = cfg.workers > 0 ? unsigned(cfg.workers) : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;

    const auto t0 = std::chrono::steady_clock::now();
    SimResult res;
    res.config_echo = cfg;

    std::vector<TrialOutcome> chunk_out(kChunk);
    for (std::uint64_t lo = 0; lo < cfg.trials && !res.truncated; lo += kChunk) {
        const std::uint64_t hi = std::min(cfg.trials, lo + kChunk);
        const std::uint64_t count = hi - lo;
        if (workers <= 1 || count < 2) {
            for (std::uint64_t t = lo; t < hi; ++t)
                chunk_out[std::size_t(t - lo)] = run_one_trial(cfg, t);
        } else {
            const unsigned nw = unsigned(std::min<std::uint64_t>(workers, count));
            std::vector<std::thread> pool;
            pool.reserve(nw);
            for (unsigned w = 0; w < nw; ++w) {
                pool.emplace_back([&, w] {
                    for (std::uint64_t t = lo + w; t < hi; t += nw)
                        chunk_out[std::size_t(t - lo)] = run_one_trial(cfg, t);
                });
            }
            for (auto& th : pool) th.join();
        }
        for (std::uint64_t t = lo; t < hi; ++t) {
            const TrialOutcome& o = chunk_out[std::size_t(t - lo)];
            ++res.trials_run;
            res.frame_errors += o.frame_error ? 1 : 0;
            res.bit_errors += o.bit_errors;
            if (cfg.max_frame_errors > 0 && res.frame_errors >= cfg.max_frame_errors &&
                res.trials_run < cfg.trials) {
                res.truncated = true;
                break;
            }
        }
    }

    res.fer = double(res.frame_errors) / double(res.trials_run);
    res.ber = double(res.bit_errors) / (double(res.trials_run) * double(cfg.code.n));
    res.fer_ci95 = clopper_pearson(res.frame_errors, res.trials_run);
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

OracleVerdict symmetry_check(const SimConfig& cfg) {
    if (cfg.trials < 1000) throw std::invalid_argument("symmetry_check: need trials >= 1000");
    SimConfig zeros = cfg;
    zeros.all_zeros_mode = true;
    SimConfig random_msgs = cfg;
    random_msgs.all_zeros_mode = false;
    const SimResult a = run_trials(zeros);
    const SimResult b = run_trials(random_msgs);
    OracleVerdict v;
    v.matched = !(a.fer_ci95.second < b.fer_ci95.first || b.fer_ci95.second < a.fer_ci95.first);
    if (!v.matched) {
        v.detail = "disjoint FER intervals: all-zeros [" + std::to_string(a.fer_ci95.first) + ", " +
                   std::to_string(a.fer_ci95.second) + "] vs random-message [" +
                   std::to_string(b.fer_ci95.first) + ", " + std::to_string(b.fer_ci95.second) +
                   "]";
    }
    return v;
}

std::vector<SweepEntry> sweep(const std::vector<SimConfig>& cfgs) {
    if (cfgs.empty()) throw std::invalid_argument("sweep: empty config list");
    std::vector<SweepEntry> out;
    out.reserve(cfgs.size());
    for (const SimConfig& cfg : cfgs) {
        SweepEntry e;
        try {
            e.sim = run_trials(cfg);
            e.bound = make_bound_report(
                BoundInputs{cfg.code.m, cfg.code.r, bhattacharyya(cfg.channel)});
            e.ok = true;
        } catch (const std::exception& ex) {
            e.ok = false;
            e.error = ex.what();
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace rmrpa
