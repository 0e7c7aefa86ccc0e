#pragma once

#include <vector>

namespace rmrpa {

/// Inputs to the analytic error bounds: code parameters and the channel
/// Bhattacharyya parameter Z (which plays the role of Z_r).
struct BoundInputs {
    int m = 1;
    int r = 1;
    double z = 0.5;  // in (0, 1)
};

/// Z_1..Z_r with Z_i = 1 - (1 - Z)^(2^(r-i)), evaluated through log1p/expm1.
std::vector<double> bhattacharyya_sequence(const BoundInputs& in);

/// ln of the base-case bound (2^(m-r+2) - 1) * Z_1^(2^(m-r)); stays in log
/// domain so the value never underflows.
double q1_log_bound(const BoundInputs& in);

/// ln-bounds on P(Q_2)..P(Q_r) from the recurrence
/// P(Q_i) <= N_i Z_i^(N_i - 1) + (N_i - 1) P(Q_{i-1}),   N_i = 2^(m-r+i),
/// iterated from the base case with log-sum-exp. Empty when r = 1.
std::vector<double> q_recurrence_log(const BoundInputs& in);

/// ln-bound on P(Q_r) from the unrolled form
///   sum_{t=2..r} A_t prod_{s=t+1..r} B_s  +  P(Q_1) prod_{s=2..r} B_s,
/// A_t = 2^(m-r+t) Z_t^(2^(m-r+t)-1), B_t = 2^(m-r+t) - 1. Equals q1_log_bound
/// when r = 1.
double unrolled_log_bound(const BoundInputs& in);

/// Order threshold r*(m, Z) = log2(m) - log2(lambda), lambda = -ln(1 - Z).
/// Orders r < r* give vanishing error in the large-m limit. Requires m >= 2.
double order_threshold(int m, double z);

struct BoundReport {
    int m = 0;
    int r = 0;
    double z = 0.0;                    // Z_r
    std::vector<double> z_seq;         // Z_1..Z_r
    std::vector<double> n_seq;         // N_1..N_r
    double log_q1 = 0.0;               // ln-bound on P(Q_1)
    double q1_clamped = 0.0;           // min(1, exp(log_q1))
    std::vector<double> log_a_terms;   // ln A_2..ln A_r
    std::vector<double> log_b_terms;   // ln B_2..ln B_r
    std::vector<double> log_q_seq;     // ln-bounds on P(Q_2)..P(Q_r)
    std::vector<double> q_seq_clamped; // min(1, exp(.)) of each log_q_seq entry
    double log_q_r = 0.0;
    double q_r_clamped = 0.0;          // min(1, exp(log_q_r))
    bool vacuous = false;              // bound on P(Q_r) is >= 1
    double threshold = 0.0;            // r*(m, Z)
    bool r_below_threshold = false;
};

/// Full report with the Lemma-style Z_i upper bounds derived from in.z.
BoundReport make_bound_report(const BoundInputs& in);

/// Same report evaluated on an externally supplied Z_1..Z_r (e.g. exact values
/// from iterated channel combining); the bound statements hold for exact Z_i too.
BoundReport make_bound_report(int m, int r, const std::vector<double>& z_seq);

}  // namespace rmrpa
