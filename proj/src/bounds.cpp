#include "rmrpa/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace rmrpa {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_inputs(int m, int r, double z) {
    if (r < 1 || r > m) throw std::invalid_argument("bounds: need 1 <= r <= m");
    if (m > 1023) throw std::invalid_argument("bounds: m too large for double exponents");
    if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("bounds: need 0 < Z < 1");
}

// ln(1 - e^x) for x <= 0, accurate on both ends.
double log1mexp(double x) {
    return x > -kLn2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

double logsumexp2(double a, double b) {
    if (a == -HUGE_VAL) return b;
    if (b == -HUGE_VAL) return a;
    const double hi = a > b ? a : b;
    return hi + std::log1p(std::exp(-std::abs(a - b)));
}

// ln(2^e - 1) = e ln2 + ln(1 - 2^-e).
double log_pow2_minus1(int e) { return e * kLn2 + log1mexp(-e * kLn2); }

// ln Z_i along the combining upper-bound chain Z_i = 1 - (1-Z)^(2^(r-i)), kept in the
// log domain the whole way so Z_i rounding to 1.0 loses nothing.
std::vector<double> log_z_upper_seq(const BoundInputs& in) {
    std::vector<double> logz(std::size_t(in.r));
    const double log1mz = std::log1p(-in.z);  // ln(1 - Z) < 0
    for (int i = 1; i <= in.r; ++i)
        logz[std::size_t(i) - 1] = log1mexp(std::ldexp(log1mz, in.r - i));
    return logz;
}

double threshold_unchecked(int m, double z) {
    const double lambda = -std::log1p(-z);
    return std::log2(double(m)) - std::log2(lambda);
}

double q1_from_logz(int m, int r, double log_z1) {
    return log_pow2_minus1(m - r + 2) + std::ldexp(1.0, m - r) * log_z1;
}

BoundReport build_report(int m, int r, std::vector<double> z_seq, const std::vector<double>& logz) {
    BoundReport rep;
    rep.m = m;
    rep.r = r;
    rep.z = z_seq.back();
    rep.z_seq = std::move(z_seq);
    rep.n_seq.resize(std::size_t(r));
    for (int i = 1; i <= r; ++i) rep.n_seq[std::size_t(i) - 1] = std::ldexp(1.0, m - r + i);

    rep.log_q1 = q1_from_logz(m, r, logz[0]);
    rep.q1_clamped = std::min(1.0, std::exp(rep.log_q1));

    double lq = rep.log_q1;
    for (int i = 2; i <= r; ++i) {
        const int e = m - r + i;
        const double log_a = e * kLn2 + (std::ldexp(1.0, e) - 1.0) * logz[std::size_t(i) - 1];
        const double log_b = log_pow2_minus1(e);
        rep.log_a_terms.push_back(log_a);
        rep.log_b_terms.push_back(log_b);
        lq = logsumexp2(log_a, log_b + lq);
        rep.log_q_seq.push_back(lq);
        rep.q_seq_clamped.push_back(std::min(1.0, std::exp(lq)));
    }
    rep.log_q_r = lq;
    rep.q_r_clamped = std::min(1.0, std::exp(rep.log_q_r));
    rep.vacuous = rep.log_q_r >= 0.0;
    rep.threshold = threshold_unchecked(m, rep.z);
    rep.r_below_threshold = double(r) < rep.threshold;
    return rep;
}

}  // namespace

std::vector<double> bhattacharyya_sequence(const BoundInputs& in) {
    check_inputs(in.m, in.r, in.z);
    std::vector<double> z(std::size_t(in.r));
    const double log1mz = std::log1p(-in.z);
    for (int i = 1; i <= in.r; ++i)
        z[std::size_t(i) - 1] = -std::expm1(std::ldexp(log1mz, in.r - i));
    return z;
}

double q1_log_bound(const BoundInputs& in) {
    check_inputs(in.m, in.r, in.z);
    return q1_from_logz(in.m, in.r, log_z_upper_seq(in)[0]);
}

std::vector<double> q_recurrence_log(const BoundInputs& in) {
    check_inputs(in.m, in.r, in.z);
    const auto logz = log_z_upper_seq(in);
    std::vector<double> out;
    double lq = q1_from_logz(in.m, in.r, logz[0]);
    for (int i = 2; i <= in.r; ++i) {
        const int e = in.m - in.r + i;
        const double term = e * kLn2 + (std::ldexp(1.0, e) - 1.0) * logz[std::size_t(i) - 1];
        lq = logsumexp2(term, log_pow2_minus1(e) + lq);
        out.push_back(lq);
    }
    return out;
}

double unrolled_log_bound(const BoundInputs& in) {
    check_inputs(in.m, in.r, in.z);
    const auto logz = log_z_upper_seq(in);
    // Suffix sums of ln B_s for s = 2..r, so suffix[t] = sum_{s=t..r} ln B_s.
    std::vector<double> suffix(std::size_t(in.r) + 2, 0.0);
    for (int s = in.r; s >= 2; --s)
        suffix[std::size_t(s)] = suffix[std::size_t(s) + 1] + log_pow2_minus1(in.m - in.r + s);
    double acc = q1_from_logz(in.m, in.r, logz[0]) + suffix[2];
    for (int t = 2; t <= in.r; ++t) {
        const int e = in.m - in.r + t;
        const double log_a = e * kLn2 + (std::ldexp(1.0, e) - 1.0) * logz[std::size_t(t) - 1];
        acc = logsumexp2(acc, log_a + suffix[std::size_t(t) + 1]);
    }
    return acc;
}

double order_threshold(int m, double z) {
    if (m < 2) throw std::invalid_argument("order_threshold: need m >= 2");
    if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("order_threshold: need 0 < Z < 1");
    return threshold_unchecked(m, z);
}

BoundReport make_bound_report(const BoundInputs& in) {
    check_inputs(in.m, in.r, in.z);
    return build_report(in.m, in.r, bhattacharyya_sequence(in), log_z_upper_seq(in));
}

BoundReport make_bound_report(int m, int r, const std::vector<double>& z_seq) {
    if (z_seq.size() != std::size_t(r))
        throw std::invalid_argument("make_bound_report: z_seq must have r entries");
    for (double z : z_seq)
        if (!(z > 0.0 && z < 1.0))
            throw std::invalid_argument("make_bound_report: each Z_i must be in (0, 1)");
    check_inputs(m, r, z_seq.back());
    std::vector<double> logz(z_seq.size());
    for (std::size_t i = 0; i < z_seq.size(); ++i) logz[i] = std::log(z_seq[i]);
    return build_report(m, r, z_seq, logz);
}

}  // namespace rmrpa
