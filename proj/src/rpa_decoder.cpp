#include "rmrpa/rpa_decoder.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace rmrpa {

int default_iteration_count(int m) { return (m + 1) / 2; }

double boxplus(double a, double b) {
    const double mag = std::min(std::abs(a), std::abs(b));
    const double signed_mag = ((a < 0.0) != (b < 0.0)) ? -mag : mag;
    return signed_mag + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

namespace {

int log2_of_pow2(std::size_t n, const char* what) {
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument(std::string(what) + ": length must be a power of two");
    return std::countr_zero(n);
}

// Position of a canonical coset representative (bit h cleared) in the squeezed
// index space with bit h removed.
inline std::size_t squeeze_bit(std::size_t c, int h) {
    const std::size_t low = c & ((std::size_t(1) << h) - 1);
    return ((c >> (h + 1)) << h) | low;
}

inline std::size_t unsqueeze_bit(std::size_t j, int h) {
    const std::size_t low = j & ((std::size_t(1) << h) - 1);
    return ((j >> h) << (h + 1)) | low;
}

inline int top_bit(std::uint32_t v) { return 31 - std::countl_zero(v); }

std::uint32_t bit_reverse(std::uint32_t x, int bits) {
    std::uint32_t r = 0;
    for (int i = 0; i < bits; ++i) r |= ((x >> i) & 1u) << (bits - 1 - i);
    return r;
}

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t llr_salt(const LlrVector& L) {
    std::uint64_t s = 0x6A09E667F3BCC909ull;
    for (double x : L) s = mix64(s ^ std::bit_cast<std::uint64_t>(x)) + 0x9E3779B97F4A7C15ull;
    return s;
}

std::uint64_t tie_hash(std::uint64_t salt, std::uint64_t candidate_counter) {
    return mix64(salt ^ (candidate_counter * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull));
}

std::size_t coset_index(std::size_t z, std::uint32_t v) {
    const int h = top_bit(v);
    const std::size_t c = (z >> h) & 1 ? (z ^ v) : z;  // clear bit h -> min(z, z^v)
    return squeeze_bit(c, h);
}

LlrVector project(const LlrVector& L, std::uint32_t v) {
    const std::size_t n = L.size();
    log2_of_pow2(n, "project");
    if (v == 0 || v >= n) throw std::invalid_argument("project: v must be in [1, 2^m)");
    const int h = top_bit(v);
    LlrVector out(n / 2);
    for (std::size_t j = 0; j < out.size(); ++j) {
        const std::size_t z = unsqueeze_bit(j, h);
        out[j] = boxplus(L[z], L[z ^ v]);
    }
    return out;
}

FhtResult fht_decode(const LlrVector& L) {
    const std::size_t n = L.size();
    const int m = log2_of_pow2(n, "fht_decode");
    if (m < 1) throw std::invalid_argument("fht_decode: need length >= 2");

    // In-place Walsh-Hadamard transform: w[t] = sum_p L[p] * (-1)^popcount(p & t).
    std::vector<double> w(L.begin(), L.end());
    for (std::size_t gap = 1; gap < n; gap <<= 1)
        for (std::size_t i = 0; i < n; i += gap << 1)
            for (std::size_t j = i; j < i + gap; ++j) {
                const double x = w[j], y = w[j + gap];
                w[j] = x + y;
                w[j + gap] = x - y;
            }

    // The transform index t packs s_1 at the top bit (point order); the reported
    // s packs s_1 at bit 0, making sigma_bit + 2s the candidate's message counter.
    const std::uint64_t salt = llr_salt(L);
    FhtResult best;
    best.score = -HUGE_VAL;
    std::uint32_t best_t = 0;
    std::uint64_t best_hash = ~0ull, best_counter = ~0ull;
    for (std::uint32_t s = 0; s < n; ++s) {
        const std::uint32_t t = bit_reverse(s, m);
        for (const int sigma : {+1, -1}) {
            const double score = sigma * w[t];
            if (score < best.score) continue;
            const std::uint64_t counter = (sigma == -1 ? 1u : 0u) + 2ull * s;
            const std::uint64_t h = tie_hash(salt, counter);
            if (score > best.score || h < best_hash ||
                (h == best_hash && counter < best_counter)) {
                best.score = score;
                best.sigma = sigma;
                best.s = s;
                best_t = t;
                best_hash = h;
                best_counter = counter;
            }
        }
    }
    best.codeword = Codeword(n);
    for (std::size_t p = 0; p < n; ++p) {
        const int chi = (std::popcount(p & std::size_t(best_t)) & 1) ? -1 : 1;
        best.codeword.set(p, best.sigma * chi == -1);
    }
    return best;
}

LlrVector aggregate(const LlrVector& L, const std::vector<Codeword>& estimates, double clamp) {
    const std::size_t n = L.size();
    log2_of_pow2(n, "aggregate");
    if (estimates.size() != n - 1)
        throw std::invalid_argument("aggregate: need one estimate per nonzero v");
    LlrVector out(n, 0.0);
    for (std::uint32_t v = 1; v < n; ++v) {
        const Codeword& est = estimates[v - 1];
        if (est.size() != n / 2)
            throw std::invalid_argument("aggregate: estimate length mismatch for some v");
        const int h = top_bit(v);
        for (std::size_t j = 0; j < n / 2; ++j) {
            const std::size_t z = unsqueeze_bit(j, h);
            const double sgn = est.get(j) ? -1.0 : 1.0;
            out[z] += sgn * L[z ^ v];
            out[z ^ v] += sgn * L[z];
        }
    }
    const double scale = 1.0 / double(n - 1);
    for (double& x : out) {
        x *= scale;
        x = x > clamp ? clamp : (x < -clamp ? -clamp : x);
    }
    return out;
}

Codeword hard_decision(const LlrVector& L) {
    Codeword cw(L.size());
    for (std::size_t z = 0; z < L.size(); ++z)
        if (L[z] < 0.0) cw.set(z, true);
    return cw;
}

Codeword rpa_decode(const RmCode& code, const LlrVector& L, const DecoderConfig& cfg) {
    if (code.r < 1) throw std::invalid_argument("rpa_decode: need r >= 1");
    if (L.size() != code.n) throw std::invalid_argument("rpa_decode: LLR length != 2^m");
    if (cfg.n_max < 1) throw std::invalid_argument("rpa_decode: n_max must be >= 1");
    for (double x : L)
        if (!std::isfinite(x)) throw std::invalid_argument("rpa_decode: non-finite LLR");
    if (code.r == 1) return fht_decode(L).codeword;

    const RmCode child = new_rm_code(code.m - 1, code.r - 1);
    std::vector<Codeword> estimates(code.n - 1);
    LlrVector cur = L;
    for (int iter = 0; iter < cfg.n_max; ++iter) {
        for (std::uint32_t v = 1; v < code.n; ++v)
            estimates[v - 1] = rpa_decode(child, project(cur, v), cfg);
        LlrVector next = aggregate(cur, estimates, cfg.llr_clamp);
        const bool fixed_point = hard_decision(next) == hard_decision(cur);
        cur = std::move(next);
        if (fixed_point) break;
    }
    return hard_decision(cur);
}

}  // namespace rmrpa
