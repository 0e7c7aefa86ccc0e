#include "rmrpa/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace rmrpa {

Codeword ml_decode_exhaustive(const RmCode& code, const LlrVector& L) {
    if (code.k > 24) throw std::invalid_argument("ml_decode_exhaustive: k > 24");
    if (L.size() != code.n) throw std::invalid_argument("ml_decode_exhaustive: LLR length");
    const std::uint64_t salt = llr_salt(L);
    Codeword best;
    double best_metric = HUGE_VAL;
    std::uint64_t best_hash = ~0ull, best_counter = ~0ull;
    for_each_codeword(code, [&](std::uint64_t counter, const Codeword& cw) {
        double metric = 0.0;
        for (std::size_t z = 0; z < code.n; ++z)
            if (cw.get(z)) metric += L[z];
        if (metric > best_metric) return;
        // metric ties resolve by the same salted hash on the message counter as
        // fht_decode, keeping the two decision rules identical
        const std::uint64_t h = tie_hash(salt, counter);
        if (metric < best_metric || h < best_hash || (h == best_hash && counter < best_counter)) {
            best_metric = metric;
            best = cw;
            best_hash = h;
            best_counter = counter;
        }
    });
    return best;
}

LlrVector naive_aggregate(const LlrVector& L, const std::vector<Codeword>& estimates,
                          double clamp) {
    const std::size_t n = L.size();
    if (estimates.size() != n - 1)
        throw std::invalid_argument("naive_aggregate: need one estimate per nonzero v");
    LlrVector out(n, 0.0);
    for (std::size_t z = 0; z < n; ++z) {
        double acc = 0.0;
        for (std::size_t v = 1; v < n; ++v) {
            // Rank of the coset {z, z^v} when cosets are listed by ascending
            // canonical representative: count smaller representatives directly.
            const std::size_t rep = std::min(z, z ^ v);
            std::size_t rank = 0;
            for (std::size_t p = 0; p < rep; ++p)
                if (p < (p ^ v)) ++rank;
            const double sgn = estimates[v - 1].get(rank) ? -1.0 : 1.0;
            acc += sgn * L[z ^ v];
        }
        acc /= double(n - 1);
        out[z] = acc > clamp ? clamp : (acc < -clamp ? -clamp : acc);
    }
    return out;
}

PairHistogram empirical_projected_channel(const DiscreteBms& ch, std::uint64_t samples,
                                          SplitMix64& rng) {
    if (samples < 10000)
        throw std::invalid_argument("empirical_projected_channel: need >= 1e4 samples");
    const std::size_t y_count = ch.p0.size();
    PairHistogram h;
    h.alphabet = y_count;
    h.counts0.assign(y_count * y_count, 0);
    h.counts1.assign(y_count * y_count, 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const int u1 = rng.next_double() < 0.5 ? 1 : 0;
        const int u2 = rng.next_double() < 0.5 ? 1 : 0;
        const int y1 = sample_index(ch, u1, rng);
        const int y2 = sample_index(ch, u2, rng);
        const std::size_t idx = std::size_t(y1) * y_count + std::size_t(y2);
        if (u1 ^ u2) {
            ++h.counts1[idx];
            ++h.samples1;
        } else {
            ++h.counts0[idx];
            ++h.samples0;
        }
    }

    const DiscreteBms exact = combine_minus(ch);
    double tv0 = 0.0, tv1 = 0.0;
    for (std::size_t i = 0; i < exact.p0.size(); ++i) {
        tv0 += std::abs(double(h.counts0[i]) / double(h.samples0) - exact.p0[i]);
        tv1 += std::abs(double(h.counts1[i]) / double(h.samples1) - exact.p1[i]);
    }
    h.tv_distance = std::max(tv0, tv1) / 2.0;
    return h;
}

}  // namespace rmrpa
