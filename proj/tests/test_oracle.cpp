#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmrpa/oracle.hpp"
#include "rmrpa/rng.hpp"

using namespace rmrpa;

TEST_CASE("ml_decode_exhaustive basics") {
    const RmCode code = new_rm_code(3, 1);
    CHECK_FALSE(ml_decode_exhaustive(code, LlrVector(8, 1.0)).any());
    CHECK(ml_decode_exhaustive(code, LlrVector(8, -1.0)).weight() == 8);
    CHECK_THROWS_AS(ml_decode_exhaustive(new_rm_code(5, 5), LlrVector(32, 1.0)),  // k = 32
                    std::invalid_argument);
    CHECK_THROWS_AS(ml_decode_exhaustive(code, LlrVector(4, 1.0)), std::invalid_argument);
}

TEST_CASE("ml_decode_exhaustive on RM(2,2): hand-checked instance") {
    // k = 4, 16 codewords; metric(c) = sum of L over set bits of c. With
    // L = (1.0, -2.0, 0.5, -0.25) the minimizing codeword sets exactly the
    // negative-LLR coordinates: bits 1 and 3, i.e. 0101 (metric -2.25); RM(2,2)
    // is the full space so that word is reachable.
    const RmCode code = new_rm_code(2, 2);
    const LlrVector L{1.0, -2.0, 0.5, -0.25};
    CHECK(ml_decode_exhaustive(code, L).to_bit_string() == "0101");
}

TEST_CASE("ml_decode_exhaustive agrees with a per-instance direct minimization") {
    const RmCode code = new_rm_code(4, 2);
    SplitMix64 rng(7);
    for (int it = 0; it < 25; ++it) {
        LlrVector L(code.n);
        for (double& x : L) x = rng.next_gaussian();
        double best = HUGE_VAL;
        Codeword best_cw;
        for (const Codeword& cw : all_codewords(code)) {
            double metric = 0.0;
            for (std::size_t z = 0; z < code.n; ++z)
                if (cw.get(z)) metric += L[z];
            if (metric < best) {
                best = metric;
                best_cw = cw;
            }
        }
        CHECK(ml_decode_exhaustive(code, L) == best_cw);
    }
}

TEST_CASE("naive_aggregate matches aggregate on random instances") {
    const std::size_t n = 16;
    SplitMix64 rng(808);
    for (int it = 0; it < 100; ++it) {
        LlrVector L(n);
        for (double& x : L) x = (rng.next_double() - 0.5) * 30.0;
        std::vector<Codeword> est;
        for (std::size_t v = 1; v < n; ++v) {
            Codeword cw(n / 2);
            for (std::size_t j = 0; j < n / 2; ++j) cw.set(j, rng.next() & 1);
            est.push_back(std::move(cw));
        }
        const LlrVector a = aggregate(L, est, kDefaultLlrClamp);
        const LlrVector b = naive_aggregate(L, est, kDefaultLlrClamp);
        REQUIRE(a.size() == b.size());
        for (std::size_t z = 0; z < n; ++z)
            CHECK(a[z] == doctest::Approx(b[z]).epsilon(1e-12));
    }
}

TEST_CASE("naive_aggregate: constant input, zero estimates") {
    const std::size_t n = 8;
    const std::vector<Codeword> est(n - 1, Codeword(n / 2));
    for (double x : naive_aggregate(LlrVector(n, 2.5), est))
        CHECK(x == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("empirical projected channel: BSC(0.2)") {
    SplitMix64 rng(1234);
    const PairHistogram h = empirical_projected_channel(to_discrete(make_bsc(0.2)), 100000, rng);
    CHECK(h.tv_distance <= 0.02);
    CHECK(h.samples0 + h.samples1 == 100000);

    // parity-flip rate: pairs whose XOR disagrees with the input parity
    std::uint64_t flips = 0;
    for (int y1 = 0; y1 < 2; ++y1)
        for (int y2 = 0; y2 < 2; ++y2) {
            const std::size_t idx = std::size_t(y1) * 2 + std::size_t(y2);
            if ((y1 ^ y2) == 1) flips += h.counts0[idx];
            if ((y1 ^ y2) == 0) flips += h.counts1[idx];
        }
    const double rate = double(flips) / 100000.0;
    CHECK(std::abs(rate - 0.32) < 3.0 * std::sqrt(0.32 * 0.68 / 100000.0));
}

TEST_CASE("empirical projected channel: near-deterministic limit") {
    SplitMix64 rng(55);
    const PairHistogram h = empirical_projected_channel(to_discrete(make_bsc(1e-9)), 10000, rng);
    // all mass on agreeing pairs: parity-0 pairs (0,0)/(1,1), parity-1 pairs (0,1)/(1,0)
    CHECK(h.counts0[0] + h.counts0[3] == h.samples0);
    CHECK(h.counts1[1] + h.counts1[2] == h.samples1);
    CHECK(h.tv_distance < 0.02);
}

TEST_CASE("empirical projected channel: BEC(0.5) erased-pair mass") {
    SplitMix64 rng(77);
    const std::uint64_t samples = 100000;
    const PairHistogram h = empirical_projected_channel(to_discrete(make_bec(0.5)), samples, rng);
    // a pair is parity-uninformative unless both uses are unerased: mass 1 - (1-eps)^2
    std::uint64_t uninformative = 0;
    for (int y1 = 0; y1 < 3; ++y1)
        for (int y2 = 0; y2 < 3; ++y2)
            if (y1 == 2 || y2 == 2) {
                const std::size_t idx = std::size_t(y1) * 3 + std::size_t(y2);
                uninformative += h.counts0[idx] + h.counts1[idx];
            }
    const double frac = double(uninformative) / double(samples);
    CHECK(std::abs(frac - 0.75) < 3.0 * std::sqrt(0.75 * 0.25 / double(samples)));

    CHECK_THROWS_AS(empirical_projected_channel(to_discrete(make_bec(0.5)), 100, rng),
                    std::invalid_argument);
}
