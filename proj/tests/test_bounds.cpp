#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmrpa/bms_channel.hpp"
#include "rmrpa/bounds.hpp"

using namespace rmrpa;

TEST_CASE("bhattacharyya sequence") {
    const auto z = bhattacharyya_sequence(BoundInputs{8, 3, 0.5});
    REQUIRE(z.size() == 3);
    CHECK(z[2] == 0.5);                                   // i = r
    CHECK(z[1] == doctest::Approx(0.75).epsilon(1e-15));  // 1 - 0.5^2
    CHECK(z[0] == doctest::Approx(0.9375).epsilon(1e-15));

    // accurate near Z -> 1: 1 - (1-Z)^2 with tiny 1-Z
    const auto near_one = bhattacharyya_sequence(BoundInputs{8, 2, 1.0 - 1e-5});
    CHECK(1.0 - near_one[0] == doctest::Approx(1e-10).epsilon(1e-4));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(bhattacharyya_sequence(BoundInputs{3, 0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(bhattacharyya_sequence(BoundInputs{3, 4, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(q1_log_bound(BoundInputs{3, 2, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(q1_log_bound(BoundInputs{3, 2, 1.0}), std::invalid_argument);
}

TEST_CASE("q1 bound: frozen values") {
    // m = r: exponent 2^0 = 1, value ln(3) + ln(Z_1); here Z_1 = 1 - 0.7^2
    CHECK(q1_log_bound(BoundInputs{2, 2, 0.3}) ==
          doctest::Approx(std::log(3.0) + std::log(0.51)).epsilon(1e-13));

    // m=10, r=2, Z chosen so Z_1 = 0.5: ln(1023) + 256 ln(1/2)
    const double z_for_half = 1.0 - std::sqrt(0.5);
    CHECK(q1_log_bound(BoundInputs{10, 2, z_for_half}) ==
          doctest::Approx(-170.51518345739437).epsilon(1e-12));

    // monotone in Z at fixed (m, r)
    double prev = -HUGE_VAL;
    for (double z = 0.05; z < 1.0; z += 0.05) {
        const double q = q1_log_bound(BoundInputs{10, 2, z});
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("recurrence: r = 1 gives nothing beyond q1") {
    CHECK(q_recurrence_log(BoundInputs{6, 1, 0.2}).empty());
    CHECK(unrolled_log_bound(BoundInputs{6, 1, 0.2}) ==
          doctest::Approx(q1_log_bound(BoundInputs{6, 1, 0.2})).epsilon(1e-15));
}

TEST_CASE("recurrence at r = 2 against an independently evaluated instance") {
    // m=6, Z=0.2: Z_1 = 0.36, q1 = 63 * 0.36^16, q2 = 64 Z^63 + 63 q1;
    // reference numbers computed with 40-digit arithmetic.
    const BoundInputs in{6, 2, 0.2};
    CHECK(q1_log_bound(in) == doctest::Approx(-12.203285234120169).epsilon(1e-13));
    const auto rec = q_recurrence_log(in);
    REQUIRE(rec.size() == 1);
    CHECK(rec[0] == doctest::Approx(-8.0601505077286365).epsilon(1e-13));
    // depth-one unroll is the same single term
    CHECK(unrolled_log_bound(in) == doctest::Approx(rec[0]).epsilon(1e-15));
}

TEST_CASE("recurrence and unrolled bound agree over a parameter grid") {
    const double zs[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    int zi = 0;
    for (int m : {6, 8, 10, 12, 14, 16, 18, 20}) {
        for (int r : {2, 3, 4}) {
            const BoundInputs in{m, r, zs[zi++ % 5]};
            const auto rec = q_recurrence_log(in);
            const double unrolled = unrolled_log_bound(in);
            CHECK(std::abs(rec.back() - unrolled) <= 1e-9 * std::abs(unrolled));
        }
    }
}

TEST_CASE("bound evaluators are monotone in Z") {
    for (int m : {6, 12, 20}) {
        for (int r : {2, 3}) {
            double prev = -HUGE_VAL;
            for (double z = 0.1; z < 0.95; z += 0.1) {
                const double q = unrolled_log_bound(BoundInputs{m, r, z});
                CHECK(q >= prev - 1e-12);
                prev = q;
            }
        }
    }
}

TEST_CASE("vanishing trend in m below the threshold") {
    // r = 2, Z = 0.3 keeps r well under r*(m, Z) - 1 on this grid.
    double prev = HUGE_VAL;
    for (int m : {12, 16, 20, 24}) {
        CHECK(order_threshold(m, 0.3) - 1.0 > 2.0);
        const double q = unrolled_log_bound(BoundInputs{m, 2, 0.3});
        CHECK(q < prev);
        prev = q;
    }
}

TEST_CASE("theorem threshold") {
    // lambda = 1 at Z = 1 - 1/e, so r* = log2(m) exactly
    const double z_unit_lambda = 1.0 - std::exp(-1.0);
    CHECK(order_threshold(8, z_unit_lambda) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(order_threshold(128, 0.6) == doctest::Approx(7.1261226680892409).epsilon(1e-12));
    // decreasing in Z
    double prev = HUGE_VAL;
    for (double z = 0.1; z < 0.95; z += 0.1) {
        const double t = order_threshold(64, z);
        CHECK(t < prev);
        prev = t;
    }
    CHECK_THROWS_AS(order_threshold(1, 0.5), std::invalid_argument);
}

TEST_CASE("iterated combining stays under the unrolled Bhattacharyya bound") {
    for (double p : {0.05, 0.2, 0.4}) {
        DiscreteBms w = to_discrete(make_bsc(p));
        const double z0 = bhattacharyya(w);
        for (int k = 1; k <= 4; ++k) {
            w = merge_equivalent_outputs(combine_minus(w));
            const double cap = -std::expm1(std::ldexp(std::log1p(-z0), k));
            CHECK(bhattacharyya(w) <= cap + 1e-12);
        }
    }
}

TEST_CASE("bound report") {
    const BoundReport rep = make_bound_report(BoundInputs{6, 2, 0.2});
    CHECK(rep.z == 0.2);
    REQUIRE(rep.z_seq.size() == 2);
    CHECK(rep.z_seq[0] == doctest::Approx(0.36));
    CHECK(rep.n_seq == std::vector<double>{32.0, 64.0});
    CHECK(rep.log_q_r == doctest::Approx(-8.0601505077286365).epsilon(1e-13));
    CHECK(rep.q_r_clamped == doctest::Approx(std::exp(rep.log_q_r)));
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.r_below_threshold);  // r* (6, 0.2) ~ 4.75
    REQUIRE(rep.log_a_terms.size() == 1);
    REQUIRE(rep.log_b_terms.size() == 1);
    CHECK(rep.log_b_terms[0] == doctest::Approx(std::log(63.0)).epsilon(1e-14));

    const BoundReport vac = make_bound_report(BoundInputs{6, 5, 0.9});
    CHECK(vac.vacuous);
    CHECK(vac.q_r_clamped == 1.0);
    CHECK_FALSE(vac.r_below_threshold);

    // explicit (exact) Z sequence mode: exact Z_i <= lemma Z_i gives a tighter bound
    const auto exact_seq = exact_bhattacharyya_sequence(to_discrete(make_bsc(0.05)), 2);
    const double lemma_z = bhattacharyya(make_bsc(0.05));
    const BoundReport exact_rep = make_bound_report(6, 2, exact_seq);
    const BoundReport lemma_rep = make_bound_report(BoundInputs{6, 2, lemma_z});
    CHECK(exact_rep.log_q_r <= lemma_rep.log_q_r + 1e-12);
    CHECK_THROWS_AS(make_bound_report(6, 2, std::vector<double>{0.5}), std::invalid_argument);
}
