#include <catch2/catch_amalgamated.hpp>

#include "jrp/gen.hpp"
#include "jrp/rng.hpp"
#include "jrp/tsp.hpp"

#include "helpers.hpp"

using jrp::KTspResult;
using jrp::RatioInstance;

TEST_CASE("subset order treats masks as ascending sequences") {
    CHECK(jrp::subset_lex_less(0b001u, 0b011u));  // {1} < {1,2}
    CHECK(jrp::subset_lex_less(0b011u, 0b010u));  // {1,2} < {2}
    CHECK_FALSE(jrp::subset_lex_less(0b010u, 0b011u));
    CHECK_FALSE(jrp::subset_lex_less(0b001u, 0b001u));
}

TEST_CASE("exact tour lengths") {
    auto line = testutil::line_metric(3);
    CHECK(jrp::tsp_exact(line, 0b111u) == Catch::Approx(6.0)); // out and back
    CHECK(jrp::tsp_exact(line, 0u) == 0.0);
    CHECK(jrp::tsp_exact(testutil::uniform_metric(2, 1.0), 0b11u) ==
          Catch::Approx(3.0));
}

TEST_CASE("all-tours table matches per-subset solves") {
    jrp::CounterRng rng(5, 0);
    auto m = jrp::random_closed_metric(rng, 5);
    auto table = jrp::tsp_all_tours(m);
    for (std::uint32_t s = 0; s < (1u << 5); ++s)
        CHECK(table[s] == Catch::Approx(jrp::tsp_exact(m, s)));
}

TEST_CASE("k-TSP with unit multiplicities on a line") {
    auto line = testutil::line_metric(2);
    KTspResult one = jrp::k_tsp_exact(line, {1, 1}, 1);
    CHECK(one.subset == 0b01u);
    CHECK(one.length == Catch::Approx(2.0));
    KTspResult two = jrp::k_tsp_exact(line, {1, 1}, 2);
    CHECK(two.subset == 0b11u);
    CHECK(two.length == Catch::Approx(4.0));
    KTspResult zero = jrp::k_tsp_exact(line, {1, 1}, 0);
    CHECK(zero.subset == 0u);
    CHECK(zero.length == 0.0);
    CHECK_THROWS(jrp::k_tsp_exact(line, {1, 1}, 3));
}

TEST_CASE("k-TSP length is nondecreasing in k") {
    jrp::CounterRng rng(6, 1);
    auto m = jrp::random_closed_metric(rng, 5);
    std::vector<long long> mult = {2, 1, 3, 1, 2};
    double prev = 0.0;
    for (long long k = 1; k <= 9; ++k) {
        double len = jrp::k_tsp_exact(m, mult, k).length;
        CHECK(len >= prev - 1e-12);
        prev = len;
    }
}

TEST_CASE("minimum ratio on a two-vertex line") {
    RatioInstance ri{testutil::line_metric(2), {1.0, 3.0}};
    auto res = jrp::min_ratio_exact(ri);
    // ratios: {a}: 2/1, {b}: 4/3, {a,b}: 4/4 = 1
    CHECK(res.subset == 0b11u);
    CHECK(res.ratio == Catch::Approx(1.0));
}

TEST_CASE("minimum ratio on the uniform triangle") {
    RatioInstance ri{testutil::uniform_metric(2, 1.0), {1.0, 1.0}};
    auto res = jrp::min_ratio_exact(ri);
    CHECK(res.subset == 0b11u);
    CHECK(res.ratio == Catch::Approx(1.5));
}

TEST_CASE("single-vertex ratio instance") {
    RatioInstance ri{testutil::line_metric(1), {2.0}};
    CHECK(jrp::min_ratio_exact(ri).ratio == Catch::Approx(1.0));
    CHECK(jrp::min_ratio_garg(ri).ratio == Catch::Approx(1.0));
}

TEST_CASE("all-zero rewards are rejected") {
    RatioInstance ri{testutil::line_metric(2), {0.0, 0.0}};
    CHECK_THROWS(jrp::min_ratio_exact(ri));
    CHECK_THROWS(jrp::min_ratio_garg(ri));
}

TEST_CASE("scaling wrapper stays close to exact") {
    RatioInstance line{testutil::line_metric(2), {1.0, 3.0}};
    CHECK(jrp::min_ratio_garg(line).ratio <= 3.0 * 1.0 + 1e-9);
    // n = 2 with exact k-TSP reproduces the optimum exactly, provided the
    // rewards fit the n^2-cell scaling grid (within a factor 4 of each other;
    // below that the smaller multiplicity floors to zero and the pair subset
    // is never offered to the k-TSP subroutine).
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
        jrp::CounterRng rng(41, stream);
        RatioInstance ri{jrp::random_closed_metric(rng, 2),
                         {rng.uniform(1.0, 4.0), rng.uniform(1.0, 4.0)}};
        double exact = jrp::min_ratio_exact(ri).ratio;
        double garg = jrp::min_ratio_garg(ri).ratio;
        CHECK(garg == Catch::Approx(exact).margin(1e-9));
    }
}

TEST_CASE("scaling wrapper within factor 3 on random metrics") {
    for (std::uint64_t stream = 0; stream < 100; ++stream) {
        jrp::CounterRng rng(42, stream);
        int n = 2 + static_cast<int>(stream % 7); // up to 8
        RatioInstance ri{jrp::random_closed_metric(rng, n), {}};
        ri.rewards.resize(n);
        for (double& a : ri.rewards) a = rng.uniform(0.1, 5.0);
        double exact = jrp::min_ratio_exact(ri).ratio;
        double garg = jrp::min_ratio_garg(ri).ratio;
        CHECK(garg >= exact - 1e-9);
        CHECK(garg <= 3.0 * exact + 1e-9);
    }
}
