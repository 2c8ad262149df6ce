#include <catch2/catch_amalgamated.hpp>

#include "jrp/simplex.hpp"

using jrp::DenseSimplex;
using jrp::LpStatus;
using jrp::RowSense;

TEST_CASE("two-variable LP with inequality rows") {
    // min -3x - 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
    DenseSimplex lp({RowSense::LessEq, RowSense::LessEq, RowSense::LessEq},
                    {4.0, 12.0, 18.0});
    int x = lp.add_variable(-3.0, {{0, 1.0}, {2, 3.0}});
    int y = lp.add_variable(-5.0, {{1, 2.0}, {2, 2.0}});
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == Catch::Approx(-36.0));
    CHECK(lp.primal(x) == Catch::Approx(2.0));
    CHECK(lp.primal(y) == Catch::Approx(6.0));
}

TEST_CASE("equality rows need phase one") {
    // min x + 2y  s.t.  x + y = 3, x - y = 1
    DenseSimplex lp({RowSense::Equal, RowSense::Equal}, {3.0, 1.0});
    int x = lp.add_variable(1.0, {{0, 1.0}, {1, 1.0}});
    int y = lp.add_variable(2.0, {{0, 1.0}, {1, -1.0}});
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.primal(x) == Catch::Approx(2.0));
    CHECK(lp.primal(y) == Catch::Approx(1.0));
    CHECK(lp.objective() == Catch::Approx(4.0));
}

TEST_CASE("greater-equal rows and duals") {
    // min 2x + 3y  s.t.  x + y >= 4, x >= 1
    DenseSimplex lp({RowSense::GreaterEq, RowSense::GreaterEq}, {4.0, 1.0});
    int x = lp.add_variable(2.0, {{0, 1.0}, {1, 1.0}});
    int y = lp.add_variable(3.0, {{0, 1.0}});
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == Catch::Approx(8.0));
    CHECK(lp.primal(x) == Catch::Approx(4.0));
    CHECK(lp.primal(y) == Catch::Approx(0.0));
    // dual objective equals primal at optimality
    double dual_obj = 4.0 * lp.dual(0) + 1.0 * lp.dual(1);
    CHECK(dual_obj == Catch::Approx(8.0));
    // y's reduced cost is nonnegative at optimality
    CHECK(lp.reduced_cost(y) >= -1e-9);
}

TEST_CASE("infeasible system detected") {
    // x >= 2 and x <= 1 simultaneously
    DenseSimplex lp({RowSense::GreaterEq, RowSense::LessEq}, {2.0, 1.0});
    lp.add_variable(1.0, {{0, 1.0}, {1, 1.0}});
    CHECK(lp.solve() == LpStatus::Infeasible);
}

TEST_CASE("unbounded objective detected") {
    // min -x  s.t.  -x <= 1 (x free to grow)
    DenseSimplex lp({RowSense::LessEq}, {1.0});
    lp.add_variable(-1.0, {{0, -1.0}});
    CHECK(lp.solve() == LpStatus::Unbounded);
}

TEST_CASE("negative right-hand side is normalized") {
    // min x  s.t.  -x <= -2  (i.e. x >= 2)
    DenseSimplex lp({RowSense::LessEq}, {-2.0});
    int x = lp.add_variable(1.0, {{0, -1.0}});
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.primal(x) == Catch::Approx(2.0));
}

TEST_CASE("columns appended after solve enter on reoptimize") {
    // min 5x  s.t.  x + y = 2; then add y with cost 1.
    DenseSimplex lp({RowSense::Equal}, {2.0});
    int x = lp.add_variable(5.0, {{0, 1.0}});
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == Catch::Approx(10.0));
    int y = lp.add_variable(1.0, {{0, 1.0}});
    CHECK(lp.reduced_cost(y) < 0.0);
    REQUIRE(lp.reoptimize() == LpStatus::Optimal);
    CHECK(lp.objective() == Catch::Approx(2.0));
    CHECK(lp.primal(y) == Catch::Approx(2.0));
    CHECK(lp.primal(x) == Catch::Approx(0.0));
}

TEST_CASE("degenerate LP still terminates") {
    // several redundant rows sharing one optimum
    DenseSimplex lp({RowSense::LessEq, RowSense::LessEq, RowSense::Equal},
                    {1.0, 1.0, 1.0});
    int x = lp.add_variable(-1.0, {{0, 1.0}, {1, 1.0}, {2, 1.0}});
    lp.add_variable(0.0, {{0, 1.0}});
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.primal(x) == Catch::Approx(1.0));
}

TEST_CASE("zero-row LP is trivially optimal") {
    DenseSimplex lp({}, {});
    int x = lp.add_variable(3.0, {});
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == Catch::Approx(0.0));
    CHECK(lp.primal(x) == Catch::Approx(0.0));
}
