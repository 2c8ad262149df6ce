#include <catch2/catch_amalgamated.hpp>

#include "jrp/gen.hpp"
#include "jrp/json_io.hpp"

#include "helpers.hpp"

using jrp::Instance;

namespace {

void check_roundtrip(const Instance& inst) {
    auto j = jrp::instance_to_json(inst);
    Instance back = jrp::instance_from_json(j);
    CHECK(jrp::instance_to_json(back).dump() == j.dump());
}

} // namespace

TEST_CASE("instance serialization round-trips for every family") {
    check_roundtrip(testutil::instance_a());

    Instance card = testutil::instance_a();
    card.ordering = jrp::OrderingCost::cardinality({0.0, 3.0, 5.0});
    check_roundtrip(card);

    Instance tree = testutil::instance_a();
    tree.ordering =
        jrp::OrderingCost::tree(3, {{0, 1, 2.0}, {1, 2, 3.0}}, {1, 2});
    check_roundtrip(tree);

    Instance lam = testutil::instance_a();
    lam.ordering = jrp::OrderingCost::laminar(2, {{{1}, 1.0}, {{1, 2}, 4.0}});
    check_roundtrip(lam);

    Instance table = testutil::instance_a();
    table.ordering = jrp::OrderingCost::table(2, {0.0, 1.0, 1.0, 1.5});
    check_roundtrip(table);

    Instance tsp = testutil::instance_a();
    tsp.ordering = jrp::OrderingCost::metric_tsp(testutil::line_metric(2));
    check_roundtrip(tsp);
}

TEST_CASE("holding variants round-trip") {
    Instance per = testutil::instance_a();
    per.holding = jrp::HoldingModel::perishable(1);
    check_roundtrip(per);

    Instance tab = testutil::instance_a();
    tab.holding = jrp::HoldingModel::from_table(
        {{{0.5}, {0.4, 0.2}, {0.3, 0.2, 0.1}},
         {{0.5}, {0.4, 0.2}, {0.3, 0.2, 0.1}}});
    check_roundtrip(tab);
}

TEST_CASE("instance schema uses the documented field names") {
    auto j = jrp::instance_to_json(testutil::instance_a());
    CHECK(j.contains("n"));
    CHECK(j.contains("t"));
    CHECK(j.contains("demands"));
    CHECK(j["demands"][0].contains("i"));
    CHECK(j["demands"][0].contains("d"));
    CHECK(j["holding"].contains("variant"));
    CHECK(j["ordering"].contains("family"));
    CHECK(j["ordering"].contains("params"));
}

TEST_CASE("invalid instances are rejected at parse time") {
    auto j = jrp::instance_to_json(testutil::instance_a());
    j["demands"][0]["i"] = 9; // out of range
    CHECK_THROWS(jrp::instance_from_json(j));
}

TEST_CASE("LP solution serialization round-trips") {
    Instance inst = testutil::instance_a();
    auto sol = jrp::solve_lp(inst, jrp::PricingMode::ExactEnumeration);
    auto j = jrp::lp_solution_to_json(sol);
    auto back = jrp::lp_solution_from_json(j, inst.num_elements);
    CHECK(jrp::lp_solution_to_json(back).dump() == j.dump());
}

TEST_CASE("schedule serialization round-trips") {
    jrp::Schedule s;
    s.orders[2] = {1, 2};
    s.assignment[{1, 2}] = 2;
    s.assignment[{2, 3}] = 2;
    auto j = jrp::schedule_to_json(s);
    auto back = jrp::schedule_from_json(j);
    CHECK(jrp::schedule_to_json(back).dump() == j.dump());
}

TEST_CASE("metric matrices must be square and metric") {
    CHECK_THROWS(jrp::metric_from_flat({0.0, 1.0, 1.0}));
    CHECK_THROWS(jrp::metric_from_flat({0.0, 5.0, 5.0, 0.0, 0.0, 1.0,
                                        5.0, 1.0, 0.0})); // asymmetric
}
