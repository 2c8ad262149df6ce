#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "jrp/covering.hpp"
#include "jrp/gen.hpp"
#include "jrp/lp.hpp"
#include "jrp/model.hpp"
#include "jrp/oracle.hpp"
#include "jrp/pipeline.hpp"
#include "jrp/rounding.hpp"
#include "jrp/tsp.hpp"

namespace jrp {

using nlohmann::json;

inline std::vector<int> subset_elements(std::uint32_t mask) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) out.push_back(i + 1);
    return out;
}

inline std::uint32_t subset_from_elements(const std::vector<int>& elems, int n) {
    std::uint32_t mask = 0;
    for (int e : elems) {
        if (e < 1 || e > n) throw std::invalid_argument("element out of range");
        mask |= 1u << (e - 1);
    }
    return mask;
}

/// Row-major (n+1)^2 matrix with vertex 0 as depot; n inferred from size.
inline Metric metric_from_flat(std::vector<double> matrix) {
    int side = 0;
    while (static_cast<std::size_t>(side) * side < matrix.size()) ++side;
    if (static_cast<std::size_t>(side) * side != matrix.size() || side < 1)
        throw std::invalid_argument("metric matrix must be square");
    return Metric::from_matrix(side - 1, std::move(matrix));
}

// ---- instance ----

inline json ordering_to_json(const OrderingCost& cost) {
    json params;
    switch (cost.family()) {
        case CostFamily::Additive:
            params = {{"k0", cost.additive_k0()}, {"k", cost.additive_k()}};
            break;
        case CostFamily::Cardinality:
            params = {{"g", cost.cardinality_g()}};
            break;
        case CostFamily::Tree: {
            json edges = json::array();
            const auto& par = cost.tree_parents();
            const auto& pw = cost.tree_parent_weights();
            for (std::size_t v = 1; v < par.size(); ++v)
                edges.push_back({{"u", par[v]}, {"v", static_cast<int>(v)},
                                 {"w", pw[v]}});
            params = {{"num_vertices", static_cast<int>(par.size())},
                      {"edges", edges},
                      {"element_vertex", cost.tree_element_vertex()}};
            break;
        }
        case CostFamily::Laminar: {
            json sets = json::array();
            for (const auto& s : cost.laminar_sets())
                sets.push_back({{"elements", s.elements}, {"weight", s.weight}});
            params = {{"sets", sets}};
            break;
        }
        case CostFamily::Table:
            params = {{"values", cost.table_values()}};
            break;
        case CostFamily::MetricTsp:
            params = {{"matrix", cost.metric().w}};
            break;
    }
    return {{"family", family_name(cost.family())}, {"params", params}};
}

inline OrderingCost ordering_from_json(const json& j, int n) {
    std::string family = j.at("family").get<std::string>();
    const json& p = j.at("params");
    if (family == "additive")
        return OrderingCost::additive(p.at("k0").get<double>(),
                                      p.at("k").get<std::vector<double>>());
    if (family == "cardinality")
        return OrderingCost::cardinality(p.at("g").get<std::vector<double>>());
    if (family == "tree") {
        std::vector<TreeEdge> edges;
        for (const auto& e : p.at("edges"))
            edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                             e.at("w").get<double>()});
        return OrderingCost::tree(p.at("num_vertices").get<int>(), std::move(edges),
                                  p.at("element_vertex").get<std::vector<int>>());
    }
    if (family == "laminar") {
        std::vector<LaminarSet> sets;
        for (const auto& s : p.at("sets"))
            sets.push_back({s.at("elements").get<std::vector<int>>(),
                            s.at("weight").get<double>()});
        return OrderingCost::laminar(n, std::move(sets));
    }
    if (family == "table")
        return OrderingCost::table(n, p.at("values").get<std::vector<double>>());
    if (family == "metric_tsp")
        return OrderingCost::metric_tsp(
            metric_from_flat(p.at("matrix").get<std::vector<double>>()));
    throw std::invalid_argument("unknown ordering family: " + family);
}

inline json holding_to_json(const HoldingModel& h) {
    switch (h.kind) {
        case HoldingKind::Polynomial:
            return {{"variant", "polynomial"},
                    {"alpha", h.alpha},
                    {"base_rates", h.base_rates}};
        case HoldingKind::Table:
            return {{"variant", "table"}, {"table", h.table}};
        case HoldingKind::Perishable:
            return {{"variant", "perishable"}, {"lifetime", h.lifetime}};
    }
    throw std::logic_error("unreachable");
}

inline HoldingModel holding_from_json(const json& j) {
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "polynomial")
        return HoldingModel::polynomial(
            j.at("alpha").get<double>(),
            j.at("base_rates").get<std::vector<std::vector<double>>>());
    if (variant == "table")
        return HoldingModel::from_table(
            j.at("table").get<std::vector<std::vector<std::vector<double>>>>());
    if (variant == "perishable")
        return HoldingModel::perishable(j.at("lifetime").get<int>());
    throw std::invalid_argument("unknown holding variant: " + variant);
}

inline json instance_to_json(const Instance& inst) {
    json demands = json::array();
    for (const auto& d : inst.demands)
        demands.push_back({{"i", d.element}, {"t", d.period}, {"d", d.quantity}});
    return {{"n", inst.num_elements},
            {"t", inst.horizon},
            {"demands", demands},
            {"holding", holding_to_json(inst.holding)},
            {"ordering", ordering_to_json(inst.ordering)}};
}

inline Instance instance_from_json(const json& j) {
    Instance inst;
    inst.num_elements = j.at("n").get<int>();
    inst.horizon = j.at("t").get<int>();
    for (const auto& d : j.at("demands"))
        inst.demands.push_back({d.at("i").get<int>(), d.at("t").get<int>(),
                                d.at("d").get<double>()});
    inst.holding = holding_from_json(j.at("holding"));
    inst.ordering = ordering_from_json(j.at("ordering"), inst.num_elements);
    auto problems = validate_instance(inst);
    if (!problems.empty())
        throw std::invalid_argument("invalid instance: " + problems.front());
    return inst;
}

// ---- LP solution ----

inline json lp_solution_to_json(const LPSolution& sol) {
    json x = json::array();
    for (const auto& e : sol.x)
        x.push_back({{"i", e.element}, {"t", e.period}, {"s", e.serve},
                     {"value", e.value}});
    json y = json::array();
    for (const auto& c : sol.y_columns)
        y.push_back({{"s", c.period}, {"subset", subset_elements(c.subset)},
                     {"value", c.value}});
    return {{"x", x},
            {"y", y},
            {"objective", sol.objective},
            {"ordering_part", sol.ordering_part},
            {"holding_part", sol.holding_part},
            {"gamma", sol.gamma},
            {"columns_generated", sol.columns_generated}};
}

inline LPSolution lp_solution_from_json(const json& j, int n) {
    LPSolution sol;
    for (const auto& e : j.at("x"))
        sol.x.push_back({e.at("i").get<int>(), e.at("t").get<int>(),
                         e.at("s").get<int>(), e.at("value").get<double>()});
    for (const auto& c : j.at("y"))
        sol.y_columns.push_back(
            {c.at("s").get<int>(),
             subset_from_elements(c.at("subset").get<std::vector<int>>(), n),
             c.at("value").get<double>()});
    sol.objective = j.at("objective").get<double>();
    sol.ordering_part = j.at("ordering_part").get<double>();
    sol.holding_part = j.at("holding_part").get<double>();
    sol.gamma = j.value("gamma", 1.0);
    sol.columns_generated = j.value("columns_generated", 0);
    return sol;
}

// ---- schedule / costs ----

inline json schedule_to_json(const Schedule& s) {
    json orders = json::array();
    for (const auto& [period, elems] : s.orders)
        orders.push_back({{"s", period}, {"elements", elems}});
    json assign = json::array();
    for (const auto& [key, period] : s.assignment)
        assign.push_back({{"i", key.first}, {"t", key.second}, {"s", period}});
    return {{"orders", orders}, {"assignment", assign}};
}

inline Schedule schedule_from_json(const json& j) {
    Schedule s;
    for (const auto& o : j.at("orders")) {
        auto elems = o.at("elements").get<std::vector<int>>();
        std::sort(elems.begin(), elems.end());
        s.orders[o.at("s").get<int>()] = std::move(elems);
    }
    for (const auto& a : j.at("assignment"))
        s.assignment[{a.at("i").get<int>(), a.at("t").get<int>()}] =
            a.at("s").get<int>();
    return s;
}

inline json cost_report_to_json(const CostReport& r) {
    json per_period = json::array();
    for (const auto& [s, f] : r.per_period_ordering)
        per_period.push_back({{"s", s}, {"cost", f}});
    json per_demand = json::array();
    for (const auto& [key, h] : r.per_demand_holding)
        per_demand.push_back({{"i", key.first}, {"t", key.second}, {"cost", h}});
    return {{"ordering_cost", r.ordering_cost},
            {"holding_cost", r.holding_cost},
            {"total", r.total},
            {"per_period_ordering", per_period},
            {"per_demand_holding", per_demand}};
}

// ---- rounding trace / audits ----

inline json trace_to_json(const RoundingTrace& trace) {
    json intervals = json::array();
    for (const auto& si : trace.intervals)
        intervals.push_back({{"i", si.element},
                             {"t", si.period},
                             {"s_prime", si.s_prime},
                             {"s_star", si.s_star},
                             {"width", si.nominal_width},
                             {"group", si.group}});
    json groups = json::array();
    for (const auto& go : trace.group_orders)
        groups.push_back(
            {{"group", go.group}, {"tau", go.tau}, {"elements", go.elements}});
    json serving = json::array();
    for (const auto& [key, tau] : trace.serving_grid)
        serving.push_back({{"i", key.first}, {"t", key.second}, {"tau", tau}});
    return {{"rho", trace.params.rho},
            {"alpha", trace.params.alpha},
            {"k", trace.params.k},
            {"widths", trace.params.widths},
            {"intervals", intervals},
            {"group_orders", groups},
            {"serving_grid", serving},
            {"schedule", schedule_to_json(trace.schedule)}};
}

inline json holding_audit_to_json(const HoldingAudit& a) {
    json rows = json::array();
    for (const auto& r : a.rows)
        rows.push_back({{"i", r.element},
                        {"t", r.period},
                        {"h_shadow", r.h_sprime},
                        {"h_stretched", r.h_sstar},
                        {"lp_mass", r.lp_mass},
                        {"shadow_ok", r.shadow_ok},
                        {"stretch_ok", r.stretch_ok}});
    return {{"rows", rows},
            {"algorithm_holding", a.algorithm_holding},
            {"lp_holding_part", a.lp_holding_part},
            {"stretch_factor", a.stretch_factor},
            {"max_shadow_ratio", a.max_shadow_ratio},
            {"max_stretch_ratio", a.max_stretch_ratio},
            {"aggregate_ok", a.aggregate_ok},
            {"passed", a.passed}};
}

inline json ordering_audit_to_json(const OrderingAudit& a) {
    json groups = json::array();
    for (const auto& g : a.groups)
        groups.push_back({{"group", g.group},
                          {"order_cost_sum", g.order_cost_sum},
                          {"bound", g.bound},
                          {"ok", g.ok}});
    return {{"covering_objective", a.covering_objective},
            {"lp_ordering_part", a.lp_ordering_part},
            {"algorithm_ordering", a.algorithm_ordering},
            {"doubled_y_feasible", a.doubled_y_feasible},
            {"cover_bound_ok", a.cover_bound_ok},
            {"groups", groups},
            {"window_mass_ok", a.window_mass_ok},
            {"aggregate_ok", a.aggregate_ok},
            {"aggregate_bound", a.aggregate_bound},
            {"max_group_ratio", a.max_group_ratio},
            {"max_cover_ratio", a.max_cover_ratio},
            {"passed", a.passed}};
}

inline json covering_to_json(const CoveringSolution& c) {
    json z = json::array();
    for (const auto& zc : c.z)
        z.push_back({{"s", zc.period}, {"subset", subset_elements(zc.subset)},
                     {"value", zc.value}});
    return {{"z", z},
            {"objective", c.objective},
            {"gamma", c.gamma},
            {"columns_generated", c.columns_generated}};
}

inline json exact_result_to_json(const ExactResult& r) {
    return {{"optimum", r.optimum}, {"schedule", schedule_to_json(r.schedule)}};
}

// ---- bench ----

inline json pipeline_row_to_json(const PipelineRow& r) {
    json j = {{"instance_id", r.instance_id},
              {"family", r.family},
              {"n", r.n},
              {"t", r.t},
              {"demands", r.demands},
              {"lp_objective", r.lp_objective},
              {"rounded_total", r.rounded_total},
              {"ratio_rounded_lp", r.ratio_rounded_lp},
              {"guarantee", r.guarantee},
              {"schedule_feasible", r.schedule_feasible},
              {"holding_passed", r.holding_passed},
              {"ordering_passed", r.ordering_passed}};
    if (r.exact_optimum) j["exact_optimum"] = *r.exact_optimum;
    if (r.ratio_rounded_exact) j["ratio_rounded_exact"] = *r.ratio_rounded_exact;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

inline json bench_summary_to_json(const BenchReport& report) {
    json j = {{"rows", report.rows.size()},
              {"max_ratio_lp", report.max_ratio_lp},
              {"mean_ratio_lp", report.mean_ratio_lp},
              {"failures", report.failures},
              {"all_audits_passed", report.all_audits_passed}};
    if (report.max_ratio_exact) j["max_ratio_exact"] = *report.max_ratio_exact;
    return j;
}

// ---- ratio TSP ----

inline RatioInstance ratio_instance_from_json(const json& j) {
    RatioInstance ri;
    ri.metric = metric_from_flat(j.at("matrix").get<std::vector<double>>());
    ri.rewards = j.at("rewards").get<std::vector<double>>();
    if (static_cast<int>(ri.rewards.size()) != ri.metric.n)
        throw std::invalid_argument("rewards size must match non-depot count");
    return ri;
}

inline json ratio_result_to_json(const RatioResult& r, const std::string& mode) {
    return {{"subset", subset_elements(r.subset)}, {"ratio", r.ratio},
            {"mode", mode}};
}

} // namespace jrp
