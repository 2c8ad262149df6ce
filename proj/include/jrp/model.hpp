#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jrp/setfn.hpp"

namespace jrp {

struct Demand {
    int element = 0;   // 1..N
    int period = 0;    // 1..T
    double quantity = 0.0;
};

enum class HoldingKind { Polynomial, Table, Perishable };

/// Per-unit holding cost h^i_st for serving demand (i,t) from an order at s.
struct HoldingModel {
    HoldingKind kind = HoldingKind::Polynomial;
    double alpha = 1.0;                                  // polynomial degree
    std::vector<std::vector<double>> base_rates;         // [element][period], 1-based shifted
    std::vector<std::vector<std::vector<double>>> table; // [element][t-1][s-1]
    int lifetime = 0;                                    // perishable window c

    static HoldingModel polynomial(double alpha,
                                   std::vector<std::vector<double>> base_rates) {
        if (alpha < 1.0) throw std::invalid_argument("holding: alpha < 1");
        HoldingModel h;
        h.kind = HoldingKind::Polynomial;
        h.alpha = alpha;
        h.base_rates = std::move(base_rates);
        return h;
    }

    static HoldingModel from_table(std::vector<std::vector<std::vector<double>>> t) {
        HoldingModel h;
        h.kind = HoldingKind::Table;
        h.table = std::move(t);
        return h;
    }

    static HoldingModel perishable(int lifetime) {
        if (lifetime < 0) throw std::invalid_argument("holding: lifetime < 0");
        HoldingModel h;
        h.kind = HoldingKind::Perishable;
        h.lifetime = lifetime;
        return h;
    }

    // Per-unit cost; infinity flags an out-of-window perishable serve.
    double unit(int i, int s, int t) const {
        switch (kind) {
            case HoldingKind::Polynomial:
                return std::pow(static_cast<double>(t - s), alpha) *
                       base_rates[i - 1][t - 1];
            case HoldingKind::Table:
                return table[i - 1][t - 1][s - 1];
            case HoldingKind::Perishable:
                return s < t - lifetime
                           ? std::numeric_limits<double>::infinity()
                           : 0.0;
        }
        throw std::logic_error("unreachable");
    }
};

struct Instance {
    int num_elements = 0;
    int horizon = 0;
    std::vector<Demand> demands;
    HoldingModel holding;
    OrderingCost ordering = OrderingCost::additive(0.0, {});

    const Demand* find_demand(int i, int t) const {
        for (const auto& d : demands)
            if (d.element == i && d.period == t) return &d;
        return nullptr;
    }

    /// Feasible serving periods for demand (i,t): [1, t], narrowed to the
    /// perishable window [t-c, t] when applicable.
    std::pair<int, int> serving_window(int t) const {
        int lo = 1;
        if (holding.kind == HoldingKind::Perishable)
            lo = std::max(1, t - holding.lifetime);
        return {lo, t};
    }
};

inline std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> out;
    if (inst.num_elements < 1) out.push_back("N must be positive");
    if (inst.horizon < 1) out.push_back("T must be positive");
    if (inst.ordering.num_elements() != inst.num_elements)
        out.push_back("ordering cost ground set does not match N");
    std::map<std::pair<int, int>, int> seen;
    for (const auto& d : inst.demands) {
        if (d.element < 1 || d.element > inst.num_elements)
            out.push_back("demand element out of range");
        if (d.period < 1 || d.period > inst.horizon)
            out.push_back("demand period out of range");
        if (!(d.quantity > 0.0)) out.push_back("demand quantity must be positive");
        if (++seen[{d.element, d.period}] > 1)
            out.push_back("duplicate demand (" + std::to_string(d.element) + "," +
                          std::to_string(d.period) + ")");
    }
    if (inst.holding.kind == HoldingKind::Polynomial) {
        if (inst.holding.alpha < 1.0) out.push_back("alpha must be >= 1");
        if (static_cast<int>(inst.holding.base_rates.size()) != inst.num_elements)
            out.push_back("base_rates must have one row per element");
        for (const auto& row : inst.holding.base_rates) {
            if (static_cast<int>(row.size()) != inst.horizon)
                out.push_back("base_rates row must have one entry per period");
            for (double h : row)
                if (!(h > 0.0)) out.push_back("base rate must be positive");
        }
    } else if (inst.holding.kind == HoldingKind::Table) {
        if (static_cast<int>(inst.holding.table.size()) != inst.num_elements)
            out.push_back("holding table must have one block per element");
        for (const auto& block : inst.holding.table) {
            if (static_cast<int>(block.size()) != inst.horizon) {
                out.push_back("holding table block must have one row per period");
                continue;
            }
            for (int t = 1; t <= inst.horizon; ++t) {
                const auto& row = block[t - 1];
                if (static_cast<int>(row.size()) < t) {
                    out.push_back("holding table row too short");
                    continue;
                }
                for (int s = 1; s <= t; ++s) {
                    if (row[s - 1] < 0.0) out.push_back("holding cost negative");
                    if (s >= 2 && row[s - 1] > row[s - 2] + 1e-12)
                        out.push_back("holding cost must be nonincreasing in s");
                }
            }
        }
    }
    return out;
}

/// H^i_st = d_it * h^i_st for a known demand point.
inline double evaluate_holding(const Instance& inst, int i, int s, int t) {
    if (s < 1 || s > t || t > inst.horizon)
        throw std::invalid_argument("evaluate_holding: need 1 <= s <= t <= T");
    const Demand* d = inst.find_demand(i, t);
    if (!d) throw std::invalid_argument("evaluate_holding: unknown demand point");
    double h = inst.holding.unit(i, s, t);
    if (std::isinf(h)) return h;
    return d->quantity * h;
}

struct Schedule {
    std::map<int, std::vector<int>> orders;              // period -> sorted elements
    std::map<std::pair<int, int>, int> assignment;       // (i,t) -> serving period

    bool order_contains(int s, int i) const {
        auto it = orders.find(s);
        if (it == orders.end()) return false;
        return std::binary_search(it->second.begin(), it->second.end(), i);
    }
};

inline std::vector<std::string> validate_schedule(const Instance& inst,
                                                  const Schedule& sched) {
    std::vector<std::string> out;
    for (const auto& d : inst.demands) {
        auto key = std::make_pair(d.element, d.period);
        auto it = sched.assignment.find(key);
        std::string tag = "demand (" + std::to_string(d.element) + "," +
                          std::to_string(d.period) + ")";
        if (it == sched.assignment.end()) {
            out.push_back(tag + " is unserved");
            continue;
        }
        int s = it->second;
        if (s < 1 || s > d.period) {
            out.push_back(tag + " served at invalid period " + std::to_string(s));
            continue;
        }
        if (!sched.order_contains(s, d.element))
            out.push_back("no order at period " + std::to_string(s) +
                          " contains element " + std::to_string(d.element) +
                          " for " + tag);
    }
    return out;
}

struct CostReport {
    double ordering_cost = 0.0;
    double holding_cost = 0.0;
    double total = 0.0;
    std::map<int, double> per_period_ordering;
    std::map<std::pair<int, int>, double> per_demand_holding;
};

class InfeasibleScheduleError : public std::runtime_error {
public:
    explicit InfeasibleScheduleError(std::vector<std::string> violations)
        : std::runtime_error("infeasible schedule: " +
                             (violations.empty() ? std::string("?") : violations.front())),
          violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

inline CostReport evaluate_schedule_cost(const Instance& inst, const Schedule& sched) {
    auto violations = validate_schedule(inst, sched);
    if (!violations.empty()) throw InfeasibleScheduleError(std::move(violations));
    CostReport report;
    for (const auto& [s, elements] : sched.orders) {
        if (elements.empty()) continue;
        std::uint32_t mask = 0;
        for (int i : elements) mask |= 1u << (i - 1);
        double f = inst.ordering.eval(mask);
        report.per_period_ordering[s] = f;
        report.ordering_cost += f;
    }
    for (const auto& d : inst.demands) {
        int s = sched.assignment.at({d.element, d.period});
        double h = evaluate_holding(inst, d.element, s, d.period);
        report.per_demand_holding[{d.element, d.period}] = h;
        report.holding_cost += h;
    }
    report.total = report.ordering_cost + report.holding_cost;
    return report;
}

} // namespace jrp
