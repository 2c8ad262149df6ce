#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "jrp/lp.hpp"
#include "jrp/rounding.hpp"

namespace jrp {

struct ZColumn {
    int period = 0;
    std::uint32_t subset = 0;
    double value = 0.0;
};

struct CoveringSolution {
    std::vector<ZColumn> z;
    double objective = 0.0;
    double gamma = 1.0;
    int columns_generated = 0;
};

/// Restricted master of the interval-covering relaxation: one >= 1 row per
/// demand, columns (s, S) covering every demand whose extended interval
/// contains s with i in S.
class CoveringMaster {
public:
    CoveringMaster(const Instance& inst, const std::vector<ShadowInterval>& intervals,
                   std::vector<double> f_table)
        : inst_(inst), intervals_(intervals), f_(std::move(f_table)) {
        if (intervals.size() != inst.demands.size())
            throw std::invalid_argument("covering: one interval per demand required");
        std::vector<RowSense> sense(intervals.size(), RowSense::GreaterEq);
        std::vector<double> rhs(intervals.size(), 1.0);
        lp_.emplace(std::move(sense), std::move(rhs));
    }

    bool add_column(int s, std::uint32_t subset) {
        if (!columns_.insert({s, subset}).second) return false;
        std::vector<std::pair<int, double>> coeffs;
        for (std::size_t qi = 0; qi < intervals_.size(); ++qi) {
            const auto& si = intervals_[qi];
            if (s < si.s_star || s > si.period) continue;
            if (subset & (1u << (si.element - 1)))
                coeffs.push_back({static_cast<int>(qi), 1.0});
        }
        int var = lp_->add_variable(f_[subset], coeffs);
        z_vars_.push_back({s, subset, var});
        return true;
    }

    void solve() {
        if (lp_->status() == LpStatus::NotSolved) {
            if (lp_->solve() != LpStatus::Optimal)
                throw std::runtime_error("covering master: not optimal");
        } else if (lp_->reoptimize() != LpStatus::Optimal) {
            throw std::runtime_error("covering master: reoptimize failed");
        }
    }

    double objective() const { return lp_->objective(); }

    /// Row duals; all nonnegative for the >= rows at optimality.
    std::vector<double> duals() const {
        std::vector<double> d(intervals_.size());
        for (std::size_t qi = 0; qi < intervals_.size(); ++qi) {
            double v = lp_->dual(static_cast<int>(qi));
            d[qi] = v > 0.0 ? v : 0.0;
        }
        return d;
    }

    CoveringSolution extract(double gamma, int columns_generated) const {
        CoveringSolution sol;
        sol.gamma = gamma;
        sol.columns_generated = columns_generated;
        for (const auto& [s, subset, var] : z_vars_) {
            double v = lp_->primal(var);
            if (v > 1e-12) {
                sol.z.push_back({s, subset, v});
                sol.objective += v * f_[subset];
            }
        }
        return sol;
    }

    const std::vector<double>& f_table() const { return f_; }

private:
    const Instance& inst_;
    const std::vector<ShadowInterval>& intervals_;
    std::vector<double> f_;
    std::optional<DenseSimplex> lp_;
    std::vector<std::tuple<int, std::uint32_t, int>> z_vars_;
    std::set<std::pair<int, std::uint32_t>> columns_;
};

/// Covering relaxation over the extended intervals, solved by column
/// generation.  Exact pricing whenever the family permits; garg mode only on
/// request for metric instances.
inline CoveringSolution solve_covering_lp(const Instance& inst,
                                          const std::vector<ShadowInterval>& intervals,
                                          PricingMode mode = PricingMode::ExactEnumeration,
                                          double tol = 1e-7, int max_columns = 10000) {
    check_pricing_mode(inst, mode);
    double gamma =
        mode == PricingMode::GargApprox ? garg_gamma(inst.num_elements) : 1.0;
    if (inst.demands.empty()) {
        CoveringSolution empty;
        empty.gamma = gamma;
        return empty;
    }
    CoveringMaster master(inst, intervals, build_f_table(inst.ordering));
    std::uint32_t full = (inst.num_elements >= 32)
                             ? ~0u
                             : ((1u << inst.num_elements) - 1);
    int generated = 0;
    for (int s = 1; s <= inst.horizon; ++s) {
        master.add_column(s, full);
        ++generated;
    }
    master.solve();
    while (true) {
        std::vector<double> duals = master.duals();
        bool added = false;
        for (int s = 1; s <= inst.horizon; ++s) {
            std::vector<double> rewards(inst.num_elements, 0.0);
            for (std::size_t qi = 0; qi < intervals.size(); ++qi) {
                const auto& si = intervals[qi];
                if (s >= si.s_star && s <= si.period)
                    rewards[si.element - 1] += duals[qi];
            }
            auto priced = price_subset(inst.ordering, master.f_table(), rewards,
                                       mode, tol);
            if (!priced) continue;
            if (master.add_column(s, priced->first)) {
                added = true;
                if (++generated > max_columns)
                    throw ColumnLimitError(max_columns, master.objective());
            }
        }
        if (!added) break;
        master.solve();
    }
    return master.extract(gamma, generated);
}

struct GroupAuditRow {
    int group = 0;
    double order_cost_sum = 0.0; // sum_j f(A_m^j)
    double bound = 0.0;          // 2 beta gamma * covering objective
    bool ok = true;
};

struct OrderingAudit {
    double covering_objective = 0.0;
    double lp_ordering_part = 0.0;
    double algorithm_ordering = 0.0; // sum over group orders of f(A_m^j)
    bool doubled_y_feasible = true;  // z = 2y satisfies every covering row
    bool cover_bound_ok = true;      // covering objective <= 2 gamma * LP ordering
    std::vector<GroupAuditRow> groups;
    bool window_mass_ok = true;      // per demand, z mass in the serving window >= 1
    bool aggregate_ok = true;        // algorithm ordering <= 4 beta gamma k * LP ordering
    double aggregate_bound = 0.0;
    double max_group_ratio = 0.0;
    double max_cover_ratio = 0.0;
    bool passed = true;
};

/// Numeric verification of the ordering-cost chain: doubled LP columns cover
/// the intervals, the cover optimum is within twice the LP ordering part, each
/// group's order costs are within 2*beta of the cover optimum, and the grand
/// total is within 4*beta*k of the LP ordering part.
inline OrderingAudit audit_ordering(const Instance& inst, const LPSolution& lp,
                                    const CoveringSolution& cover,
                                    const RoundingTrace& trace, double beta,
                                    double tol = 1e-6) {
    OrderingAudit audit;
    audit.covering_objective = cover.objective;
    audit.lp_ordering_part = lp.ordering_part;
    double gamma = cover.gamma;

    // (a) z = 2y feasibility and the factor-two bound on the cover optimum.
    for (std::size_t qi = 0; qi < inst.demands.size(); ++qi) {
        const auto& si = trace.intervals[qi];
        double mass = 0.0;
        for (const auto& yc : lp.y_columns) {
            if (yc.period < si.s_star || yc.period > si.period) continue;
            if (yc.subset & (1u << (si.element - 1))) mass += 2.0 * yc.value;
        }
        if (mass < 1.0 - tol) audit.doubled_y_feasible = false;
    }
    audit.cover_bound_ok =
        cover.objective <= 2.0 * gamma * lp.ordering_part + tol;
    if (lp.ordering_part > tol)
        audit.max_cover_ratio = cover.objective / (2.0 * gamma * lp.ordering_part);

    // Per-demand cover mass inside the serving window (tau_{j-1}, tau_{j+1}].
    for (std::size_t qi = 0; qi < inst.demands.size(); ++qi) {
        const auto& si = trace.intervals[qi];
        int tau = trace.serving_grid.at({si.element, si.period});
        long long w = trace.params.widths[si.group];
        long long lo = tau - w, hi = tau + w; // w = 0 collapses to {tau}
        if (si.group == 0) { lo = tau - 1; hi = tau; }
        double mass = 0.0;
        for (const auto& zc : cover.z) {
            if (zc.period <= lo || zc.period > hi) continue;
            if (zc.period < si.s_star || zc.period > si.period) continue;
            if (zc.subset & (1u << (si.element - 1))) mass += zc.value;
        }
        if (mass < 1.0 - tol) audit.window_mass_ok = false;
    }

    // (b) per-group order cost against the cover optimum.
    std::map<int, double> group_sum;
    for (const auto& go : trace.group_orders) {
        std::uint32_t mask = 0;
        for (int i : go.elements) mask |= 1u << (i - 1);
        group_sum[go.group] += inst.ordering.eval(mask);
    }
    for (const auto& [m, sum] : group_sum) {
        GroupAuditRow row;
        row.group = m;
        row.order_cost_sum = sum;
        row.bound = 2.0 * beta * gamma * cover.objective;
        row.ok = sum <= row.bound + tol;
        if (row.bound > tol)
            audit.max_group_ratio = std::max(audit.max_group_ratio, sum / row.bound);
        audit.groups.push_back(row);
        audit.algorithm_ordering += sum;
    }

    // (c) aggregate chain.
    audit.aggregate_bound =
        4.0 * beta * gamma * gamma * trace.params.k * lp.ordering_part;
    audit.aggregate_ok = audit.algorithm_ordering <= audit.aggregate_bound + tol;

    audit.passed = audit.doubled_y_feasible && audit.cover_bound_ok &&
                   audit.window_mass_ok && audit.aggregate_ok;
    for (const auto& g : audit.groups) audit.passed = audit.passed && g.ok;
    return audit;
}

} // namespace jrp
