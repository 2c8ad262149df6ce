#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jrp/model.hpp"
#include "jrp/simplex.hpp"
#include "jrp/tsp.hpp"

namespace jrp {

enum class PricingMode { ExactEnumeration, ExactTspDp, GargApprox };

inline const char* pricing_name(PricingMode m) {
    switch (m) {
        case PricingMode::ExactEnumeration: return "exact";
        case PricingMode::ExactTspDp: return "tsp-dp";
        case PricingMode::GargApprox: return "garg";
    }
    return "?";
}

struct XEntry {
    int element = 0, period = 0, serve = 0; // x^i_{serve, period}
    double value = 0.0;
};

struct YColumn {
    int period = 0;
    std::uint32_t subset = 0;
    double value = 0.0;
};

struct LPSolution {
    std::vector<XEntry> x;
    std::vector<YColumn> y_columns;
    double objective = 0.0;
    double ordering_part = 0.0;
    double holding_part = 0.0;
    double gamma = 1.0; // pricing guarantee
    int columns_generated = 0;

    std::map<std::tuple<int, int, int>, double> x_map() const {
        std::map<std::tuple<int, int, int>, double> m;
        for (const auto& e : x) m[{e.element, e.period, e.serve}] = e.value;
        return m;
    }
};

/// Duals of the relaxation: b per demand (serving constraint) and
/// b_bar >= 0 per (demand, s) linking constraint, indexed in instance demand
/// order.
struct DualVector {
    std::vector<double> b;
    std::vector<std::map<int, double>> b_bar; // per demand: s -> value
};

class ColumnLimitError : public std::runtime_error {
public:
    ColumnLimitError(int limit, double best_objective)
        : std::runtime_error("column generation exceeded " + std::to_string(limit) +
                             " columns; best objective " +
                             std::to_string(best_objective)),
          best_objective_(best_objective) {}
    double best_objective() const { return best_objective_; }

private:
    double best_objective_;
};

/// f over every subset of the ground set; Held-Karp table for metric TSP.
inline std::vector<double> build_f_table(const OrderingCost& cost) {
    int n = cost.num_elements();
    if (cost.family() == CostFamily::MetricTsp) return tsp_all_tours(cost.metric());
    if (n > 16) throw std::invalid_argument("f table: N > 16");
    std::vector<double> f(std::size_t{1} << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) f[mask] = cost.eval(mask);
    return f;
}

/// Restricted master of the time-indexed relaxation: all x variables (with
/// perishable windows encoded as variable omission) and an explicit set of
/// y columns.
class RestrictedMaster {
public:
    explicit RestrictedMaster(const Instance& inst,
                              std::vector<double> f_table)
        : inst_(inst), f_(std::move(f_table)) {
        int q = 0;
        std::vector<RowSense> sense;
        std::vector<double> rhs;
        for (const auto& d : inst.demands) {
            auto [lo, hi] = inst.serving_window(d.period);
            DemandRows rows;
            rows.eq_row = static_cast<int>(sense.size());
            sense.push_back(RowSense::Equal);
            rhs.push_back(1.0);
            for (int s = lo; s <= hi; ++s) {
                rows.link_row[s] = static_cast<int>(sense.size());
                sense.push_back(RowSense::LessEq); // x - sum_y <= 0
                rhs.push_back(0.0);
            }
            demand_rows_.push_back(rows);
            ++q;
        }
        lp_.emplace(std::move(sense), std::move(rhs));
        // x variables
        for (std::size_t qi = 0; qi < inst.demands.size(); ++qi) {
            const auto& d = inst.demands[qi];
            auto [lo, hi] = inst.serving_window(d.period);
            for (int s = lo; s <= hi; ++s) {
                double h = evaluate_holding(inst, d.element, s, d.period);
                int var = lp_->add_variable(
                    h, {{demand_rows_[qi].eq_row, 1.0},
                        {demand_rows_[qi].link_row.at(s), 1.0}});
                x_vars_.push_back({static_cast<int>(qi), s, var});
            }
        }
    }

    bool has_column(int s, std::uint32_t subset) const {
        return columns_.count({s, subset}) > 0;
    }

    /// Adds y column (s, subset); returns false if already present.
    bool add_column(int s, std::uint32_t subset) {
        if (!columns_.insert({s, subset}).second) return false;
        std::vector<std::pair<int, double>> coeffs;
        for (std::size_t qi = 0; qi < inst_.demands.size(); ++qi) {
            const auto& d = inst_.demands[qi];
            if (!(subset & (1u << (d.element - 1)))) continue;
            auto it = demand_rows_[qi].link_row.find(s);
            if (it != demand_rows_[qi].link_row.end())
                coeffs.push_back({it->second, -1.0});
        }
        int var = lp_->add_variable(f_[subset], coeffs);
        y_vars_.push_back({s, subset, var});
        return true;
    }

    void solve() {
        if (lp_->status() == LpStatus::NotSolved) {
            if (lp_->solve() != LpStatus::Optimal)
                throw std::runtime_error("restricted master: not optimal");
        } else if (lp_->reoptimize() != LpStatus::Optimal) {
            throw std::runtime_error("restricted master: reoptimize failed");
        }
    }

    double objective() const { return lp_->objective(); }

    /// Dual objective of the current basis (weak-duality bound).
    double dual_objective() const {
        double v = 0.0;
        for (const auto& rows : demand_rows_) v += lp_->dual(rows.eq_row);
        return v;
    }

    DualVector duals() const {
        DualVector d;
        d.b.resize(demand_rows_.size());
        d.b_bar.resize(demand_rows_.size());
        for (std::size_t qi = 0; qi < demand_rows_.size(); ++qi) {
            d.b[qi] = lp_->dual(demand_rows_[qi].eq_row);
            for (const auto& [s, row] : demand_rows_[qi].link_row) {
                double bb = -lp_->dual(row); // <= row dual is nonpositive
                d.b_bar[qi][s] = bb > 0.0 ? bb : 0.0;
            }
        }
        return d;
    }

    LPSolution extract(double gamma, int columns_generated) const {
        LPSolution sol;
        sol.gamma = gamma;
        sol.columns_generated = columns_generated;
        for (const auto& [qi, s, var] : x_vars_) {
            double v = lp_->primal(var);
            const auto& d = inst_.demands[qi];
            if (v > 1e-12) {
                sol.x.push_back({d.element, d.period, s, v});
                sol.holding_part += v * evaluate_holding(inst_, d.element, s, d.period);
            }
        }
        for (const auto& [s, subset, var] : y_vars_) {
            double v = lp_->primal(var);
            if (v > 1e-12) {
                sol.y_columns.push_back({s, subset, v});
                sol.ordering_part += v * f_[subset];
            }
        }
        sol.objective = sol.ordering_part + sol.holding_part;
        return sol;
    }

    const std::vector<double>& f_table() const { return f_; }

private:
    struct DemandRows {
        int eq_row = -1;
        std::map<int, int> link_row; // s -> row
    };

    const Instance& inst_;
    std::vector<double> f_;
    std::optional<DenseSimplex> lp_;
    std::vector<DemandRows> demand_rows_;
    std::vector<std::tuple<int, int, int>> x_vars_; // (demand idx, s, var)
    std::vector<std::tuple<int, std::uint32_t, int>> y_vars_;
    std::set<std::pair<int, std::uint32_t>> columns_;
};

/// Pricing over per-element rewards at a fixed period: find the subset
/// minimizing f(S) - sum of rewards, or (garg mode) any subset whose
/// minimum TSP ratio certifies a violated dual constraint.
inline std::optional<std::pair<std::uint32_t, double>>
price_subset(const OrderingCost& cost, const std::vector<double>& f_table,
             const std::vector<double>& rewards, PricingMode mode,
             double tol = 1e-7) {
    int n = cost.num_elements();
    if (mode == PricingMode::GargApprox) {
        double total = 0.0;
        for (double r : rewards) total += r;
        if (total <= tol) return std::nullopt;
        RatioInstance ri{cost.metric(), rewards};
        RatioResult res = min_ratio_garg(ri);
        if (res.ratio < 1.0 - tol) {
            double rc = f_table[res.subset];
            for (int v = 0; v < n; ++v)
                if (res.subset & (1u << v)) rc -= rewards[v];
            return std::make_pair(res.subset, rc);
        }
        return std::nullopt; // certificate: duals/gamma feasible
    }
    // exact modes: full enumeration of subsets (metric TSP values come from
    // the Held-Karp table either way)
    std::uint32_t best_mask = 0;
    double best = 0.0; // empty set
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        double v = f_table[mask];
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) v -= rewards[i];
        if (v < best - 1e-12 ||
            (v < best + 1e-12 && best_mask != 0 && subset_lex_less(mask, best_mask))) {
            best = v;
            best_mask = mask;
        }
    }
    if (best < -tol && best_mask != 0) return std::make_pair(best_mask, best);
    return std::nullopt;
}

/// Rewards for pricing at period s: per element, the dual mass of linking
/// constraints over demand periods t >= s.
inline std::vector<double> pricing_rewards(const Instance& inst,
                                           const DualVector& duals, int s) {
    std::vector<double> rewards(inst.num_elements, 0.0);
    for (std::size_t qi = 0; qi < inst.demands.size(); ++qi) {
        auto it = duals.b_bar[qi].find(s);
        if (it != duals.b_bar[qi].end())
            rewards[inst.demands[qi].element - 1] += it->second;
    }
    return rewards;
}

/// Single-period pricing entry point.
inline std::optional<std::pair<std::uint32_t, double>>
price_column(const Instance& inst, const DualVector& duals, int s, PricingMode mode) {
    auto f = build_f_table(inst.ordering);
    return price_subset(inst.ordering, f, pricing_rewards(inst, duals, s), mode);
}

inline void check_pricing_mode(const Instance& inst, PricingMode mode) {
    bool metric = inst.ordering.family() == CostFamily::MetricTsp;
    if ((mode == PricingMode::ExactTspDp || mode == PricingMode::GargApprox) && !metric)
        throw std::invalid_argument(std::string(pricing_name(mode)) +
                                    " pricing requires the metric_tsp family");
}

inline double garg_gamma(int n) {
    return n >= 2 ? 2.0 / (1.0 - 1.0 / n) : 1.0;
}

inline LPSolution solve_lp(const Instance& inst, PricingMode mode,
                           double tol = 1e-7, int max_columns = 10000) {
    check_pricing_mode(inst, mode);
    double gamma =
        mode == PricingMode::GargApprox ? garg_gamma(inst.num_elements) : 1.0;
    if (inst.demands.empty()) {
        LPSolution empty;
        empty.gamma = gamma;
        return empty;
    }
    RestrictedMaster master(inst, build_f_table(inst.ordering));
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
        DualVector duals = master.duals();
        bool added = false;
        for (int s = 1; s <= inst.horizon; ++s) {
            auto rewards = pricing_rewards(inst, duals, s);
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

/// Testing oracle: the relaxation with every (s, subset) column materialized.
inline LPSolution lp_full_enumeration(const Instance& inst) {
    if (inst.num_elements > 10 || inst.horizon > 12)
        throw std::invalid_argument("lp_full_enumeration: size cap exceeded");
    if (inst.demands.empty()) return {};
    RestrictedMaster master(inst, build_f_table(inst.ordering));
    int generated = 0;
    for (int s = 1; s <= inst.horizon; ++s)
        for (std::uint32_t mask = 1; mask < (1u << inst.num_elements); ++mask) {
            master.add_column(s, mask);
            ++generated;
        }
    master.solve();
    return master.extract(1.0, generated);
}

} // namespace jrp
