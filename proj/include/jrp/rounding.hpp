#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jrp/lp.hpp"
#include "jrp/model.hpp"

namespace jrp {

/// rho = max(2, floor((log2 T)^(1/(2*alpha)))).  The clamp keeps the power
/// grid nondegenerate at small horizons.
inline int compute_rho(int horizon, double alpha) {
    if (horizon < 1 || alpha < 1.0)
        throw std::invalid_argument("compute_rho: need T >= 1, alpha >= 1");
    double lg = std::log2(static_cast<double>(horizon));
    int rho = static_cast<int>(std::floor(std::pow(lg, 1.0 / (2.0 * alpha)) + 1e-9));
    return std::max(2, rho);
}

struct RoundingParams {
    int rho = 2;
    double alpha = 1.0;
    int k = 1;                  // number of groups
    std::vector<long long> widths; // w_0 = 0, w_m = min(rho^m, T)
    bool perishable = false;
    int lifetime = 0;
};

inline RoundingParams make_rounding_params(const Instance& inst,
                                           std::optional<int> rho_override = {}) {
    RoundingParams p;
    if (inst.holding.kind == HoldingKind::Perishable) {
        // Single-width regime: every extended interval is the perishable
        // window [t-c, t].
        p.perishable = true;
        p.lifetime = inst.holding.lifetime;
        p.rho = rho_override.value_or(2);
        p.alpha = 1.0;
        if (p.lifetime == 0) {
            p.k = 1;
            p.widths = {0};
        } else {
            p.k = 2;
            p.widths = {0, std::min<long long>(p.lifetime, inst.horizon)};
        }
        return p;
    }
    // Table holding carries no degree; the grid uses alpha = 1.
    p.alpha = inst.holding.kind == HoldingKind::Polynomial ? inst.holding.alpha : 1.0;
    p.rho = rho_override.value_or(compute_rho(inst.horizon, p.alpha));
    if (p.rho < 2) throw std::invalid_argument("rho must be >= 2");
    int k = 1;
    long long pw = 1;
    while (pw < inst.horizon) {
        pw *= p.rho;
        ++k;
    } // k = 1 + ceil(log_rho T)
    p.k = k;
    p.widths.resize(k);
    p.widths[0] = 0;
    pw = 1;
    for (int m = 1; m < k; ++m) {
        pw *= p.rho;
        p.widths[m] = std::min<long long>(pw, inst.horizon);
    }
    return p;
}

struct ShadowInterval {
    int element = 0, period = 0; // demand (i,t)
    int s_prime = 0;             // half-mass point
    int s_star = 0;              // stretched start, clipped at 1
    long long nominal_width = 0; // 0 or rho^m (capped at T)
    int group = 0;
};

/// Largest s with suffix LP mass >= 1/2; the column is x over s = 1..t
/// (entries outside the serving window are zero).
inline int shadow_interval(const std::vector<double>& x_column, double tol = 1e-6) {
    int t = static_cast<int>(x_column.size());
    double total = 0.0;
    for (double v : x_column) total += v;
    if (std::abs(total - 1.0) > tol)
        throw std::invalid_argument("shadow_interval: column mass != 1");
    double suffix = 0.0;
    for (int s = t; s >= 1; --s) {
        suffix += x_column[s - 1];
        if (suffix >= 0.5 - 1e-9) return s;
    }
    return 1;
}

/// Stretch [s', t] to the nearest power of rho: group m minimal with
/// rho^m >= t - s', start clipped at period 1.
inline ShadowInterval extend_interval(int s_prime, int t, int rho, int horizon) {
    if (s_prime > t) throw std::invalid_argument("extend_interval: s' > t");
    ShadowInterval si;
    si.period = t;
    si.s_prime = s_prime;
    if (s_prime == t) {
        si.s_star = t;
        si.nominal_width = 0;
        si.group = 0;
        return si;
    }
    long long len = t - s_prime;
    int m = 1;
    long long pw = rho;
    while (pw < len) {
        pw *= rho;
        ++m;
    }
    si.group = m;
    si.nominal_width = std::min<long long>(pw, horizon);
    si.s_star = static_cast<int>(std::max<long long>(1, t - pw));
    return si;
}

struct GroupOrder {
    int group = 0;
    int tau = 0;                // grid period
    std::vector<int> elements;  // A_m^j, sorted
};

struct RoundingTrace {
    RoundingParams params;
    std::vector<ShadowInterval> intervals;        // instance demand order
    std::vector<GroupOrder> group_orders;
    std::map<std::pair<int, int>, int> serving_grid; // (i,t) -> serving tau
    Schedule schedule;
};

/// Grid placement (once every w_m periods per group) and demand assignment.
/// An element joins A_m^j when its interval contains the grid point tau_j
/// AND lies inside the window (tau_{j-1}, tau_{j+1}]; the demand is served
/// at the latest such grid point.  The window containment is what the
/// per-group ordering-cost argument needs.  It can only exclude the point
/// tau_j = t when the interval starts exactly at tau_{j-1}, and in that case
/// the earlier grid point always qualifies, so every demand keeps at least
/// one serving candidate.
inline RoundingTrace place_orders(const Instance& inst,
                                  std::vector<ShadowInterval> intervals,
                                  const RoundingParams& params) {
    if (intervals.size() != inst.demands.size())
        throw std::invalid_argument("place_orders: one interval per demand required");
    RoundingTrace trace;
    trace.params = params;
    std::map<std::pair<int, int>, std::vector<int>> group_sets; // (group, tau) -> elems

    for (std::size_t qi = 0; qi < intervals.size(); ++qi) {
        ShadowInterval& si = intervals[qi];
        si.element = inst.demands[qi].element;
        si.period = inst.demands[qi].period;
        int i = si.element, t = si.period;
        if (si.group == 0) {
            group_sets[{0, t}].push_back(i);
            trace.serving_grid[{i, t}] = t;
            trace.schedule.assignment[{i, t}] = t;
            continue;
        }
        long long w = params.widths[si.group];
        // grid points inside [s_star, t]
        long long j_hi = (t - 1) / w;
        int serving = -1;
        for (long long j = j_hi; j >= 0; --j) {
            long long tau = 1 + j * w;
            if (tau < si.s_star) break;
            if (tau > t) continue;
            if (!(si.s_star > tau - w && t <= tau + w)) continue;
            group_sets[{si.group, static_cast<int>(tau)}].push_back(i);
            if (serving < 0) serving = static_cast<int>(tau);
        }
        if (serving < 0)
            throw std::logic_error("place_orders: no serving grid point found");
        trace.serving_grid[{i, t}] = serving;
        trace.schedule.assignment[{i, t}] = serving;
    }

    for (auto& [key, elems] : group_sets) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        trace.group_orders.push_back({key.first, key.second, elems});
        auto& merged = trace.schedule.orders[key.second];
        merged.insert(merged.end(), elems.begin(), elems.end());
    }
    for (auto& [s, elems] : trace.schedule.orders) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    }
    trace.intervals = std::move(intervals);
    return trace;
}

/// Shadow interval of each demand from the LP solution; perishable holding
/// uses the window [t-c, t] directly as the extended interval.
inline std::vector<ShadowInterval> build_intervals(const Instance& inst,
                                                   const LPSolution& lp,
                                                   const RoundingParams& params) {
    auto xm = lp.x_map();
    std::vector<ShadowInterval> intervals;
    intervals.reserve(inst.demands.size());
    for (const auto& d : inst.demands) {
        std::vector<double> column(d.period, 0.0);
        for (int s = 1; s <= d.period; ++s) {
            auto it = xm.find({d.element, d.period, s});
            if (it != xm.end()) column[s - 1] = it->second;
        }
        int s_prime = shadow_interval(column);
        ShadowInterval si;
        if (params.perishable) {
            si.s_prime = s_prime;
            si.period = d.period;
            if (params.lifetime == 0) {
                si.s_star = d.period;
                si.nominal_width = 0;
                si.group = 0;
            } else {
                si.s_star = std::max(1, d.period - params.lifetime);
                si.nominal_width = params.widths[1];
                si.group = 1;
            }
        } else {
            si = extend_interval(s_prime, d.period, params.rho, inst.horizon);
        }
        si.element = d.element;
        si.period = d.period;
        intervals.push_back(si);
    }
    return intervals;
}

struct RoundingResult {
    Schedule schedule;
    RoundingTrace trace;
    CostReport cost;
};

inline RoundingResult round_lp(const Instance& inst, const LPSolution& lp,
                               std::optional<int> rho_override = {}) {
    RoundingParams params = make_rounding_params(inst, rho_override);
    auto intervals = build_intervals(inst, lp, params);
    RoundingTrace trace = place_orders(inst, std::move(intervals), params);
    auto violations = validate_schedule(inst, trace.schedule);
    if (!violations.empty())
        throw std::logic_error("round_lp produced infeasible schedule: " +
                               violations.front());
    CostReport cost = evaluate_schedule_cost(inst, trace.schedule);
    return {trace.schedule, std::move(trace), std::move(cost)};
}

struct HoldingAuditRow {
    int element = 0, period = 0;
    double h_sprime = 0.0;   // H at the shadow start
    double h_sstar = 0.0;    // H at the stretched start
    double lp_mass = 0.0;    // sum_s H x
    bool shadow_ok = true;   // H_{s't} <= 2 sum H x
    bool stretch_ok = true;  // H_{s*t} <= 2 rho^alpha sum H x
};

struct HoldingAudit {
    std::vector<HoldingAuditRow> rows;
    double algorithm_holding = 0.0;
    double lp_holding_part = 0.0;
    double stretch_factor = 0.0;  // 2 rho^alpha
    double max_shadow_ratio = 0.0;
    double max_stretch_ratio = 0.0;
    bool aggregate_ok = true;     // algorithm holding <= 2 rho^alpha * LP holding
    bool passed = true;
};

/// Per-demand and aggregate holding-cost bounds of the rounding analysis.
inline HoldingAudit audit_holding(const Instance& inst, const LPSolution& lp,
                                  const RoundingTrace& trace, double tol = 1e-6) {
    HoldingAudit audit;
    audit.stretch_factor =
        2.0 * std::pow(static_cast<double>(trace.params.rho), trace.params.alpha);
    auto xm = lp.x_map();
    for (std::size_t qi = 0; qi < inst.demands.size(); ++qi) {
        const auto& d = inst.demands[qi];
        const auto& si = trace.intervals[qi];
        HoldingAuditRow row;
        row.element = d.element;
        row.period = d.period;
        row.h_sprime = evaluate_holding(inst, d.element, si.s_prime, d.period);
        row.h_sstar = evaluate_holding(inst, d.element, si.s_star, d.period);
        for (int s = 1; s <= d.period; ++s) {
            auto it = xm.find({d.element, d.period, s});
            if (it == xm.end()) continue;
            row.lp_mass += it->second * evaluate_holding(inst, d.element, s, d.period);
        }
        row.shadow_ok = row.h_sprime <= 2.0 * row.lp_mass + tol;
        row.stretch_ok =
            row.h_sstar <= audit.stretch_factor * row.lp_mass + tol;
        if (row.lp_mass > tol) {
            audit.max_shadow_ratio =
                std::max(audit.max_shadow_ratio, row.h_sprime / (2.0 * row.lp_mass));
            audit.max_stretch_ratio =
                std::max(audit.max_stretch_ratio,
                         row.h_sstar / (audit.stretch_factor * row.lp_mass));
        }
        audit.passed = audit.passed && row.shadow_ok && row.stretch_ok;
        int serve = trace.schedule.assignment.at({d.element, d.period});
        audit.algorithm_holding +=
            evaluate_holding(inst, d.element, serve, d.period);
        audit.rows.push_back(row);
    }
    audit.lp_holding_part = lp.holding_part;
    audit.aggregate_ok = audit.algorithm_holding <=
                         audit.stretch_factor * audit.lp_holding_part + tol;
    audit.passed = audit.passed && audit.aggregate_ok;
    return audit;
}

} // namespace jrp
