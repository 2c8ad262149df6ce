#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "jrp/model.hpp"

namespace jrp {

inline constexpr long long kOracleStateCap = 10'000'000;

struct ExactResult {
    double optimum = 0.0;
    Schedule schedule;
};

/// Exact optimum by exhausting demand -> serving-period assignments.  Each
/// period's order is the union of the elements assigned there: enlarging an
/// order never helps (monotone f), so this enumeration is lossless while
/// being exponentially smaller than per-period subset enumeration.
inline ExactResult exact_opt(const Instance& inst) {
    std::size_t q = inst.demands.size();
    if (q == 0) return {};

    std::vector<std::vector<int>> choices(q); // feasible serving periods
    long long states = 1;
    for (std::size_t qi = 0; qi < q; ++qi) {
        auto [lo, hi] = inst.serving_window(inst.demands[qi].period);
        for (int s = lo; s <= hi; ++s) choices[qi].push_back(s);
        states *= static_cast<long long>(choices[qi].size());
        if (states > kOracleStateCap)
            throw std::invalid_argument("exact_opt: search space exceeds cap");
    }

    std::vector<double> f_memo(std::size_t{1} << inst.num_elements, -1.0);
    auto f_of = [&](std::uint32_t mask) {
        if (f_memo[mask] < 0.0) f_memo[mask] = inst.ordering.eval(mask);
        return f_memo[mask];
    };
    f_memo[0] = 0.0;

    std::vector<double> holding(q); // per demand at the current choice
    std::vector<std::size_t> idx(q, 0);
    std::vector<int> best_idx;
    double best = -1.0;
    std::map<int, std::uint32_t> orders; // period -> union mask, rebuilt per leaf

    // Odometer over assignment vectors; lexicographically earliest vector is
    // visited first, so strict improvement keeps the earliest optimum.
    while (true) {
        orders.clear();
        double cost = 0.0;
        for (std::size_t qi = 0; qi < q; ++qi) {
            const auto& d = inst.demands[qi];
            int s = choices[qi][idx[qi]];
            cost += evaluate_holding(inst, d.element, s, d.period);
            orders[s] |= 1u << (d.element - 1);
        }
        for (const auto& [s, mask] : orders) cost += f_of(mask);
        if (best < 0.0 || cost < best - 1e-12) {
            best = cost;
            best_idx.assign(idx.begin(), idx.end());
        }
        std::size_t pos = q;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < choices[pos].size()) break;
            idx[pos] = 0;
            if (pos == 0) { pos = q + 1; break; }
        }
        if (pos == q + 1) break;
    }

    ExactResult res;
    res.optimum = best;
    for (std::size_t qi = 0; qi < q; ++qi) {
        const auto& d = inst.demands[qi];
        int s = choices[qi][best_idx[qi]];
        res.schedule.assignment[{d.element, d.period}] = s;
        auto& elems = res.schedule.orders[s];
        elems.push_back(d.element);
    }
    for (auto& [s, elems] : res.schedule.orders) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    }
    return res;
}

} // namespace jrp
