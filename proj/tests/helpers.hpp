#pragma once

#include <vector>

#include "jrp/model.hpp"

namespace testutil {

// N=2, T=3, d_{1,2}=1, d_{2,3}=2, additive K0=5 k=1, alpha=1, unit rates.
// Optimal integral cost is 9: order {1,2} at period 2 (7 ordering + 2 holding).
inline jrp::Instance instance_a() {
    jrp::Instance inst;
    inst.num_elements = 2;
    inst.horizon = 3;
    inst.demands = {{1, 2, 1.0}, {2, 3, 2.0}};
    inst.holding = jrp::HoldingModel::polynomial(
        1.0, {{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}});
    inst.ordering = jrp::OrderingCost::additive(5.0, {1.0, 1.0});
    return inst;
}

inline jrp::Instance single_demand_instance() {
    jrp::Instance inst;
    inst.num_elements = 1;
    inst.horizon = 2;
    inst.demands = {{1, 2, 1.0}};
    inst.holding = jrp::HoldingModel::polynomial(1.0, {{1.0, 1.0}});
    inst.ordering = jrp::OrderingCost::additive(5.0, {1.0});
    return inst;
}

// Line metric 0-1-2-...-n with unit spacing and w = |a-b|.
inline jrp::Metric line_metric(int n) {
    jrp::Metric m;
    m.n = n;
    m.w.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            m.w[a * (n + 1) + b] = std::abs(a - b);
    return m;
}

// Complete graph where every distance is `d`.
inline jrp::Metric uniform_metric(int n, double d = 1.0) {
    jrp::Metric m;
    m.n = n;
    m.w.assign(static_cast<std::size_t>(n + 1) * (n + 1), d);
    for (int a = 0; a <= n; ++a) m.w[a * (n + 1) + a] = 0.0;
    return m;
}

} // namespace testutil
