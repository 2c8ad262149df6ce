#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jrp/model.hpp"
#include "jrp/rng.hpp"

namespace jrp {

enum class GenFamily {
    JrpAdditive,
    JrpTable,
    JrpCardinality,
    IrpEuclidean,
    IrpRandomMetric,
};

inline const char* gen_family_name(GenFamily f) {
    switch (f) {
        case GenFamily::JrpAdditive: return "jrp_additive";
        case GenFamily::JrpTable: return "jrp_table";
        case GenFamily::JrpCardinality: return "jrp_cardinality";
        case GenFamily::IrpEuclidean: return "irp_euclidean";
        case GenFamily::IrpRandomMetric: return "irp_random_metric";
    }
    return "?";
}

inline GenFamily parse_gen_family(const std::string& s) {
    if (s == "jrp_additive") return GenFamily::JrpAdditive;
    if (s == "jrp_table") return GenFamily::JrpTable;
    if (s == "jrp_cardinality") return GenFamily::JrpCardinality;
    if (s == "irp_euclidean") return GenFamily::IrpEuclidean;
    if (s == "irp_random_metric") return GenFamily::IrpRandomMetric;
    throw std::invalid_argument("unknown generator family: " + s);
}

struct GenSpec {
    std::uint64_t seed = 0;
    GenFamily family = GenFamily::JrpAdditive;
    int n_min = 2, n_max = 4;
    int t_min = 3, t_max = 8;
    double density = 0.5;      // probability a demand point (i,t) exists
    double alpha = 1.0;        // polynomial holding degree
    double rate_min = 0.5, rate_max = 2.0;
    std::optional<int> lifetime; // perishable holding when set
};

inline Metric random_euclidean_metric(CounterRng& rng, int n) {
    std::vector<std::pair<double, double>> pts(n + 1); // 0 = depot
    for (auto& p : pts) {
        p.first = rng.next_double();
        p.second = rng.next_double();
    }
    Metric m;
    m.n = n;
    m.w.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            m.w[a * (n + 1) + b] = std::hypot(pts[a].first - pts[b].first,
                                              pts[a].second - pts[b].second);
    return m;
}

/// Random symmetric weights metrically closed by all-pairs shortest paths.
inline Metric random_closed_metric(CounterRng& rng, int n, double lo = 1.0,
                                   double hi = 10.0) {
    int v = n + 1;
    Metric m;
    m.n = n;
    m.w.assign(static_cast<std::size_t>(v) * v, 0.0);
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b) {
            double d = rng.uniform(lo, hi);
            m.w[a * v + b] = d;
            m.w[b * v + a] = d;
        }
    for (int k = 0; k < v; ++k)
        for (int a = 0; a < v; ++a)
            for (int b = 0; b < v; ++b)
                m.w[a * v + b] =
                    std::min(m.w[a * v + b], m.w[a * v + k] + m.w[k * v + b]);
    return m;
}

/// Random coverage function: element i covers a random subset of weighted
/// universe items, f(S) = total weight covered.  Monotone and submodular by
/// construction.
inline OrderingCost random_coverage_table(CounterRng& rng, int n) {
    int universe = 2 * n;
    std::vector<double> weight(universe);
    for (double& w : weight) w = rng.uniform(0.5, 3.0);
    std::vector<std::uint32_t> covers(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int u = 0; u < universe; ++u)
            if (rng.bernoulli(0.4)) covers[i] |= 1u << u;
        if (covers[i] == 0) covers[i] = 1u << (i % universe);
    }
    std::vector<double> values(std::size_t{1} << n, 0.0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::uint32_t covered = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) covered |= covers[i];
        double f = 0.0;
        for (int u = 0; u < universe; ++u)
            if (covered & (1u << u)) f += weight[u];
        values[mask] = f;
    }
    return OrderingCost::table(n, std::move(values));
}

inline OrderingCost random_cardinality(CounterRng& rng, int n) {
    // concave nondecreasing g via sorted positive increments
    std::vector<double> inc(n);
    for (double& x : inc) x = rng.uniform(0.5, 4.0);
    std::sort(inc.rbegin(), inc.rend());
    std::vector<double> g(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) g[j] = g[j - 1] + inc[j - 1];
    return OrderingCost::cardinality(std::move(g));
}

/// Random rooted tree (vertex 0 = root) with one extra vertex per element.
inline OrderingCost random_tree_cost(CounterRng& rng, int n) {
    int v = n + 1;
    std::vector<TreeEdge> edges;
    std::vector<int> element_vertex(n);
    for (int u = 1; u < v; ++u) {
        int parent = rng.uniform_int(0, u - 1);
        edges.push_back({parent, u, rng.uniform(0.5, 5.0)});
        if (u >= 1) element_vertex[u - 1] = u;
    }
    return OrderingCost::tree(v, std::move(edges), std::move(element_vertex));
}

/// Random laminar family: singletons, the full set, and nested prefixes.
inline OrderingCost random_laminar_cost(CounterRng& rng, int n) {
    std::vector<LaminarSet> sets;
    std::vector<int> all;
    for (int i = 1; i <= n; ++i) {
        sets.push_back({{i}, rng.uniform(0.5, 3.0)});
        all.push_back(i);
    }
    for (int len = 2; len <= n; ++len) {
        std::vector<int> prefix(all.begin(), all.begin() + len);
        if (rng.bernoulli(0.6))
            sets.push_back({std::move(prefix), rng.uniform(0.5, 3.0)});
    }
    return OrderingCost::laminar(n, std::move(sets));
}

/// Deterministic instance for (spec, stream).  If no demand point survives
/// sampling, retries with the next stream id so the result stays a pure
/// function of the inputs.
inline Instance generate_instance(const GenSpec& spec, std::uint64_t stream = 0) {
    for (std::uint64_t attempt = stream;; ++attempt) {
        CounterRng rng(spec.seed, attempt);
        Instance inst;
        inst.num_elements = rng.uniform_int(spec.n_min, spec.n_max);
        inst.horizon = rng.uniform_int(spec.t_min, spec.t_max);
        int n = inst.num_elements;

        for (int i = 1; i <= n; ++i)
            for (int t = 1; t <= inst.horizon; ++t)
                if (rng.bernoulli(spec.density))
                    inst.demands.push_back({i, t, rng.uniform(0.5, 3.0)});

        if (spec.lifetime) {
            inst.holding = HoldingModel::perishable(*spec.lifetime);
        } else {
            std::vector<std::vector<double>> rates(
                n, std::vector<double>(inst.horizon));
            for (auto& row : rates)
                for (double& r : row) r = rng.uniform(spec.rate_min, spec.rate_max);
            inst.holding = HoldingModel::polynomial(spec.alpha, std::move(rates));
        }

        switch (spec.family) {
            case GenFamily::JrpAdditive: {
                std::vector<double> k(n);
                for (double& x : k) x = rng.uniform(0.5, 5.0);
                inst.ordering = OrderingCost::additive(rng.uniform(1.0, 10.0),
                                                       std::move(k));
                break;
            }
            case GenFamily::JrpTable:
                inst.ordering = random_coverage_table(rng, n);
                break;
            case GenFamily::JrpCardinality:
                inst.ordering = random_cardinality(rng, n);
                break;
            case GenFamily::IrpEuclidean:
                inst.ordering = OrderingCost::metric_tsp(
                    random_euclidean_metric(rng, n));
                break;
            case GenFamily::IrpRandomMetric:
                inst.ordering = OrderingCost::metric_tsp(
                    random_closed_metric(rng, n));
                break;
        }

        if (!inst.demands.empty()) return inst;
    }
}

} // namespace jrp
