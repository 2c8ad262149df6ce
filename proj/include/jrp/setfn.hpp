#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jrp/metric.hpp"
#include "jrp/simplex.hpp"
#include "jrp/tsp.hpp"

namespace jrp {

enum class CostFamily { Additive, Cardinality, Tree, Laminar, Table, MetricTsp };

inline const char* family_name(CostFamily f) {
    switch (f) {
        case CostFamily::Additive: return "additive";
        case CostFamily::Cardinality: return "cardinality";
        case CostFamily::Tree: return "tree";
        case CostFamily::Laminar: return "laminar";
        case CostFamily::Table: return "table";
        case CostFamily::MetricTsp: return "metric_tsp";
    }
    return "?";
}

/// Expected worst-case fractional-subadditivity factor for a family
/// (submodular families are exactly fractional subadditive; metric TSP is
/// 1.5-approximate via the subtour LP integrality gap).
inline double default_beta(CostFamily f) {
    return f == CostFamily::MetricTsp ? 1.5 : 1.0;
}

struct TreeEdge {
    int u = 0, v = 0;
    double weight = 0.0;
};

struct LaminarSet {
    std::vector<int> elements; // 1-based
    double weight = 0.0;
};

/// Monotone joint ordering cost f over subsets of [1..N] (bit i-1 = element i).
class OrderingCost {
public:
    static OrderingCost additive(double k0, std::vector<double> per_element) {
        OrderingCost c;
        c.family_ = CostFamily::Additive;
        c.n_ = static_cast<int>(per_element.size());
        if (k0 < 0.0) throw std::invalid_argument("additive: K0 < 0");
        for (double k : per_element)
            if (k < 0.0) throw std::invalid_argument("additive: k_i < 0");
        c.k0_ = k0;
        c.k_ = std::move(per_element);
        return c;
    }

    /// g has N+1 entries, g(0)=0, nondecreasing and concave.
    static OrderingCost cardinality(std::vector<double> g) {
        OrderingCost c;
        c.family_ = CostFamily::Cardinality;
        c.n_ = static_cast<int>(g.size()) - 1;
        if (c.n_ < 0 || g[0] != 0.0)
            throw std::invalid_argument("cardinality: need g(0)=0");
        for (int j = 1; j <= c.n_; ++j) {
            if (g[j] < g[j - 1] - 1e-12)
                throw std::invalid_argument("cardinality: g not nondecreasing");
            if (j >= 2 && g[j] - g[j - 1] > g[j - 1] - g[j - 2] + 1e-12)
                throw std::invalid_argument("cardinality: g not concave");
        }
        c.g_ = std::move(g);
        return c;
    }

    /// Rooted tree on vertices 0..V-1 (root 0); element i sits at
    /// element_vertex[i-1]; f(S) = weight of the minimal subtree connecting
    /// the root to the vertices of S.
    static OrderingCost tree(int num_vertices, std::vector<TreeEdge> edges,
                             std::vector<int> element_vertex) {
        OrderingCost c;
        c.family_ = CostFamily::Tree;
        c.n_ = static_cast<int>(element_vertex.size());
        if (static_cast<int>(edges.size()) != num_vertices - 1)
            throw std::invalid_argument("tree: not a tree (|E| != |V|-1)");
        std::vector<std::vector<std::pair<int, double>>> adj(num_vertices);
        for (const auto& e : edges) {
            if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices)
                throw std::invalid_argument("tree: edge endpoint out of range");
            if (e.weight < 0.0) throw std::invalid_argument("tree: negative weight");
            adj[e.u].push_back({e.v, e.weight});
            adj[e.v].push_back({e.u, e.weight});
        }
        c.tree_parent_.assign(num_vertices, -1);
        c.tree_parent_weight_.assign(num_vertices, 0.0);
        std::vector<int> stack{0};
        std::vector<bool> seen(num_vertices, false);
        seen[0] = true;
        int visited = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ++visited;
            for (auto [v, w] : adj[u]) {
                if (seen[v]) continue;
                seen[v] = true;
                c.tree_parent_[v] = u;
                c.tree_parent_weight_[v] = w;
                stack.push_back(v);
            }
        }
        if (visited != num_vertices)
            throw std::invalid_argument("tree: disconnected");
        for (int v : element_vertex)
            if (v < 0 || v >= num_vertices)
                throw std::invalid_argument("tree: element vertex out of range");
        c.element_vertex_ = std::move(element_vertex);
        return c;
    }

    static OrderingCost laminar(int n, std::vector<LaminarSet> sets) {
        OrderingCost c;
        c.family_ = CostFamily::Laminar;
        c.n_ = n;
        for (const auto& s : sets) {
            if (s.weight < 0.0) throw std::invalid_argument("laminar: negative weight");
            std::uint32_t mask = 0;
            for (int e : s.elements) {
                if (e < 1 || e > n)
                    throw std::invalid_argument("laminar: element out of range");
                mask |= 1u << (e - 1);
            }
            c.laminar_masks_.push_back(mask);
            c.laminar_weights_.push_back(s.weight);
        }
        for (std::size_t a = 0; a < c.laminar_masks_.size(); ++a)
            for (std::size_t b = a + 1; b < c.laminar_masks_.size(); ++b) {
                std::uint32_t x = c.laminar_masks_[a], y = c.laminar_masks_[b];
                std::uint32_t both = x & y;
                if (both != 0 && both != x && both != y)
                    throw std::invalid_argument("laminar: family not laminar");
            }
        c.laminar_sets_ = std::move(sets);
        return c;
    }

    /// Explicit table over all 2^N subsets; f(0) must be 0 and f monotone.
    static OrderingCost table(int n, std::vector<double> values) {
        OrderingCost c;
        c.family_ = CostFamily::Table;
        c.n_ = n;
        if (n > 16) throw std::invalid_argument("table: N > 16");
        if (values.size() != (std::size_t{1} << n))
            throw std::invalid_argument("table: need 2^N values");
        if (values[0] != 0.0) throw std::invalid_argument("table: f(empty) != 0");
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) {
                    if (values[mask] < values[mask ^ (1u << i)] - 1e-12)
                        throw std::invalid_argument("table: not monotone");
                }
        c.table_ = std::move(values);
        return c;
    }

    static OrderingCost metric_tsp(Metric m) {
        OrderingCost c;
        c.family_ = CostFamily::MetricTsp;
        c.n_ = m.n;
        auto bad = m.violations();
        if (!bad.empty())
            throw std::invalid_argument("metric_tsp: " + bad.front());
        c.metric_ = std::move(m);
        return c;
    }

    CostFamily family() const { return family_; }
    int num_elements() const { return n_; }
    const Metric& metric() const { return metric_; }

    double eval(std::uint32_t subset) const {
        if (subset == 0) return 0.0;
        switch (family_) {
            case CostFamily::Additive: {
                double f = k0_;
                for (int i = 0; i < n_; ++i)
                    if (subset & (1u << i)) f += k_[i];
                return f;
            }
            case CostFamily::Cardinality:
                return g_[std::popcount(subset)];
            case CostFamily::Tree: {
                std::vector<bool> marked(tree_parent_.size(), false);
                double f = 0.0;
                for (int i = 0; i < n_; ++i) {
                    if (!(subset & (1u << i))) continue;
                    int v = element_vertex_[i];
                    while (v != 0 && !marked[v]) {
                        marked[v] = true;
                        f += tree_parent_weight_[v];
                        v = tree_parent_[v];
                    }
                }
                return f;
            }
            case CostFamily::Laminar: {
                double f = 0.0;
                for (std::size_t j = 0; j < laminar_masks_.size(); ++j)
                    if (laminar_masks_[j] & subset) f += laminar_weights_[j];
                return f;
            }
            case CostFamily::Table:
                return table_[subset];
            case CostFamily::MetricTsp:
                return tsp_exact(metric_, subset);
        }
        throw std::logic_error("unreachable");
    }

    double eval(const std::vector<int>& elements) const {
        std::uint32_t mask = 0;
        for (int e : elements) mask |= 1u << (e - 1);
        return eval(mask);
    }

    // accessors used by serialization
    double additive_k0() const { return k0_; }
    const std::vector<double>& additive_k() const { return k_; }
    const std::vector<double>& cardinality_g() const { return g_; }
    const std::vector<int>& tree_parents() const { return tree_parent_; }
    const std::vector<double>& tree_parent_weights() const { return tree_parent_weight_; }
    const std::vector<int>& tree_element_vertex() const { return element_vertex_; }
    const std::vector<LaminarSet>& laminar_sets() const { return laminar_sets_; }
    const std::vector<double>& table_values() const { return table_; }

private:
    OrderingCost() = default;

    CostFamily family_ = CostFamily::Additive;
    int n_ = 0;
    double k0_ = 0.0;
    std::vector<double> k_;
    std::vector<double> g_;
    std::vector<int> tree_parent_;
    std::vector<double> tree_parent_weight_;
    std::vector<int> element_vertex_;
    std::vector<LaminarSet> laminar_sets_;
    std::vector<std::uint32_t> laminar_masks_;
    std::vector<double> laminar_weights_;
    std::vector<double> table_;
    Metric metric_;
};

/// Witness of a failed monotonicity or submodularity check.
struct SubmodularityCheck {
    bool ok = true;
    bool monotonicity_failure = false;
    std::uint32_t s1 = 0, s2 = 0;
    int element = 0; // 1-based
};

/// Brute-force check that f is monotone nondecreasing and submodular
/// (diminishing marginals), N <= 16.  Submodularity is tested through the
/// equivalent local condition on pairs of singleton extensions.
inline SubmodularityCheck check_monotone_submodular(const OrderingCost& cost, int n,
                                                    double tol = 1e-9) {
    if (n > 16) throw std::invalid_argument("check_monotone_submodular: N > 16");
    std::size_t full = std::size_t{1} << n;
    std::vector<double> f(full);
    for (std::size_t mask = 0; mask < full; ++mask)
        f[mask] = cost.eval(static_cast<std::uint32_t>(mask));

    for (std::uint32_t mask = 0; mask < full; ++mask)
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) continue;
            if (f[mask | (1u << i)] < f[mask] - tol)
                return {false, true, mask, mask | (1u << i), i + 1};
        }
    // f(M+i) - f(M) >= f(M+j+i) - f(M+j) for all M, i != j outside M.
    for (std::uint32_t mask = 0; mask < full; ++mask)
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) continue;
            for (int j = 0; j < n; ++j) {
                if (j == i || (mask & (1u << j))) continue;
                double lhs = f[mask | (1u << i) | (1u << j)] - f[mask | (1u << j)];
                double rhs = f[mask | (1u << i)] - f[mask];
                if (lhs > rhs + tol)
                    return {false, false, mask, mask | (1u << j), i + 1};
            }
        }
    return {};
}

struct FractionalCover {
    double value = 0.0;
    std::vector<std::pair<std::uint32_t, double>> weights; // (subset, lambda)
};

/// Cheapest fractional cover of S: min sum lambda_A f(A) subject to
/// sum_{A contains v} lambda_A >= 1 for every v in S, over all subsets A of
/// the ground set.  LP over 2^N - 1 variables; N <= 12.
inline FractionalCover min_fractional_cover(const OrderingCost& cost,
                                            std::uint32_t s, int n) {
    if (n > 12) throw std::invalid_argument("min_fractional_cover: N > 12");
    if (s == 0) return {};
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
        if (s & (1u << v)) members.push_back(v);
    int rows = static_cast<int>(members.size());
    DenseSimplex lp(std::vector<RowSense>(rows, RowSense::GreaterEq),
                    std::vector<double>(rows, 1.0));
    std::size_t full = std::size_t{1} << n;
    std::vector<std::uint32_t> var_subset;
    var_subset.reserve(full - 1);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        std::vector<std::pair<int, double>> coeffs;
        for (int r = 0; r < rows; ++r)
            if (mask & (1u << members[r])) coeffs.push_back({r, 1.0});
        lp.add_variable(cost.eval(mask), coeffs);
        var_subset.push_back(mask);
    }
    if (lp.solve() != LpStatus::Optimal)
        throw std::runtime_error("min_fractional_cover: LP not optimal");
    FractionalCover out;
    out.value = lp.objective();
    for (int v = 0; v < static_cast<int>(var_subset.size()); ++v) {
        double lam = lp.primal(v);
        if (lam > 1e-12) out.weights.push_back({var_subset[v], lam});
    }
    return out;
}

/// First subset violating f(S) <= beta * min fractional cover of S, if any.
inline std::optional<std::uint32_t> check_beta_subadditive(const OrderingCost& cost,
                                                           int n, double beta,
                                                           double tol = 1e-6) {
    if (n > 12) throw std::invalid_argument("check_beta_subadditive: N > 12");
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        double cover = min_fractional_cover(cost, s, n).value;
        if (cost.eval(s) > beta * cover + tol) return s;
    }
    return std::nullopt;
}

} // namespace jrp
