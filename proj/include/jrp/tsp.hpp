#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "jrp/metric.hpp"

namespace jrp {

inline constexpr int kTspMaxVertices = 14;

/// Lexicographic order on subsets viewed as ascending element sequences,
/// e.g. {1} < {1,2} < {2}.  Used for deterministic tie-breaking.
inline bool subset_lex_less(std::uint32_t a, std::uint32_t b) {
    std::vector<int> ea, eb;
    for (int i = 0; i < 32; ++i) {
        if (a & (1u << i)) ea.push_back(i);
        if (b & (1u << i)) eb.push_back(i);
    }
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

/// Held-Karp over all subsets of the non-depot vertices: returns a table
/// tour[mask] with the optimal closed tour length through {depot} plus the
/// vertices selected by mask (bit v-1 for vertex v).
inline std::vector<double> tsp_all_tours(const Metric& m) {
    int n = m.n;
    if (n > kTspMaxVertices)
        throw std::invalid_argument("tsp_all_tours: too many vertices");
    std::size_t full = std::size_t{1} << n;
    const double inf = std::numeric_limits<double>::infinity();
    // dp[mask*n + j]: shortest depot->...->(j+1) path visiting exactly mask.
    std::vector<double> dp(full * n, inf);
    for (int j = 0; j < n; ++j)
        dp[(std::size_t{1} << j) * n + j] = m.dist(0, j + 1);
    for (std::size_t mask = 1; mask < full; ++mask) {
        for (int j = 0; j < n; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            double cur = dp[mask * n + j];
            if (cur == inf) continue;
            std::size_t rest = full - 1 - mask;
            for (std::size_t r = rest; r;) {
                int k = std::countr_zero(r);
                r &= r - 1;
                std::size_t nxt = mask | (std::size_t{1} << k);
                double cand = cur + m.dist(j + 1, k + 1);
                if (cand < dp[nxt * n + k]) dp[nxt * n + k] = cand;
            }
        }
    }
    std::vector<double> tour(full, 0.0);
    for (std::size_t mask = 1; mask < full; ++mask) {
        double best = inf;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            best = std::min(best, dp[mask * n + j] + m.dist(j + 1, 0));
        }
        tour[mask] = best;
    }
    return tour;
}

/// Exact optimal tour length over S (bitmask over elements 1..n) plus the
/// depot; 0 for the empty set.
inline double tsp_exact(const Metric& m, std::uint32_t subset) {
    if (subset == 0) return 0.0;
    std::vector<int> verts; // metric vertex ids
    for (int v = 1; v <= m.n; ++v)
        if (subset & (1u << (v - 1))) verts.push_back(v);
    int k = static_cast<int>(verts.size());
    if (k > kTspMaxVertices)
        throw std::invalid_argument("tsp_exact: subset too large");
    const double inf = std::numeric_limits<double>::infinity();
    std::size_t full = std::size_t{1} << k;
    std::vector<double> dp(full * k, inf);
    for (int j = 0; j < k; ++j)
        dp[(std::size_t{1} << j) * k + j] = m.dist(0, verts[j]);
    for (std::size_t mask = 1; mask < full; ++mask) {
        for (int j = 0; j < k; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            double cur = dp[mask * k + j];
            if (cur == inf) continue;
            for (int l = 0; l < k; ++l) {
                if (mask & (std::size_t{1} << l)) continue;
                std::size_t nxt = mask | (std::size_t{1} << l);
                double cand = cur + m.dist(verts[j], verts[l]);
                if (cand < dp[nxt * k + l]) dp[nxt * k + l] = cand;
            }
        }
    }
    double best = inf;
    for (int j = 0; j < k; ++j)
        best = std::min(best, dp[(full - 1) * k + j] + m.dist(verts[j], 0));
    return best;
}

struct KTspResult {
    std::uint32_t subset = 0;
    double length = 0.0;
};

/// Exact k-TSP with vertex multiplicities: the cheapest closed tour from the
/// depot whose visited vertices carry at least k units of multiplicity.
/// Visiting a vertex collects its full multiplicity (co-located copies).
inline KTspResult k_tsp_exact(const Metric& m, const std::vector<long long>& mult,
                              long long k) {
    if (static_cast<int>(mult.size()) != m.n)
        throw std::invalid_argument("k_tsp_exact: multiplicity size mismatch");
    if (k <= 0) return {0u, 0.0};
    long long total = 0;
    for (long long a : mult) {
        if (a < 0) throw std::invalid_argument("k_tsp_exact: negative multiplicity");
        total += a;
    }
    if (k > total) throw std::invalid_argument("k_tsp_exact: target unachievable");
    std::vector<double> tour = tsp_all_tours(m);
    std::size_t full = std::size_t{1} << m.n;
    KTspResult best;
    bool found = false;
    for (std::size_t mask = 1; mask < full; ++mask) {
        long long got = 0;
        for (std::size_t r = mask; r;) {
            int v = std::countr_zero(r);
            r &= r - 1;
            got += mult[v];
        }
        if (got < k) continue;
        std::uint32_t s = static_cast<std::uint32_t>(mask);
        if (!found || tour[mask] < best.length - 1e-12 ||
            (tour[mask] < best.length + 1e-12 && subset_lex_less(s, best.subset))) {
            best = {s, tour[mask]};
            found = true;
        }
    }
    return best;
}

/// Minimum ratio TSP: rewards on non-depot vertices (rewards[v-1] for v).
struct RatioInstance {
    Metric metric;
    std::vector<double> rewards;
};

struct RatioResult {
    std::uint32_t subset = 0;
    double ratio = 0.0;
};

inline double reward_of(const RatioInstance& inst, std::uint32_t mask) {
    double a = 0.0;
    for (int v = 0; v < inst.metric.n; ++v)
        if (mask & (1u << v)) a += inst.rewards[v];
    return a;
}

/// Global minimizer of f(S)/a(S) by brute force; n <= 12.
inline RatioResult min_ratio_exact(const RatioInstance& inst) {
    int n = inst.metric.n;
    if (n > 12) throw std::invalid_argument("min_ratio_exact: n > 12");
    bool any = false;
    for (double a : inst.rewards) any = any || a > 0.0;
    if (!any) throw std::invalid_argument("min_ratio_exact: all rewards zero");
    std::vector<double> tour = tsp_all_tours(inst.metric);
    RatioResult best;
    bool found = false;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        double a = reward_of(inst, mask);
        if (a <= 0.0) continue;
        double r = tour[mask] / a;
        if (!found || r < best.ratio - 1e-12 ||
            (r < best.ratio + 1e-12 && subset_lex_less(mask, best.subset))) {
            best = {mask, r};
            found = true;
        }
    }
    return best;
}

/// Scaling wrapper around k-TSP: guess the max-reward vertex, round rewards
/// to integer multiplicities on an n^2 grid, sweep the target k, return the
/// best ratio seen.  With an exact k-TSP subroutine the output is within a
/// (1-1/n)^-1 factor of optimal; with a 2-approximate k-TSP it would be
/// 2+o(1).
inline RatioResult min_ratio_garg(const RatioInstance& inst) {
    int n = inst.metric.n;
    if (n > 12) throw std::invalid_argument("min_ratio_garg: n > 12");
    bool any = false;
    for (double a : inst.rewards) any = any || a > 0.0;
    if (!any) throw std::invalid_argument("min_ratio_garg: all rewards zero");
    std::vector<double> tour = tsp_all_tours(inst.metric);
    std::size_t full = std::size_t{1} << n;

    RatioResult best;
    bool found = false;
    for (int u = 0; u < n; ++u) {
        double au = inst.rewards[u];
        if (au <= 0.0) continue;
        std::uint32_t keep = 0;
        for (int v = 0; v < n; ++v)
            if (inst.rewards[v] <= au) keep |= 1u << v;
        // Integer multiplicities on the a_u / n^2 grid.
        std::vector<long long> bar(n, 0);
        long long total = 0;
        for (int v = 0; v < n; ++v) {
            if (!(keep & (1u << v))) continue;
            bar[v] = static_cast<long long>(
                std::floor(inst.rewards[v] * n * n / au + 1e-9));
            total += bar[v];
        }
        long long kmax = std::min<long long>(total, 1LL * n * n * n);
        if (kmax < 1) continue;

        // best tour per collected multiplicity, then suffix minima over k.
        std::vector<double> best_len(total + 1,
                                     std::numeric_limits<double>::infinity());
        std::vector<std::uint32_t> best_set(total + 1, 0);
        for (std::size_t mask = 1; mask < full; ++mask) {
            if ((mask & ~std::size_t{keep}) != 0) continue;
            long long got = 0;
            for (std::size_t r = mask; r;) {
                int v = std::countr_zero(r);
                r &= r - 1;
                got += bar[v];
            }
            if (got < 1) continue;
            std::uint32_t s = static_cast<std::uint32_t>(mask);
            if (tour[mask] < best_len[got] - 1e-12 ||
                (tour[mask] < best_len[got] + 1e-12 &&
                 subset_lex_less(s, best_set[got]))) {
                best_len[got] = tour[mask];
                best_set[got] = s;
            }
        }
        for (long long g = total - 1; g >= 1; --g) {
            if (best_len[g + 1] < best_len[g] - 1e-12 ||
                (best_len[g + 1] < best_len[g] + 1e-12 &&
                 subset_lex_less(best_set[g + 1], best_set[g]))) {
                best_len[g] = best_len[g + 1];
                best_set[g] = best_set[g + 1];
            }
        }
        for (long long k = 1; k <= kmax; ++k) {
            if (best_len[k] == std::numeric_limits<double>::infinity()) break;
            std::uint32_t s = best_set[k];
            double a = reward_of(inst, s);
            if (a <= 0.0) continue;
            double r = best_len[k] / a;
            if (!found || r < best.ratio) { // ties keep the earliest (u,k)
                best = {s, r};
                found = true;
            }
        }
    }
    if (!found) throw std::runtime_error("min_ratio_garg: no candidate found");
    return best;
}

} // namespace jrp
