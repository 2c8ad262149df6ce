#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "jrp/covering.hpp"
#include "jrp/gen.hpp"
#include "jrp/lp.hpp"
#include "jrp/oracle.hpp"
#include "jrp/rounding.hpp"

namespace jrp {

struct PipelineOptions {
    PricingMode pricing = PricingMode::ExactEnumeration;
    double tol = 1e-7;
    bool run_exact = false;
    bool run_covering = true;
    std::optional<int> rho_override;
};

struct PipelineRow {
    std::uint64_t instance_id = 0;
    std::string family;
    int n = 0, t = 0, demands = 0;
    double lp_objective = 0.0;
    double rounded_total = 0.0;
    double ratio_rounded_lp = 0.0;
    std::optional<double> exact_optimum;
    std::optional<double> ratio_rounded_exact;
    double guarantee = 0.0; // max(2 rho^alpha, 4 beta k)
    bool holding_passed = false;
    bool ordering_passed = false;
    bool schedule_feasible = false;
    std::string error; // nonempty marks a failed row
};

struct PipelineResult {
    LPSolution lp;
    RoundingResult rounding;
    HoldingAudit holding_audit;
    std::optional<CoveringSolution> covering;
    std::optional<OrderingAudit> ordering_audit;
    std::optional<ExactResult> exact;
};

inline PipelineResult run_pipeline(const Instance& inst, const PipelineOptions& opts) {
    PipelineResult out;
    out.lp = solve_lp(inst, opts.pricing, opts.tol);
    out.rounding = round_lp(inst, out.lp, opts.rho_override);
    out.holding_audit = audit_holding(inst, out.lp, out.rounding.trace);
    if (opts.run_covering) {
        // Exact pricing keeps the audit bounds unscaled; every supported
        // family admits it at desk scale (enumeration or the Held-Karp table).
        out.covering = solve_covering_lp(inst, out.rounding.trace.intervals,
                                         PricingMode::ExactEnumeration, opts.tol);
        double beta = default_beta(inst.ordering.family());
        out.ordering_audit = audit_ordering(inst, out.lp, *out.covering,
                                            out.rounding.trace, beta);
    }
    if (opts.run_exact) out.exact = exact_opt(inst);
    return out;
}

inline PipelineRow pipeline_row(const Instance& inst, std::uint64_t id,
                                const std::string& family,
                                const PipelineOptions& opts) {
    PipelineRow row;
    row.instance_id = id;
    row.family = family;
    row.n = inst.num_elements;
    row.t = inst.horizon;
    row.demands = static_cast<int>(inst.demands.size());
    try {
        PipelineResult res = run_pipeline(inst, opts);
        row.lp_objective = res.lp.objective;
        row.rounded_total = res.rounding.cost.total;
        row.schedule_feasible = true;
        row.ratio_rounded_lp =
            res.lp.objective > 1e-12 ? res.rounding.cost.total / res.lp.objective
                                     : 1.0;
        double beta = default_beta(inst.ordering.family());
        const auto& p = res.rounding.trace.params;
        row.guarantee = std::max(2.0 * std::pow(static_cast<double>(p.rho), p.alpha),
                                 4.0 * beta * p.k);
        row.holding_passed = res.holding_audit.passed;
        row.ordering_passed = res.ordering_audit ? res.ordering_audit->passed : true;
        if (res.exact) {
            row.exact_optimum = res.exact->optimum;
            if (res.exact->optimum > 1e-12)
                row.ratio_rounded_exact = res.rounding.cost.total / res.exact->optimum;
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

struct BenchJob {
    GenSpec spec;
    int count = 1;
    PipelineOptions options;
};

struct BenchReport {
    std::vector<PipelineRow> rows;
    double max_ratio_lp = 0.0;
    double mean_ratio_lp = 0.0;
    std::optional<double> max_ratio_exact;
    int failures = 0;
    bool all_audits_passed = true;
};

/// Runs every (job, instance index) pair; rows land at fixed indices, so the
/// report is identical for any worker count.
inline BenchReport run_bench(const std::vector<BenchJob>& jobs, int threads = 1) {
    struct Task {
        const BenchJob* job;
        std::uint64_t stream;
        std::size_t slot;
    };
    std::vector<Task> tasks;
    for (const auto& job : jobs)
        for (int c = 0; c < job.count; ++c)
            tasks.push_back({&job, static_cast<std::uint64_t>(c), tasks.size()});

    BenchReport report;
    report.rows.resize(tasks.size());
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t k = begin; k < tasks.size(); k += step) {
            const Task& task = tasks[k];
            Instance inst = generate_instance(task.job->spec, task.stream);
            report.rows[task.slot] =
                pipeline_row(inst, task.stream, gen_family_name(task.job->spec.family),
                             task.job->options);
        }
    };
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back(work, static_cast<std::size_t>(w),
                              static_cast<std::size_t>(threads));
        for (auto& th : pool) th.join();
    }

    double sum = 0.0;
    int ok_rows = 0;
    for (const auto& row : report.rows) {
        if (!row.error.empty()) {
            ++report.failures;
            report.all_audits_passed = false;
            continue;
        }
        ++ok_rows;
        sum += row.ratio_rounded_lp;
        report.max_ratio_lp = std::max(report.max_ratio_lp, row.ratio_rounded_lp);
        if (row.ratio_rounded_exact)
            report.max_ratio_exact = std::max(report.max_ratio_exact.value_or(0.0),
                                              *row.ratio_rounded_exact);
        report.all_audits_passed = report.all_audits_passed && row.holding_passed &&
                                   row.ordering_passed && row.schedule_feasible;
    }
    if (ok_rows > 0) report.mean_ratio_lp = sum / ok_rows;
    return report;
}

} // namespace jrp
