#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jrp/json_io.hpp"

namespace {

using jrp::json;

json read_json(const std::string& path) {
    if (path == "-") {
        json j;
        std::cin >> j;
        return j;
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream& stream() { return file ? *file : std::cout; }

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw std::runtime_error("cannot open " + path);
        }
    }
};

jrp::PricingMode parse_pricing(const std::string& s) {
    if (s == "exact") return jrp::PricingMode::ExactEnumeration;
    if (s == "tsp-dp") return jrp::PricingMode::ExactTspDp;
    if (s == "garg") return jrp::PricingMode::GargApprox;
    throw CLI::ValidationError("--pricing", "expected exact|tsp-dp|garg");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver and experiment harness for joint inventory ordering"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double tol = 1e-7;
    int threads = 1;
    std::string out_path;
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--tol", tol, "numeric tolerance for LP pricing");
    app.add_option("--threads", threads, "worker threads for batch runs");
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    // gen
    auto* gen = app.add_subcommand("gen", "generate random instances");
    std::string gen_family = "jrp_additive";
    jrp::GenSpec spec;
    int gen_count = 1;
    std::uint64_t gen_stream = 0;
    int gen_lifetime = -1;
    gen->add_option("--family", gen_family,
                    "jrp_additive|jrp_table|jrp_cardinality|irp_euclidean|"
                    "irp_random_metric");
    gen->add_option("--n-min", spec.n_min);
    gen->add_option("--n-max", spec.n_max);
    gen->add_option("--t-min", spec.t_min);
    gen->add_option("--t-max", spec.t_max);
    gen->add_option("--density", spec.density);
    gen->add_option("--alpha", spec.alpha);
    gen->add_option("--rate-min", spec.rate_min);
    gen->add_option("--rate-max", spec.rate_max);
    gen->add_option("--lifetime", gen_lifetime, "perishable lifetime (-1 = off)");
    gen->add_option("--count", gen_count, "instances to emit");
    gen->add_option("--stream", gen_stream, "first stream id");

    // lp
    auto* lp_cmd = app.add_subcommand("lp", "solve the relaxation");
    std::string lp_input = "-", lp_pricing = "exact";
    int lp_max_columns = 10000;
    lp_cmd->add_option("input", lp_input, "instance JSON file ('-' = stdin)");
    lp_cmd->add_option("--pricing", lp_pricing, "exact|tsp-dp|garg");
    lp_cmd->add_option("--max-columns", lp_max_columns);

    // round
    auto* round_cmd = app.add_subcommand("round", "round an LP solution");
    std::string round_input = "-", round_lp_path;
    int rho_override = -1;
    round_cmd->add_option("input", round_input, "instance JSON file");
    round_cmd->add_option("--lp", round_lp_path,
                          "LP solution JSON (omitted: solved here, exact pricing)");
    round_cmd->add_option("--rho-override", rho_override, "force rho (-1 = off)");

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "brute-force optimum");
    std::string exact_input = "-";
    exact_cmd->add_option("input", exact_input, "instance JSON file");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "run pipeline and all audits");
    std::string audit_input = "-";
    int audit_rho = -1;
    audit_cmd->add_option("input", audit_input, "instance JSON file");
    audit_cmd->add_option("--rho-override", audit_rho, "force rho (-1 = off)");

    // ratio-tsp
    auto* ratio_cmd = app.add_subcommand("ratio-tsp", "minimum ratio TSP");
    std::string ratio_input = "-", ratio_mode = "exact";
    ratio_cmd->add_option("input", ratio_input, "{matrix, rewards} JSON file");
    ratio_cmd->add_option("--mode", ratio_mode, "exact|garg");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "batch pipeline runs");
    std::string bench_family = "jrp_additive", bench_pricing = "exact";
    jrp::GenSpec bench_spec;
    int bench_count = 10, bench_lifetime = -1;
    bool bench_exact = false;
    bench_cmd->add_option("--family", bench_family);
    bench_cmd->add_option("--count", bench_count);
    bench_cmd->add_option("--n-min", bench_spec.n_min);
    bench_cmd->add_option("--n-max", bench_spec.n_max);
    bench_cmd->add_option("--t-min", bench_spec.t_min);
    bench_cmd->add_option("--t-max", bench_spec.t_max);
    bench_cmd->add_option("--density", bench_spec.density);
    bench_cmd->add_option("--alpha", bench_spec.alpha);
    bench_cmd->add_option("--lifetime", bench_lifetime, "perishable (-1 = off)");
    bench_cmd->add_option("--pricing", bench_pricing, "exact|tsp-dp|garg");
    bench_cmd->add_flag("--exact", bench_exact, "also run the brute-force oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        Output out(out_path);
        bool audits_passed = true;

        if (*gen) {
            spec.seed = seed;
            spec.family = jrp::parse_gen_family(gen_family);
            if (gen_lifetime >= 0) spec.lifetime = gen_lifetime;
            for (int c = 0; c < gen_count; ++c) {
                jrp::Instance inst =
                    jrp::generate_instance(spec, gen_stream + c);
                out.stream() << jrp::instance_to_json(inst).dump() << "\n";
            }
        } else if (*lp_cmd) {
            jrp::Instance inst = jrp::instance_from_json(read_json(lp_input));
            jrp::LPSolution sol = jrp::solve_lp(inst, parse_pricing(lp_pricing),
                                                tol, lp_max_columns);
            out.stream() << jrp::lp_solution_to_json(sol).dump() << "\n";
        } else if (*round_cmd) {
            jrp::Instance inst = jrp::instance_from_json(read_json(round_input));
            jrp::LPSolution sol =
                round_lp_path.empty()
                    ? jrp::solve_lp(inst, jrp::PricingMode::ExactEnumeration, tol)
                    : jrp::lp_solution_from_json(read_json(round_lp_path),
                                                 inst.num_elements);
            std::optional<int> rho;
            if (rho_override >= 2) rho = rho_override;
            jrp::RoundingResult res = jrp::round_lp(inst, sol, rho);
            jrp::HoldingAudit audit = jrp::audit_holding(inst, sol, res.trace);
            audits_passed = audit.passed;
            json j = {{"schedule", jrp::schedule_to_json(res.schedule)},
                      {"trace", jrp::trace_to_json(res.trace)},
                      {"cost", jrp::cost_report_to_json(res.cost)},
                      {"holding_audit", jrp::holding_audit_to_json(audit)}};
            out.stream() << j.dump() << "\n";
        } else if (*exact_cmd) {
            jrp::Instance inst = jrp::instance_from_json(read_json(exact_input));
            jrp::ExactResult res = jrp::exact_opt(inst);
            out.stream() << jrp::exact_result_to_json(res).dump() << "\n";
        } else if (*audit_cmd) {
            jrp::Instance inst = jrp::instance_from_json(read_json(audit_input));
            jrp::PipelineOptions opts;
            opts.tol = tol;
            if (audit_rho >= 2) opts.rho_override = audit_rho;
            jrp::PipelineResult res = jrp::run_pipeline(inst, opts);
            audits_passed =
                res.holding_audit.passed && res.ordering_audit->passed;
            json j = {{"lp", jrp::lp_solution_to_json(res.lp)},
                      {"trace", jrp::trace_to_json(res.rounding.trace)},
                      {"cost", jrp::cost_report_to_json(res.rounding.cost)},
                      {"holding_audit",
                       jrp::holding_audit_to_json(res.holding_audit)},
                      {"covering", jrp::covering_to_json(*res.covering)},
                      {"ordering_audit",
                       jrp::ordering_audit_to_json(*res.ordering_audit)},
                      {"all_passed", audits_passed}};
            out.stream() << j.dump() << "\n";
        } else if (*ratio_cmd) {
            jrp::RatioInstance ri =
                jrp::ratio_instance_from_json(read_json(ratio_input));
            jrp::RatioResult res = ratio_mode == "garg" ? jrp::min_ratio_garg(ri)
                                                        : jrp::min_ratio_exact(ri);
            out.stream() << jrp::ratio_result_to_json(res, ratio_mode).dump()
                         << "\n";
        } else if (*bench_cmd) {
            bench_spec.seed = seed;
            bench_spec.family = jrp::parse_gen_family(bench_family);
            if (bench_lifetime >= 0) bench_spec.lifetime = bench_lifetime;
            jrp::BenchJob job;
            job.spec = bench_spec;
            job.count = bench_count;
            job.options.pricing = parse_pricing(bench_pricing);
            job.options.tol = tol;
            job.options.run_exact = bench_exact;
            jrp::BenchReport report = jrp::run_bench({job}, threads);
            for (const auto& row : report.rows)
                out.stream() << jrp::pipeline_row_to_json(row).dump() << "\n";
            out.stream() << jrp::bench_summary_to_json(report).dump() << "\n";
            audits_passed = report.all_audits_passed;
        }

        return audits_passed ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
