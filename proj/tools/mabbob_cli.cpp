// mabbob: generate, calibrate, sample, evaluate, bench, features, metrics.

#include "mabbob/calibration.hpp"
#include "mabbob/ela.hpp"
#include "mabbob/errors.hpp"
#include "mabbob/generator.hpp"
#include "mabbob/harness.hpp"
#include "mabbob/io.hpp"
#include "mabbob/metrics.hpp"
#include "mabbob/rng.hpp"
#include "mabbob/sampling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fmt/core.h>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace mabbob;

namespace {

struct Options {
    int dim = 5;
    int count = 1;
    double threshold = 0.85;
    std::uint64_t seed = 1;
    int budget = 10000;
    int runs = 50;
    std::string agg = "midrange";
    bool pure_bbob = false;
    std::string out;

    std::string instances;
    std::string runlogs;
    std::string features;
    std::string points;
    std::vector<int> dims{2, 5, 10, 20, 40};
    int n = 50000;
    std::string design = "scrambled-sobol";
    std::vector<std::string> algorithms;
    unsigned threads = 0;
    int n_designs = 5;
    int points_per_dim = 1000;
    bool keep_undefined = false;
    int folds = 10;
};

// Mirrors the effective configuration next to the output.
void write_meta(const fs::path& target, const std::string& subcommand, json cfg)
{
    cfg["subcommand"] = subcommand;
    io::write_file_atomic(fs::path(target.string() + ".meta"), cfg.dump() + "\n");
}

void progress(const char* what, std::size_t done, std::size_t total)
{
    if (done == total || done % std::max<std::size_t>(1, total / 20) == 0) {
        std::cerr << fmt::format("[{}] {}/{}\n", what, done, total);
    }
}

std::vector<MAProblem> load_problems(const std::vector<ProblemSpec>& specs)
{
    std::vector<MAProblem> problems;
    problems.reserve(specs.size());
    for (const ProblemSpec& s : specs) {
        problems.push_back(make_problem(s));
    }
    return problems;
}

int cmd_generate(const Options& o)
{
    std::vector<ProblemSpec> specs;
    if (o.pure_bbob) {
        for (int fid = 1; fid <= bbob::kNumFunctions; ++fid) {
            for (int iid = 1; iid <= 5; ++iid) {
                specs.push_back(pure_bbob_spec(fid, iid, o.dim));
            }
        }
    } else {
        if (o.count < 1) {
            throw ParameterError("count", "must be >= 1");
        }
        for (int i = 0; i < o.count; ++i) {
            GeneratorConfig cfg{o.threshold, o.dim, derive_seed(o.seed, static_cast<std::uint64_t>(i)), 1};
            Rng rng(cfg.seed);
            specs.push_back(random_spec(rng, cfg));
        }
    }
    io::write_file_atomic(o.out, io::specs_to_json(specs));
    write_meta(o.out, "generate",
               {{"count", o.pure_bbob ? static_cast<int>(specs.size()) : o.count},
                {"dim", o.dim},
                {"threshold", o.threshold},
                {"seed", o.seed},
                {"pure_bbob", o.pure_bbob},
                {"out", o.out}});
    return 0;
}

int cmd_calibrate(const Options& o)
{
    const calibration::Aggregation agg = calibration::parse_aggregation(o.agg);
    const auto rows = calibration::estimate_all(o.dims, o.n, agg, o.seed);
    const auto med = calibration::median_factors(rows);
    std::string medians = "fid,factor\n";
    for (int fid = 1; fid <= bbob::kNumFunctions; ++fid) {
        medians += fmt::format("{},{}\n", fid, io::format_double(med[fid - 1]));
    }
    io::write_file_atomic(o.out, io::factors_to_csv(rows));
    const fs::path med_path = fs::path(o.out).replace_extension(".medians.csv");
    io::write_file_atomic(med_path, medians);
    write_meta(o.out, "calibrate",
               {{"dims", o.dims}, {"n", o.n}, {"agg", o.agg}, {"seed", o.seed}, {"out", o.out},
                {"medians", med_path.string()}});
    return 0;
}

int cmd_sample(const Options& o)
{
    sampling::SampleDesign d;
    if (o.design == "scrambled-sobol" || o.design == "sobol") {
        d = sampling::sobol(o.dim, o.n, o.seed, o.design == "scrambled-sobol");
    } else if (o.design == "uniform") {
        d = sampling::uniform(o.dim, o.n, o.seed);
    } else {
        throw ParameterError("design", "expected scrambled-sobol, sobol or uniform, got '" + o.design + "'");
    }
    io::write_file_atomic(o.out, io::design_to_csv(d.points));
    write_meta(o.out, "sample",
               {{"dim", o.dim}, {"n", o.n}, {"design", o.design}, {"seed", o.seed}, {"out", o.out}});
    return 0;
}

// Points file: index,x1,...,xd in raw coordinates (the box is [-5, 5]^d).
int cmd_evaluate(const Options& o)
{
    const auto specs = io::read_specs(o.instances);
    const auto problems = load_problems(specs);
    const std::string text = io::read_file(o.points);
    std::vector<std::vector<double>> points;
    std::size_t line = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string row = text.substr(start, end - start);
        start = end + 1;
        if (++line == 1 || row.empty()) {
            continue;
        }
        std::vector<double> x;
        std::size_t f = row.find(',');
        while (f != std::string::npos) {
            const std::size_t next = row.find(',', f + 1);
            const std::string cell = row.substr(f + 1, next == std::string::npos ? std::string::npos : next - f - 1);
            try {
                std::size_t used = 0;
                x.push_back(std::stod(cell, &used));
                if (used != cell.size()) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::logic_error&) {
                throw ParseError(o.points, line, "x" + std::to_string(x.size() + 1), "cannot parse '" + cell + "'");
            }
            f = next;
        }
        points.push_back(std::move(x));
    }
    std::string out = "problem_id,index,value\n";
    for (std::size_t p = 0; p < problems.size(); ++p) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (static_cast<int>(points[i].size()) != problems[p].dim()) {
                throw ParseError(o.points, i + 2, "", "point has " + std::to_string(points[i].size()) +
                                                          " coordinates, problem " + std::to_string(p) +
                                                          " needs " + std::to_string(problems[p].dim()));
            }
            out += fmt::format("{},{},{}\n", p, i, io::format_double(problems[p](points[i])));
        }
    }
    io::write_file_atomic(o.out, out);
    write_meta(o.out, "evaluate", {{"instances", o.instances}, {"points", o.points}, {"out", o.out}});
    return 0;
}

int cmd_bench(const Options& o)
{
    const auto specs = io::read_specs(o.instances);
    const auto problems = load_problems(specs);
    std::vector<harness::AlgorithmSpec> algs;
    if (o.algorithms.empty()) {
        algs = harness::portfolio();
    } else {
        for (const std::string& name : o.algorithms) {
            algs.push_back(harness::default_spec(harness::parse_algorithm(name)));
        }
    }
    if (o.budget < 1 || o.runs < 1) {
        throw ParameterError(o.budget < 1 ? "budget" : "runs", "must be >= 1");
    }
    const auto logs = harness::run_batch(problems, algs, o.budget, o.runs, o.seed, o.threads,
                                         [](std::size_t done, std::size_t total) { progress("bench", done, total); });
    std::vector<std::string> names;
    for (const auto& a : algs) {
        names.emplace_back(a.name());
    }
    io::write_file_atomic(o.out, io::runlogs_to_csv(logs));
    write_meta(o.out, "bench",
               {{"instances", o.instances}, {"budget", o.budget}, {"runs", o.runs}, {"seed", o.seed},
                {"algorithms", names}, {"out", o.out}});
    return 0;
}

int cmd_features(const Options& o)
{
    const auto specs = io::read_specs(o.instances);
    if (specs.empty()) {
        throw ParseError(o.instances, 0, "", "no instances");
    }
    for (const auto& s : specs) {
        if (s.dim != specs.front().dim) {
            throw ParameterError("instances", "all problems must share one dimension");
        }
    }
    const auto problems = load_problems(specs);
    ela::FeatureConfig cfg{o.n_designs, o.points_per_dim, o.seed};
    const auto table = ela::feature_table(problems, cfg, !o.keep_undefined);
    std::vector<int> ids(problems.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = static_cast<int>(i);
    }
    io::write_file_atomic(o.out, io::features_to_csv(ids, specs.front().dim, table));
    write_meta(o.out, "features",
               {{"instances", o.instances}, {"seed", o.seed}, {"designs", o.n_designs},
                {"points_per_dim", o.points_per_dim}, {"keep_undefined", o.keep_undefined}, {"out", o.out}});
    return 0;
}

int cmd_metrics(const Options& o)
{
    const auto logs = io::parse_runlogs(io::read_file(o.runlogs), o.runlogs);
    const auto table = metrics::auc_table(logs, metrics::targets());
    const auto ranks = metrics::rank_algorithms(table);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    io::write_file_atomic(dir / "auc_table.csv", io::auc_table_to_csv(table));
    io::write_file_atomic(dir / "ranks.csv", io::ranks_to_csv(ranks));
    io::write_file_atomic(dir / "rank_histogram.csv", io::rank_histogram_to_csv(metrics::rank_histogram(ranks)));

    std::map<std::string, std::map<int, std::vector<double>>> reps;
    std::set<int> in_table;
    for (const auto& r : table) {
        in_table.insert(r.problem_id);
    }
    if (!o.instances.empty()) {
        const auto specs = io::read_specs(o.instances);
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const int id = static_cast<int>(i);
            if (in_table.contains(id)) {
                reps["weights"][id] = std::vector<double>(specs[i].weights.begin(), specs[i].weights.end());
            }
        }
    }
    if (!o.features.empty()) {
        const auto fc = io::parse_features(io::read_file(o.features), o.features);
        for (std::size_t i = 0; i < fc.problem_ids.size(); ++i) {
            if (!in_table.contains(fc.problem_ids[i])) {
                continue;
            }
            std::vector<double> v;
            for (const auto& x : fc.table.rows[i]) {
                if (!x) {
                    throw ParseError(o.features, i + 2, "", "undefined feature; regenerate without --keep-undefined");
                }
                v.push_back(*x);
            }
            reps["ela"][fc.problem_ids[i]] = std::move(v);
        }
    }
    if (!reps.empty()) {
        const auto scores = metrics::selector_baseline(table, reps, o.folds, o.seed);
        io::write_file_atomic(dir / "selector_report.csv", io::selector_report_to_csv(scores));
        io::write_file_atomic(dir / "selector_losses.csv", io::selector_losses_to_csv(scores));
    }
    write_meta(dir / "metrics", "metrics",
               {{"runlogs", o.runlogs}, {"instances", o.instances}, {"features", o.features}, {"folds", o.folds},
                {"seed", o.seed}, {"out", o.out}});
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Many-affine BBOB problem generator and benchmarking pipeline"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("generate", "Write random problem specs (JSON)");
    gen->add_option("--count", o.count, "Number of problems")->capture_default_str();
    gen->add_option("--dim", o.dim, "Dimension")->capture_default_str();
    gen->add_option("--threshold", o.threshold, "Weight threshold T")->capture_default_str();
    gen->add_option("--seed", o.seed, "Master seed; problem i uses derive_seed(seed, i)")->capture_default_str();
    gen->add_flag("--pure-bbob", o.pure_bbob, "Emit the 24 x 5 one-hot BBOB set instead");
    gen->add_option("--out", o.out, "Output file")->required();

    auto* cal = app.add_subcommand("calibrate", "Estimate scale factors by random sampling");
    cal->add_option("--dims", o.dims, "Dimensions")->delimiter(',')->capture_default_str();
    cal->add_option("--n", o.n, "Samples per (function, dimension)")->capture_default_str();
    cal->add_option("--agg", o.agg, "Aggregation")
        ->check(CLI::IsMember({"min", "mean", "max", "midrange"}))
        ->capture_default_str();
    cal->add_option("--seed", o.seed, "Seed")->capture_default_str();
    cal->add_option("--out", o.out, "Output CSV; per-fid medians go to <out>.medians.csv")->required();

    auto* smp = app.add_subcommand("sample", "Write a design in [0,1]^d (Sobol' designs keep the initial zero point)");
    smp->add_option("--dim", o.dim, "Dimension")->capture_default_str();
    smp->add_option("--n", o.n, "Number of points")->capture_default_str();
    smp->add_option("--design", o.design, "scrambled-sobol, sobol or uniform")->capture_default_str();
    smp->add_option("--seed", o.seed, "Seed")->capture_default_str();
    smp->add_option("--out", o.out, "Output CSV")->required();

    auto* ev = app.add_subcommand("evaluate", "Evaluate every problem at every point");
    ev->add_option("--instances", o.instances, "Problem specs (JSON)")->required();
    ev->add_option("--points", o.points, "CSV index,x1,...,xd")->required();
    ev->add_option("--out", o.out, "Output CSV")->required();

    auto* bench = app.add_subcommand("bench", "Run the algorithm portfolio on every problem");
    bench->add_option("--instances", o.instances, "Problem specs (JSON)")->required();
    bench->add_option("--budget", o.budget, "Evaluations per run")->capture_default_str();
    bench->add_option("--runs", o.runs, "Runs per (problem, algorithm)")->capture_default_str();
    bench->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    bench->add_option("--algorithms", o.algorithms, "Subset of the portfolio")->delimiter(',');
    bench->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
    bench->add_option("--out", o.out, "Run-log CSV")->required();

    auto* feat = app.add_subcommand("features", "Compute ELA features");
    feat->add_option("--instances", o.instances, "Problem specs (JSON)")->required();
    feat->add_option("--seed", o.seed, "Design seed")->capture_default_str();
    feat->add_option("--designs", o.n_designs, "Independent designs averaged per problem")->capture_default_str();
    feat->add_option("--points-per-dim", o.points_per_dim, "Design size is this times dim")->capture_default_str();
    feat->add_flag("--keep-undefined", o.keep_undefined, "Keep feature columns that are undefined somewhere");
    feat->add_option("--out", o.out, "Feature CSV")->required();

    auto* met = app.add_subcommand("metrics", "AUC table, ranks and selector baseline");
    met->add_option("--runlogs", o.runlogs, "Run-log CSV")->required();
    met->add_option("--instances", o.instances, "Specs for the weight-based selector");
    met->add_option("--features", o.features, "Feature CSV for the ELA-based selector");
    met->add_option("--folds", o.folds, "Cross-validation folds")->capture_default_str();
    met->add_option("--seed", o.seed, "Fold shuffle seed")->capture_default_str();
    met->add_option("--out", o.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return cmd_generate(o);
        if (*cal) return cmd_calibrate(o);
        if (*smp) return cmd_sample(o);
        if (*ev) return cmd_evaluate(o);
        if (*bench) return cmd_bench(o);
        if (*feat) return cmd_features(o);
        if (*met) return cmd_metrics(o);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
