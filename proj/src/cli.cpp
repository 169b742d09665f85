#include "hamlab/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hamlab/harness.hpp"

namespace hamlab {

namespace {

Graph load_graph(const std::string& input_path, const std::string& name) {
    if (!name.empty()) return named_graph(name);
    if (input_path.empty()) throw Error("pass --input FILE or --named NAME");
    std::ifstream in(input_path);
    if (!in) throw Error("cannot open input file: " + input_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + out_path);
    out << payload;
}

std::string circuit_text(const std::vector<int>& vertices) {
    std::string s;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(vertices[i]);
    }
    return s;
}

void write_csv(const std::string& path, const SweepReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open csv file: " + path);
    out << "n,graphs,oracle_yes,exact_nodes,fuzzy_nodes,fuzzy_transitions\n";
    for (const auto& row : report.per_n)
        out << row.n << ',' << row.graphs << ',' << row.oracle_yes << ',' << row.exact_nodes
            << ',' << row.fuzzy_nodes << ',' << row.fuzzy_transitions << '\n';
}

int cmd_solve(const std::string& input, const std::string& name, const std::string& algo,
              int start, const std::string& format, const std::string& dump_path) {
    Graph g = load_graph(input, name);
    const AlgoConfig config = AlgoConfig::from_env();
    Json j;
    std::string text;

    if (algo == "oracle") {
        auto witness = oracle_has_circuit(g, start);
        j = Json{{"schema_version", kSchemaVersion},
                 {"kind", "solve"},
                 {"algo", "oracle"},
                 {"graph", Json{{"n", g.vertex_count()}, {"m", g.edge_count()}}},
                 {"start", start},
                 {"verdict", witness ? "yes" : "no"}};
        text = std::string("oracle: ") + (witness ? "circuit " + circuit_text(witness->vertices)
                                                  : std::string("no circuit"));
        if (witness) j["witness"] = witness->vertices;
    } else if (algo == "exact") {
        try {
            Decision d = exact_decide(g, start, config.exact_budget);
            j = Json{{"schema_version", kSchemaVersion},
                     {"kind", "solve"},
                     {"algo", "exact"},
                     {"graph", Json{{"n", g.vertex_count()}, {"m", g.edge_count()}}},
                     {"start", start},
                     {"verdict", d.has_circuit ? "yes" : "no"},
                     {"nodes", d.stats.total_nodes()},
                     {"level_sets", Json(d.level_sets)}};
            if (d.witness) j["witness"] = d.witness->vertices;
            text = std::string("exact: ") +
                   (d.has_circuit ? "circuit " + circuit_text(d.witness->vertices)
                                  : std::string("no circuit")) +
                   " (" + std::to_string(d.stats.total_nodes()) + " nodes)";
            if (!dump_path.empty())
                emit(dump_path, exact_build(g, start, config.exact_budget).dump());
        } catch (const BudgetExhausted& e) {
            j = Json{{"schema_version", kSchemaVersion},
                     {"kind", "solve"},
                     {"algo", "exact"},
                     {"start", start},
                     {"verdict", "budget-exhausted"},
                     {"budget_reason", e.reason},
                     {"partial_nodes", e.partial.total_nodes()}};
            text = "exact: budget exhausted (" + e.reason + ") after " +
                   std::to_string(e.partial.total_nodes()) + " nodes";
        }
    } else if (algo == "fuzzy") {
        FuzzyDecision d = fuzzy_decide(g, start, config.fuzzy_config);
        j = Json{{"schema_version", kSchemaVersion},
                 {"kind", "solve"},
                 {"algo", "fuzzy"},
                 {"graph", Json{{"n", g.vertex_count()}, {"m", g.edge_count()}}},
                 {"start", start},
                 {"verdict", d.nonempty ? "yes" : "no"},
                 {"nodes", d.stats.node_count},
                 {"transitions", d.stats.transition_count},
                 {"extraction_failed", d.stats.extraction_failed},
                 {"level_sets", Json(d.level_sets)}};
        if (d.candidate) {
            j["candidate"] = d.candidate->vertices;
            j["candidate_verified"] = d.candidate_verified;
        }
        text = std::string("fuzzy: ") + (d.nonempty ? "nonempty" : "empty");
        if (d.candidate)
            text += ", candidate " + circuit_text(d.candidate->vertices) +
                    (d.candidate_verified ? " (verified)" : " (unverified)");
        else if (d.nonempty)
            text += ", extraction failed";
        if (!dump_path.empty()) {
            StateSetDag dag = fuzzy_init(g, start);
            for (int level = 1; level < g.vertex_count(); ++level) fuzzy_extend_level(dag, g);
            emit(dump_path, dag.dump());
        }
    } else {
        throw Error("unknown algo '" + algo + "' (oracle|exact|fuzzy)");
    }

    if (format == "json")
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text << '\n';
    return kExitClean;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"hamlab: layered exact and state-set Hamiltonian-circuit solvers "
                 "with a differential-testing harness"};
    app.require_subcommand(1);

    // solve
    std::string input, name, algo = "oracle", format = "text", dump_path;
    int start = 0;
    auto* solve = app.add_subcommand("solve", "run one algorithm on one graph");
    solve->add_option("--input", input, "edge-list file");
    solve->add_option("--named", name, "catalog graph name instead of --input");
    solve->add_option("--algo", algo, "oracle|exact|fuzzy")->required();
    solve->add_option("--start", start, "start vertex (default 0)");
    solve->add_option("--format", format, "text|json");
    solve->add_option("--dump", dump_path, "write the layered/state-set structure dump here");

    // diff
    std::string diff_input, diff_name, diff_out;
    int diff_start = 0;
    bool diff_canonical = false;
    auto* diff = app.add_subcommand("diff", "run oracle, exact and fuzzy and compare");
    diff->add_option("--input", diff_input, "edge-list file");
    diff->add_option("--named", diff_name, "catalog graph name instead of --input");
    diff->add_option("--start", diff_start, "start vertex (default 0)");
    diff->add_option("--out", diff_out, "write the JSON report here (default stdout)");
    diff->add_flag("--canonical", diff_canonical, "omit volatile fields (timings)");

    // sweep
    int sweep_max_n = 0, sweep_threads = 0;
    bool sweep_connected = false, sweep_allow_large = false, sweep_canonical = false;
    std::string sweep_out, sweep_csv;
    auto* sweep = app.add_subcommand("sweep", "diff every labeled graph with 3 <= n <= N");
    sweep->add_option("--max-n", sweep_max_n, "largest n to sweep")->required();
    sweep->add_flag("--connected-only", sweep_connected, "skip disconnected graphs");
    sweep->add_flag("--allow-large", sweep_allow_large, "lift the n <= 6 sweep cap");
    sweep->add_option("--threads", sweep_threads, "worker threads (default: hardware)");
    sweep->add_option("--out", sweep_out, "write the JSON report here (default stdout)");
    sweep->add_option("--csv", sweep_csv, "also write per-n CSV summary rows");
    sweep->add_flag("--canonical", sweep_canonical, "omit volatile fields (timings)");

    // random
    int rnd_n = 0, rnd_trials = 0, rnd_threads = 0;
    double rnd_p = 0.0;
    std::uint64_t rnd_seed = 0;
    bool rnd_canonical = false;
    std::string rnd_out, rnd_csv;
    auto* random = app.add_subcommand("random", "diff seeded Erdos-Renyi instances");
    random->add_option("--n", rnd_n, "vertex count")->required();
    random->add_option("--p", rnd_p, "edge probability")->required();
    random->add_option("--trials", rnd_trials, "instance count")->required();
    random->add_option("--seed", rnd_seed, "campaign seed")->required();
    random->add_option("--threads", rnd_threads, "worker threads (default: hardware)");
    random->add_option("--out", rnd_out, "write the JSON report here (default stdout)");
    random->add_option("--csv", rnd_csv, "also write per-n CSV summary rows");
    random->add_flag("--canonical", rnd_canonical, "omit volatile fields (timings)");

    // minimize
    std::string min_input, min_name, min_predicate, min_out;
    auto* minimize_cmd = app.add_subcommand("minimize", "shrink a graph preserving a predicate");
    minimize_cmd->add_option("--input", min_input, "edge-list file");
    minimize_cmd->add_option("--named", min_name, "catalog graph name instead of --input");
    minimize_cmd->add_option("--predicate", min_predicate, "disagreement kind")->required();
    minimize_cmd->add_option("--out", min_out, "write the reduced edge list here (default stdout)");

    // bench
    std::string bench_n_list, bench_out;
    double bench_p = 0.3;
    int bench_trials = 3;
    std::uint64_t bench_seed = 1;
    bool bench_canonical = false;
    auto* bench = app.add_subcommand("bench", "time fuzzy_decide and fit the scaling exponent");
    bench->add_option("--n-list", bench_n_list, "comma-separated n values")->required();
    bench->add_option("--p", bench_p, "edge probability");
    bench->add_option("--trials", bench_trials, "instances per n");
    bench->add_option("--seed", bench_seed, "bench seed");
    bench->add_option("--out", bench_out, "write the JSON report here (default stdout)");
    bench->add_flag("--canonical", bench_canonical, "omit volatile fields (timings and fit)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitClean : kExitError;
    }

    try {
        const AlgoConfig config = AlgoConfig::from_env();
        if (solve->parsed()) return cmd_solve(input, name, algo, start, format, dump_path);
        if (diff->parsed()) {
            Graph g = load_graph(diff_input, diff_name);
            DiffReport report = diff_run(g, diff_start, config);
            emit(diff_out, report.to_json(!diff_canonical).dump(2));
            return report.has_disagreement() ? kExitDisagreements : kExitClean;
        }
        if (sweep->parsed()) {
            const int cap = sweep_allow_large ? sweep_max_n : GraphEnumerator::kDefaultCap;
            SweepReport report =
                sweep_exhaustive(sweep_max_n, sweep_connected, config, sweep_threads, cap);
            emit(sweep_out, report.to_json(!sweep_canonical).dump(2));
            if (!sweep_csv.empty()) write_csv(sweep_csv, report);
            return report.exit_code();
        }
        if (random->parsed()) {
            SweepReport report =
                campaign_random(rnd_n, rnd_p, rnd_trials, rnd_seed, config, rnd_threads);
            emit(rnd_out, report.to_json(!rnd_canonical).dump(2));
            if (!rnd_csv.empty()) write_csv(rnd_csv, report);
            return report.exit_code();
        }
        if (minimize_cmd->parsed()) {
            Graph g = load_graph(min_input, min_name);
            Graph reduced = minimize(g, predicate_from_name(min_predicate), config);
            emit(min_out, reduced.to_edge_list());
            return kExitClean;
        }
        if (bench->parsed()) {
            std::vector<int> n_values;
            std::stringstream ss(bench_n_list);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) n_values.push_back(std::stoi(item));
            BenchReport report = bench_run(n_values, bench_p, bench_trials, bench_seed, config);
            emit(bench_out, report.to_json(!bench_canonical).dump(2));
            return kExitClean;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace hamlab
