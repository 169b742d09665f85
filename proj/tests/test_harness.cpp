#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hamlab/cli.hpp"
#include "hamlab/harness.hpp"

using namespace hamlab;

namespace {

AlgoConfig test_config() {
    AlgoConfig config;  // defaults, independent of the environment
    return config;
}

// Exhaustive 1-minimality check: the predicate must fail under every single
// vertex deletion and every single edge deletion.
bool is_one_minimal(const Graph& g, PredicateKind kind, const AlgoConfig& config) {
    if (!evaluate_predicate(g, 0, kind, config)) return false;
    if (g.vertex_count() > 1) {
        for (int w = 0; w < g.vertex_count(); ++w) {
            Graph smaller(g.vertex_count() - 1);
            for (const auto& [u, v] : g.edges()) {
                if (u == w || v == w) continue;
                smaller.add_edge(u - (u > w ? 1 : 0), v - (v > w ? 1 : 0));
            }
            if (evaluate_predicate(smaller, 0, kind, config)) return false;
        }
    }
    for (const auto& edge : g.edges()) {
        Graph thinner(g.vertex_count());
        for (const auto& e : g.edges())
            if (e != edge) thinner.add_edge(e.first, e.second);
        if (evaluate_predicate(thinner, 0, kind, config)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("diff_run agreement on K3 and P3") {
    DiffReport yes = diff_run(named_graph("k3"), 0, test_config());
    CHECK(yes.oracle.yes);
    CHECK(yes.exact.yes);
    CHECK(yes.fuzzy.yes);
    CHECK(yes.flags.oracle_exact == std::optional<bool>{true});
    CHECK(yes.flags.oracle_fuzzy == std::optional<bool>{true});
    CHECK(yes.flags.exact_fuzzy == std::optional<bool>{true});
    CHECK(yes.flags.levelsets_containment == std::optional<bool>{true});
    CHECK(yes.flags.levelsets_equality == std::optional<bool>{true});
    CHECK(!yes.has_disagreement());

    DiffReport no = diff_run(named_graph("p3"), 0, test_config());
    CHECK(!no.oracle.yes);
    CHECK(!no.exact.yes);
    CHECK(!no.fuzzy.yes);
    CHECK(!no.has_disagreement());
}

TEST_CASE("stored flags always match recomputation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = generate_erdos_renyi(7, 0.45, seed);
        DiffReport r = diff_run(g, 0, test_config());
        DiffFlags again = recompute_flags(r);
        CHECK(r.flags.oracle_exact == again.oracle_exact);
        CHECK(r.flags.oracle_fuzzy == again.oracle_fuzzy);
        CHECK(r.flags.exact_fuzzy == again.exact_fuzzy);
        CHECK(r.flags.levelsets_containment == again.levelsets_containment);
        CHECK(r.flags.levelsets_equality == again.levelsets_equality);
        if (r.oracle.witness) CHECK(r.oracle.witness_valid);
        if (r.exact.witness) CHECK(r.exact.witness_valid);
        if (r.fuzzy.candidate) CHECK(r.fuzzy.candidate_verified);
    }
}

TEST_CASE("budget exhaustion is a report state, not a crash") {
    AlgoConfig config = test_config();
    config.exact_budget.max_nodes = 50;
    DiffReport r = diff_run(named_graph("k6"), 0, config);
    CHECK(r.exact.state == RunState::BudgetExhausted);
    CHECK(r.exact.budget_reason == "node-cap");
    CHECK(!r.flags.oracle_exact.has_value());
    CHECK(r.flags.oracle_fuzzy.has_value());  // the other two still compared
    Json j = r.to_json();
    CHECK(j["exact"]["state"] == "budget-exhausted");
}

TEST_CASE("diff_run skips solvers above their size thresholds") {
    AlgoConfig config = test_config();
    config.exact_max_n = 5;
    config.oracle_max_n = 5;
    Graph g = generate_erdos_renyi(6, 0.5, 3);
    DiffReport r = diff_run(g, 0, config);
    CHECK(r.exact.state == RunState::Skipped);
    CHECK(r.oracle.state == RunState::Skipped);
    CHECK(r.fuzzy.state == RunState::Ran);
    CHECK(!r.flags.oracle_fuzzy.has_value());
}

TEST_CASE("sweep totals and category sums") {
    SweepReport report = sweep_exhaustive(4, false, test_config(), 2);
    CHECK(report.graphs == 8 + 64);
    CHECK(report.oracle_yes + report.oracle_no + report.oracle_skipped == report.graphs);
    CHECK(report.exact_yes + report.exact_no + report.exact_budget_exhausted +
              report.exact_skipped ==
          report.graphs);
    CHECK(report.fuzzy_yes + report.fuzzy_no + report.fuzzy_time_capped == report.graphs);
    CHECK(report.levelsets_equal + report.levelsets_unequal == report.graphs);
    CHECK(report.exact_oracle_mismatches.empty());
    CHECK(report.fuzzy_neg_oracle_pos.empty());
    CHECK(report.containment_violations.empty());
    CHECK(report.invalid_witnesses == 0);
    // The only n=3 Hamiltonian graph is the triangle.
    CHECK(report.per_n[0].graphs == 8);
    CHECK(report.per_n[0].oracle_yes == 1);

    SweepReport again = sweep_exhaustive(4, false, test_config(), 4);
    CHECK(report.to_json(false).dump() == again.to_json(false).dump());
}

TEST_CASE("sweep respects the cap and the connected-only filter") {
    CHECK_THROWS_AS(sweep_exhaustive(7, false, test_config(), 1), CapExceeded);
    SweepReport all = sweep_exhaustive(3, false, test_config(), 1);
    SweepReport connected = sweep_exhaustive(3, true, test_config(), 1);
    CHECK(all.graphs == 8);
    CHECK(connected.graphs == 4);  // triangle, three paths
}

TEST_CASE("random campaigns replay byte-identically") {
    SweepReport a = campaign_random(8, 0.5, 60, 11, test_config(), 3);
    SweepReport b = campaign_random(8, 0.5, 60, 11, test_config(), 2);
    CHECK(a.graphs == 60);
    CHECK(a.to_json(false).dump() == b.to_json(false).dump());
    // Every embedded disagreement replays with the same verdicts.
    auto replay = [&](const std::vector<InstanceRef>& refs) {
        for (const auto& ref : refs) {
            Graph g = parse_graph(ref.edge_list);
            DiffReport r = diff_run(g, ref.start, test_config());
            CHECK(r.has_disagreement());
        }
    };
    replay(a.fuzzy_pos_oracle_neg);
    replay(a.extraction_failures);
}

TEST_CASE("campaigns skip the expensive solvers at large n") {
    SweepReport report = campaign_random(30, 0.15, 2, 5, test_config(), 1);
    CHECK(report.exact_skipped == 2);
    CHECK(report.oracle_skipped == 2);
    CHECK(report.fuzzy_yes + report.fuzzy_no == 2);
}

TEST_CASE("minimize shrinks while preserving the predicate") {
    AlgoConfig config = test_config();

    Graph p4 = named_graph("p4");
    Graph reduced = minimize(p4, PredicateKind::OracleNo, config);
    CHECK(evaluate_predicate(reduced, 0, PredicateKind::OracleNo, config));
    CHECK(is_one_minimal(reduced, PredicateKind::OracleNo, config));
    CHECK(reduced.vertex_count() <= 3);

    Graph k5 = named_graph("k5");
    Graph core = minimize(k5, PredicateKind::OracleYes, config);
    CHECK(core.vertex_count() == 3);
    CHECK(core.edge_count() == 3);
    CHECK(is_one_minimal(core, PredicateKind::OracleYes, config));

    CHECK_THROWS_AS(minimize(named_graph("p3"), PredicateKind::OracleYes, config), Error);
}

TEST_CASE("predicate parsing") {
    CHECK(predicate_from_name("fuzzy-pos-oracle-neg") == PredicateKind::FuzzyPosOracleNeg);
    CHECK_THROWS_AS(predicate_from_name("bogus"), Error);
}

TEST_CASE("fit_scaling recovers a cubic exactly") {
    std::vector<std::pair<int, double>> cubic;
    for (int n : {10, 20, 40, 60, 80}) cubic.emplace_back(n, std::pow(n, 3.0));
    ScalingFit fit = fit_scaling(cubic);
    CHECK(fit.exponent == doctest::Approx(3.0).epsilon(0.01));
    CHECK(fit.residual_rms < 1e-9);

    CHECK_THROWS_AS(fit_scaling({{10, 1.0}}), Error);
    CHECK_THROWS_AS(fit_scaling({{10, 1.0}, {20, 2.0}, {40, 3.0}}), Error);
    CHECK_THROWS_AS(fit_scaling({{10, 0.0}, {20, 2.0}, {40, 3.0}, {80, 4.0}}), Error);
    CHECK_THROWS_AS(
        fit_scaling({{10, 1.0}, {10, 2.0}, {10, 3.0}, {10, 4.0}}), Error);
}

TEST_CASE("bench produces per-instance records and a fit") {
    BenchReport report = bench_run({4, 5, 6, 7}, 0.6, 2, 9, test_config());
    CHECK(report.instances.size() == 8);
    CHECK(report.fit.has_value());
    Json canonical = report.to_json(false);
    CHECK(!canonical.contains("volatile"));
    Json full = report.to_json(true);
    CHECK(full.contains("volatile"));

    BenchReport again = bench_run({4, 5, 6, 7}, 0.6, 2, 9, test_config());
    CHECK(report.to_json(false).dump() == again.to_json(false).dump());
}

TEST_CASE("cli end-to-end") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hamlab_cli_test";
    fs::create_directories(dir);
    const fs::path graph_file = dir / "k3.txt";
    {
        std::ofstream out(graph_file);
        out << named_graph("k3").to_edge_list();
    }

    CHECK(run_cli({"solve", "--input", graph_file.string(), "--algo", "oracle"}) == kExitClean);
    CHECK(run_cli({"solve", "--named", "petersen", "--algo", "exact", "--format", "json"}) ==
          kExitClean);
    CHECK(run_cli({"solve", "--named", "k4", "--algo", "fuzzy"}) == kExitClean);
    CHECK(run_cli({"diff", "--input", graph_file.string()}) == kExitClean);

    const fs::path out_file = dir / "mini.txt";
    CHECK(run_cli({"minimize", "--named", "p4", "--predicate", "oracle-no", "--out",
                   out_file.string()}) == kExitClean);
    {
        std::ifstream in(out_file);
        std::string first;
        std::getline(in, first);
        CHECK(!first.empty());
    }

    CHECK(run_cli({"sweep", "--max-n", "7"}) == kExitError);  // refused without override
    CHECK(run_cli({"solve", "--named", "k3", "--algo", "wat"}) == kExitError);
    CHECK(run_cli({"minimize", "--named", "k3", "--predicate", "nope"}) == kExitError);
    CHECK(run_cli({"nonsense"}) == kExitError);

    const fs::path report_file = dir / "sweep.json";
    CHECK(run_cli({"sweep", "--max-n", "3", "--out", report_file.string(), "--canonical"}) ==
          kExitClean);
    {
        std::ifstream in(report_file);
        Json parsed = Json::parse(in);
        CHECK(parsed["schema_version"] == kSchemaVersion);
        CHECK(parsed["totals"]["graphs"] == 8);
        CHECK(!parsed.contains("volatile"));
    }
    fs::remove_all(dir);
}
