#include <doctest.h>

#include <algorithm>
#include <set>

#include "hamlab/graph.hpp"
#include "hamlab/layered_exact.hpp"
#include "hamlab/oracle.hpp"
#include "support/independent.hpp"

using namespace hamlab;
namespace ts = hamlab::testsupport;

namespace {

std::vector<std::size_t> level_sizes(const LayeredDag& dag) {
    std::vector<std::size_t> sizes;
    for (int i = 0; i < dag.level_count(); ++i) sizes.push_back(dag.level(i).size());
    return sizes;
}

}  // namespace

TEST_CASE("exact_build stores the simple-path trie") {
    LayeredDag k3 = exact_build(named_graph("k3"), 0);
    CHECK(level_sizes(k3) == std::vector<std::size_t>{1, 2, 2});
    CHECK(k3.level_sets() == LevelSets{{0}, {1, 2}, {1, 2}});

    LayeredDag p3 = exact_build(named_graph("p3"), 0);
    CHECK(level_sizes(p3) == std::vector<std::size_t>{1, 1, 1});

    // K4's deepest level: derived by brute-force path enumeration (3! = 6).
    Graph k4 = named_graph("k4");
    LayeredDag dag4 = exact_build(k4, 0);
    auto expected = ts::simple_paths(k4, 0, 3);
    CHECK(dag4.level(3).size() == expected.size());
    CHECK(dag4.level(3).size() == 6);

    std::set<std::vector<int>> stored;
    for (int tag : dag4.level(3)) stored.insert(dag4.path_to(tag));
    std::set<std::vector<int>> wanted(expected.begin(), expected.end());
    CHECK(stored == wanted);
}

TEST_CASE("exact_extend_level grows one level at a time") {
    Graph k3 = named_graph("k3");
    LayeredDag dag(k3.vertex_count(), 0);
    exact_extend_level(dag, k3);
    CHECK(dag.level(1).size() == 2);
    exact_extend_level(dag, k3);
    REQUIRE(dag.level(2).size() == 2);
    // node(1)'s child means 2; node(2)'s child means 1
    CHECK(dag.node(dag.level(2)[0]).meaning == 2);
    CHECK(dag.node(dag.level(2)[1]).meaning == 1);

    Graph p3 = named_graph("p3");
    LayeredDag pd(p3.vertex_count(), 0);
    exact_extend_level(pd, p3);
    exact_extend_level(pd, p3);
    REQUIRE(pd.level(2).size() == 1);
    CHECK(pd.node(pd.level(2)[0]).meaning == 2);

    Graph star = named_graph("k13");
    LayeredDag sd(star.vertex_count(), 0);
    exact_extend_level(sd, star);
    CHECK(sd.level(1).size() == 3);
    exact_extend_level(sd, star);
    CHECK(sd.level(2).empty());  // every leaf's only neighbor is the start
}

TEST_CASE("exact_necessary is the ancestor-path membership test") {
    Graph k3 = named_graph("k3");
    LayeredDag dag(3, 0);
    exact_extend_level(dag, k3);
    const int node1 = dag.level(1)[0];
    CHECK(dag.node(node1).meaning == 1);
    CHECK(!exact_necessary(dag, node1, 2));
    CHECK(exact_necessary(dag, node1, 1));  // deleting the node itself

    Graph p3 = named_graph("p3");
    LayeredDag pd = exact_build(p3, 0);
    const int end = pd.level(2)[0];
    CHECK(exact_necessary(pd, end, 1));

    // With full path storage each deepest K4 node has a unique ancestor path,
    // so exactly its own intermediate vertex is necessary.
    Graph k4 = named_graph("k4");
    LayeredDag d4 = exact_build(k4, 0);
    for (int tag : d4.level(2)) {
        auto path = d4.path_to(tag);
        for (int v = 1; v < 4; ++v) {
            const bool on_path = std::find(path.begin(), path.end(), v) != path.end();
            CHECK(exact_necessary(d4, tag, v) == on_path);
        }
    }
}

TEST_CASE("exact_decide on the named graphs") {
    Decision k3 = exact_decide(named_graph("k3"), 0);
    CHECK(k3.has_circuit);
    REQUIRE(k3.witness.has_value());
    CHECK(k3.witness->vertices == std::vector<int>{0, 1, 2});

    CHECK(!exact_decide(named_graph("p3"), 0).has_circuit);
    CHECK(!exact_decide(named_graph("petersen"), 0).has_circuit);
    CHECK(!oracle_has_circuit(named_graph("petersen"), 0).has_value());
}

TEST_CASE("exact matches the oracle exhaustively up to n = 5") {
    for (int n = 3; n <= 5; ++n) {
        GraphEnumerator e(n);
        while (e.has_next()) {
            Graph g = e.next();
            Decision d = exact_decide(g, 0);
            auto oracle = oracle_has_circuit(g, 0);
            CHECK(d.has_circuit == oracle.has_value());
            CHECK(d.level_sets == oracle_level_sets(g, 0));
            if (d.witness) CHECK(is_valid_circuit(g, *d.witness, 0));
            if (d.witness && oracle) CHECK(d.witness->vertices == oracle->vertices);
        }
    }
}

TEST_CASE("root-to-node walks never repeat a meaning") {
    detail::SplitMix64 rng{2024};
    for (int round = 0; round < 12; ++round) {
        Graph g = generate_erdos_renyi(8, 0.5, rng.next());
        LayeredDag dag = exact_build(g, 0);
        for (int level = 0; level < dag.level_count(); ++level) {
            if (dag.level(level).empty()) continue;
            for (int probe = 0; probe < 8; ++probe) {
                const auto& tags = dag.level(level);
                int tag = tags[static_cast<std::size_t>(rng.next() % tags.size())];
                auto path = dag.path_to(tag);
                std::set<int> distinct(path.begin(), path.end());
                CHECK(distinct.size() == path.size());
            }
        }
    }
}

TEST_CASE("empty level forces a no") {
    Graph star = named_graph("k13");
    Decision d = exact_decide(star, 0);
    CHECK(!d.has_circuit);
    CHECK(d.level_sets[2].empty());
    CHECK(d.level_sets[3].empty());
}

TEST_CASE("node budget trips cleanly with partial stats") {
    ExactBudget tiny;
    tiny.max_nodes = 10;
    try {
        exact_build(named_graph("k6"), 0, tiny);
        FAIL("expected BudgetExhausted");
    } catch (const BudgetExhausted& e) {
        CHECK(e.reason == "node-cap");
        CHECK(e.partial.total_nodes() >= 10);
        CHECK(!e.partial.nodes_per_level.empty());
    }
}

TEST_CASE("tags are consecutive creation order and the dump is stable") {
    LayeredDag dag = exact_build(named_graph("k3"), 0);
    for (std::size_t t = 0; t < dag.node_count(); ++t)
        CHECK(dag.node(static_cast<int>(t)).tag == static_cast<int>(t));
    CHECK(dag.dump() ==
          "0 0 0 -\n"
          "1 1 1 0\n"
          "1 2 2 0\n"
          "2 3 2 1\n"
          "2 4 1 2\n");
}
