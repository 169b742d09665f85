#include "hamlab/layered_exact.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hamlab {

namespace {

using Clock = std::chrono::steady_clock;

Clock::time_point deadline_for(const ExactBudget& budget, Clock::time_point from) {
    return from + std::chrono::milliseconds(budget.time_cap_ms);
}

void extend_one_level(LayeredDag& dag, const Graph& g, const ExactBudget& budget,
                      Clock::time_point deadline) {
    const int frontier = dag.level_count() - 1;
    const int start = dag.start();
    std::vector<int> frontier_tags = dag.level(frontier);

    dag.begin_level();
    std::size_t since_time_check = 0;
    for (int u : frontier_tags) {
        const int u_meaning = dag.node(u).meaning;
        for (int v : g.neighbors(u_meaning)) {
            if (v == start) continue;  // re-entry is checked only at acceptance
            if (exact_necessary(dag, u, v)) continue;
            if (dag.node_count() >= budget.max_nodes)
                throw BudgetExhausted("node-cap", dag.stats());
            if (++since_time_check >= 4096) {
                since_time_check = 0;
                if (Clock::now() > deadline) throw BudgetExhausted("time-cap", dag.stats());
            }
            dag.add_node(frontier + 1, v, u);
        }
    }
    // Line-5 style scrub: drop nodes not on any root path. On the prefix
    // tree every node is created with a live parent, so nothing qualifies.
}

}  // namespace

std::size_t DagStats::total_nodes() const {
    return std::accumulate(nodes_per_level.begin(), nodes_per_level.end(), std::size_t{0});
}

std::size_t DagStats::total_arcs() const {
    return std::accumulate(arcs_per_level.begin(), arcs_per_level.end(), std::size_t{0});
}

LayeredDag::LayeredDag(int vertex_count, int start) : n_(vertex_count), start_(start) {
    if (start < 0 || start >= vertex_count) throw Error("layered dag: start out of range");
    levels_.emplace_back();
    add_node(0, start, -1);
}

int LayeredDag::add_node(int level, int meaning, int parent_tag) {
    const int tag = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{level, meaning, tag, parent_tag});
    levels_[static_cast<std::size_t>(level)].push_back(tag);
    return tag;
}

LevelSets LayeredDag::level_sets() const {
    LevelSets sets(static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < levels_.size() && i < sets.size(); ++i) {
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        for (int tag : levels_[i]) seen[nodes_[static_cast<std::size_t>(tag)].meaning] = 1;
        for (int v = 0; v < n_; ++v)
            if (seen[v]) sets[i].push_back(v);
    }
    return sets;
}

DagStats LayeredDag::stats() const {
    DagStats s;
    s.nodes_per_level.reserve(levels_.size());
    s.arcs_per_level.reserve(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        s.nodes_per_level.push_back(levels_[i].size());
        // one arc per non-root node at this level
        s.arcs_per_level.push_back(i == 0 ? 0 : levels_[i].size());
    }
    return s;
}

std::vector<int> LayeredDag::path_to(int tag) const {
    std::vector<int> path;
    for (int t = tag; t != -1; t = nodes_[static_cast<std::size_t>(t)].parent)
        path.push_back(nodes_[static_cast<std::size_t>(t)].meaning);
    std::reverse(path.begin(), path.end());
    return path;
}

std::string LayeredDag::dump() const {
    std::ostringstream os;
    for (const auto& node : nodes_) {
        os << node.level << ' ' << node.tag << ' ' << node.meaning << ' ';
        if (node.parent < 0)
            os << '-';
        else
            os << node.parent;
        os << '\n';
    }
    return os.str();
}

bool exact_necessary(const LayeredDag& dag, int node_tag, int v) {
    // Deleting every meaning-v node from the ancestor sub-DAG kills the one
    // root path iff v appears on it (the queried node included).
    for (int t = node_tag; t != -1; t = dag.node(t).parent)
        if (dag.node(t).meaning == v) return true;
    return false;
}

void exact_extend_level(LayeredDag& dag, const Graph& g, const ExactBudget& budget) {
    extend_one_level(dag, g, budget, deadline_for(budget, Clock::now()));
}

LayeredDag exact_build(const Graph& g, int start, const ExactBudget& budget) {
    const auto deadline = deadline_for(budget, Clock::now());
    LayeredDag dag(g.vertex_count(), start);
    for (int level = 1; level < g.vertex_count(); ++level)
        extend_one_level(dag, g, budget, deadline);
    return dag;
}

Decision exact_decide(const Graph& g, int start, const ExactBudget& budget) {
    const auto t0 = Clock::now();
    LayeredDag dag = exact_build(g, start, budget);

    Decision decision;
    decision.level_sets = dag.level_sets();
    decision.stats = dag.stats();

    const int n = g.vertex_count();
    if (n >= 3) {
        for (int tag : dag.level(n - 1)) {
            if (!g.has_edge(dag.node(tag).meaning, start)) continue;
            decision.has_circuit = true;
            decision.witness = Circuit{dag.path_to(tag)};  // lowest tag = lex-smallest path
            break;
        }
    }
    decision.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return decision;
}

}  // namespace hamlab
