#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamlab/graph.hpp"
#include "hamlab/level_sets.hpp"

namespace hamlab {

// Resource limits for the exact layered search; the structure it grows is
// exponential in the worst case, so both caps matter.
struct ExactBudget {
    std::size_t max_nodes = 10'000'000;
    std::int64_t time_cap_ms = 60'000;
};

struct DagStats {
    std::vector<std::size_t> nodes_per_level;
    std::vector<std::size_t> arcs_per_level;  // arcs into each level; level 0 has none

    std::size_t total_nodes() const;
    std::size_t total_arcs() const;
};

// Raised when the layered search runs out of its node or time budget.
// Carries what was built so far; the decision is unknown.
struct BudgetExhausted : Error {
    BudgetExhausted(const std::string& reason_, DagStats partial_)
        : Error("budget exhausted: " + reason_), reason(reason_), partial(std::move(partial_)) {}
    std::string reason;  // "node-cap" or "time-cap"
    DagStats partial;
};

// Level-by-level store of every simple path out of the start vertex, kept as
// a prefix tree: one node per distinct path prefix, one arc per extension.
// Level i nodes end paths of exactly i edges. A node pairs the underlying
// graph vertex (meaning) with a unique identity (tag); tags are consecutive
// integers in creation order, so builds replay identically.
class LayeredDag {
  public:
    struct Node {
        int level;
        int meaning;
        int tag;
        int parent;  // parent tag; -1 for the root
    };

    LayeredDag(int vertex_count, int start);

    int start() const { return start_; }
    int vertex_count() const { return n_; }
    int level_count() const { return static_cast<int>(levels_.size()); }
    const std::vector<int>& level(int i) const { return levels_[static_cast<std::size_t>(i)]; }
    const Node& node(int tag) const { return nodes_[static_cast<std::size_t>(tag)]; }
    std::size_t node_count() const { return nodes_.size(); }

    int add_node(int level, int meaning, int parent_tag);
    void begin_level() { levels_.emplace_back(); }

    // Distinct meanings present per level, padded with empty sets to
    // vertex_count() entries.
    LevelSets level_sets() const;

    DagStats stats() const;

    // Root-to-node vertex sequence (meanings), root first.
    std::vector<int> path_to(int tag) const;

    // One node per line: "level tag meaning parent" with '-' for the root's
    // missing parent. Stable across runs; used by golden tests.
    std::string dump() const;

  private:
    int n_;
    int start_;
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> levels_;  // tags per level
};

// True iff vertex v lies on every stored root path to the given node, i.e.
// deleting every node meaning v from the node's ancestor sub-DAG leaves no
// surviving root path. On the prefix tree the ancestor sub-DAG is the node's
// unique root path (the node included), so this walks it.
bool exact_necessary(const LayeredDag& dag, int node_tag, int v);

// Adds the next level: each frontier node u gains a child for every neighbor
// v of u's meaning with v != start that exact_necessary reports as not
// necessary. Children are created in (frontier tag, ascending neighbor)
// order. Throws BudgetExhausted when a cap trips.
void exact_extend_level(LayeredDag& dag, const Graph& g, const ExactBudget& budget = {});

// Builds levels 0..n-1: all simple paths from start of every length. Throws
// BudgetExhausted when a cap trips.
LayeredDag exact_build(const Graph& g, int start, const ExactBudget& budget = {});

struct Decision {
    bool has_circuit = false;
    LevelSets level_sets;
    std::optional<Circuit> witness;
    DagStats stats;
    double elapsed_ms = 0.0;
};

// Full run: build, then accept iff some deepest-level node's meaning is
// adjacent to start; the witness is the lexicographically smallest accepting
// root path (lowest accepting tag) closed by the edge back to start.
Decision exact_decide(const Graph& g, int start, const ExactBudget& budget = {});

}  // namespace hamlab
