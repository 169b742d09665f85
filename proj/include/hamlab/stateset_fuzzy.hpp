#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamlab/graph.hpp"
#include "hamlab/level_sets.hpp"

namespace hamlab {

using Bitset = boost::dynamic_bitset<>;

struct FuzzyConfig {
    std::int64_t time_cap_ms = 60'000;       // safety cap; polynomial size needs no node cap
    std::size_t extraction_reversal_factor = 10;  // backtracking cap = factor * n^2
};

// Per-level state-set structure: at most one node per (level, meaning), so at
// most n nodes per level and n levels. Each node carries two support
// indices:
//   rel(q)    - node keys appearing on some root path to q (own key and the
//               root included);
//   relrel(p) - transitions lying on some root path through p.
// Both are maintained incrementally as levels are added; the structure
// itself is never destructively pruned — avoidance queries work on scoped
// views.
class StateSetDag {
  public:
    struct Node {
        int level;
        int meaning;
    };
    struct Transition {
        int from;  // node id at level i
        int to;    // node id at level i+1; its meaning is the input symbol
    };

    StateSetDag(const Graph& g, int start);

    int start() const { return start_; }
    int vertex_count() const { return n_; }
    int level_count() const { return static_cast<int>(levels_.size()); }
    const std::vector<int>& level(int i) const { return levels_[static_cast<std::size_t>(i)]; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }

    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const Transition& transition(int id) const { return transitions_[static_cast<std::size_t>(id)]; }
    const std::vector<int>& in_transitions(int id) const { return in_[static_cast<std::size_t>(id)]; }
    const std::vector<int>& out_transitions(int id) const { return out_[static_cast<std::size_t>(id)]; }

    // Node id for (level, meaning), or -1.
    int node_at(int level, int meaning) const;
    // Ids of the (at most one per level) nodes with this meaning, ascending level.
    const std::vector<int>& nodes_with_meaning(int meaning) const {
        return by_meaning_[static_cast<std::size_t>(meaning)];
    }

    const Bitset& rel(int id) const { return rel_[static_cast<std::size_t>(id)]; }
    const Bitset& relrel(int id) const { return relrel_[static_cast<std::size_t>(id)]; }
    // Meanings present anywhere in rel(id); cheap pre-filter for avoidance.
    const Bitset& rel_meanings(int id) const { return relm_[static_cast<std::size_t>(id)]; }

    // Grows one level; admissibility of each (frontier node, meaning) pair is
    // decided by fuzzy_avoidance on the structure as it stands.
    void extend_level(const Graph& g);

    // Meanings present per level, padded with empty sets to n entries.
    LevelSets level_sets() const;

    // Asserts the polynomial size contract: nodes <= n(n+1), transitions <= n^3.
    void check_size_bounds() const;

    // One node per line: "level meaning in_count |rel| |relrel|".
    std::string dump() const;

  private:
    int n_;
    int start_;
    std::vector<Node> nodes_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<int>> levels_;      // node ids per level
    std::vector<std::vector<int>> by_meaning_;  // meaning -> node ids
    std::vector<int> id_by_level_meaning_;      // level * n + meaning -> id or -1
    std::vector<std::vector<int>> in_, out_;    // transition ids per node
    std::vector<Bitset> rel_, relrel_, relm_;
    std::size_t node_cap_;
    std::size_t trans_cap_;

    int add_node(int level, int meaning);
    int add_transition(int from, int to);
    friend StateSetDag fuzzy_init(const Graph&, int);
};

// Level-0-only structure: the single (0, start) node, rel = {own key},
// relrel empty.
StateSetDag fuzzy_init(const Graph& g, int start);

// The three-step admissibility test for extending node u by meaning v:
//   1. restrict to the sub-structure spanned by rel(u);
//   2. delete the node(s) with meaning v;
//   3. cascade-delete the transitions in relrel(deleted) that no surviving
//      p' in rel(u) supports, i.e. U relrel(deleted) \ U relrel(surviving);
// then answer whether a root-to-u transition path survives. Deletions are
// scoped to this query; the shared structure is untouched.
bool fuzzy_avoidance(const StateSetDag& dag, const Graph& g, int node_id, int v);

// Same query, materializing every intermediate set; test and debugging aid.
struct AvoidanceDetail {
    bool reachable = false;
    std::vector<int> substructure_nodes;     // rel(u) keys
    std::vector<int> deleted_nodes;          // meaning-v keys within rel(u)
    std::vector<int> candidate_transitions;  // U relrel(deleted)
    std::vector<int> deleted_transitions;    // candidates minus U relrel(surviving)
    std::vector<int> surviving_transitions;  // usable edges of the pruned view
};
AvoidanceDetail fuzzy_avoidance_detail(const StateSetDag& dag, const Graph& g, int node_id, int v);

// Free-function form of StateSetDag::extend_level.
void fuzzy_extend_level(StateSetDag& dag, const Graph& g);

// Walks transitions backward from an accepting node, greedily taking the
// smallest-meaning predecessor not yet used, with bounded backtracking
// (reversal_cap pops). Returns the root-first sequence iff it validates as a
// circuit; empty extraction is a reportable outcome, not an error.
std::optional<Circuit> fuzzy_extract_candidate(const StateSetDag& dag, const Graph& g,
                                               int accepting_id, std::size_t reversal_cap,
                                               std::size_t* reversals_out = nullptr);

struct FuzzyStats {
    std::vector<std::size_t> nodes_per_level;
    std::size_t node_count = 0;
    std::size_t transition_count = 0;
    std::size_t extraction_reversals = 0;
    bool extraction_attempted = false;
    bool extraction_failed = false;
};

struct FuzzyDecision {
    bool nonempty = false;  // some deepest-level meaning adjacent to start
    bool time_capped = false;  // safety cap tripped; fields reflect partial work
    LevelSets level_sets;
    std::optional<Circuit> candidate;
    bool candidate_verified = false;
    FuzzyStats stats;
    double elapsed_ms = 0.0;
};

// Full run: build all n levels, test acceptance, and attempt candidate
// extraction (accepting nodes tried from the highest meaning down, matching
// the backward walk's ascending tie-break).
FuzzyDecision fuzzy_decide(const Graph& g, int start, const FuzzyConfig& config = {});

}  // namespace hamlab
