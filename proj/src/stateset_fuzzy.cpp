#include "hamlab/stateset_fuzzy.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace hamlab {

namespace {
using Clock = std::chrono::steady_clock;
}

StateSetDag::StateSetDag(const Graph& g, int start) : n_(g.vertex_count()), start_(start) {
    if (start < 0 || start >= n_) throw Error("state-set dag: start out of range");
    node_cap_ = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) + 1;
    trans_cap_ = std::max<std::size_t>(
        1, static_cast<std::size_t>(n_ > 1 ? n_ - 1 : 1) * 2 * static_cast<std::size_t>(g.edge_count()));
    by_meaning_.assign(static_cast<std::size_t>(n_), {});
    levels_.emplace_back();
    add_node(0, start);
}

int StateSetDag::add_node(int level, int meaning) {
    if (nodes_.size() >= node_cap_) throw Error("state-set dag: node capacity exceeded");
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{level, meaning});
    levels_[static_cast<std::size_t>(level)].push_back(id);
    by_meaning_[static_cast<std::size_t>(meaning)].push_back(id);
    while (id_by_level_meaning_.size() < static_cast<std::size_t>(level + 1) * n_)
        id_by_level_meaning_.resize(static_cast<std::size_t>(level + 1) * n_, -1);
    id_by_level_meaning_[static_cast<std::size_t>(level) * n_ + meaning] = id;
    in_.emplace_back();
    out_.emplace_back();
    rel_.emplace_back(node_cap_);
    rel_.back().set(static_cast<std::size_t>(id));
    relrel_.emplace_back(trans_cap_);
    relm_.emplace_back(static_cast<std::size_t>(n_));
    relm_.back().set(static_cast<std::size_t>(meaning));
    return id;
}

int StateSetDag::add_transition(int from, int to) {
    if (transitions_.size() >= trans_cap_) throw Error("state-set dag: transition capacity exceeded");
    const int id = static_cast<int>(transitions_.size());
    transitions_.push_back(Transition{from, to});
    out_[static_cast<std::size_t>(from)].push_back(id);
    in_[static_cast<std::size_t>(to)].push_back(id);
    return id;
}

int StateSetDag::node_at(int level, int meaning) const {
    const std::size_t idx = static_cast<std::size_t>(level) * n_ + meaning;
    if (level < 0 || meaning < 0 || meaning >= n_ || idx >= id_by_level_meaning_.size()) return -1;
    return id_by_level_meaning_[idx];
}

void StateSetDag::extend_level(const Graph& g) {
    const int frontier = level_count() - 1;
    const std::vector<int> frontier_ids = levels_[static_cast<std::size_t>(frontier)];

    // Phase 1: admissibility queries against the structure as it stands.
    struct Pending {
        int meaning;
        std::vector<int> contributors;
    };
    std::vector<Pending> pending;
    for (int v = 0; v < n_; ++v) {
        if (v == start_) continue;
        std::vector<int> contributors;
        for (int u : frontier_ids) {
            if (!g.has_edge(nodes_[static_cast<std::size_t>(u)].meaning, v)) continue;
            if (fuzzy_avoidance(*this, g, u, v)) contributors.push_back(u);
        }
        if (!contributors.empty()) pending.push_back(Pending{v, std::move(contributors)});
    }

    levels_.emplace_back();

    // Phase 2: materialize nodes and transitions. Support-index seeds read
    // the contributors' relrel before any of this round's downstream updates
    // touch them, so each new node starts from pure root-path support.
    std::vector<int> new_transitions;
    for (const auto& p : pending) {
        const int w = add_node(frontier + 1, p.meaning);
        Bitset& rel_w = rel_[static_cast<std::size_t>(w)];
        Bitset& relrel_w = relrel_[static_cast<std::size_t>(w)];
        Bitset& relm_w = relm_[static_cast<std::size_t>(w)];
        for (int u : p.contributors) {
            rel_w |= rel_[static_cast<std::size_t>(u)];
            relrel_w |= relrel_[static_cast<std::size_t>(u)];
            relm_w |= relm_[static_cast<std::size_t>(u)];
            const int t = add_transition(u, w);
            relrel_w.set(static_cast<std::size_t>(t));
            new_transitions.push_back(t);
        }
        rel_w.set(static_cast<std::size_t>(w));
        relm_w.set(static_cast<std::size_t>(p.meaning));
    }

    // Phase 3: a new transition u->w lies on a root path through every key
    // on a root path to u.
    for (int t : new_transitions) {
        const int u = transitions_[static_cast<std::size_t>(t)].from;
        const Bitset& rel_u = rel_[static_cast<std::size_t>(u)];
        for (std::size_t p = rel_u.find_first(); p != Bitset::npos; p = rel_u.find_next(p))
            relrel_[p].set(static_cast<std::size_t>(t));
    }
}

LevelSets StateSetDag::level_sets() const {
    LevelSets sets(static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < levels_.size() && i < sets.size(); ++i) {
        for (int id : levels_[i]) sets[i].push_back(nodes_[static_cast<std::size_t>(id)].meaning);
        std::sort(sets[i].begin(), sets[i].end());
    }
    return sets;
}

void StateSetDag::check_size_bounds() const {
    const std::size_t n = static_cast<std::size_t>(n_);
    if (nodes_.size() > n * (n + 1))
        throw Error("state-set dag: node count " + std::to_string(nodes_.size()) +
                    " exceeds n(n+1) = " + std::to_string(n * (n + 1)));
    if (transitions_.size() > n * n * n)
        throw Error("state-set dag: transition count " + std::to_string(transitions_.size()) +
                    " exceeds n^3 = " + std::to_string(n * n * n));
}

std::string StateSetDag::dump() const {
    std::ostringstream os;
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
        os << nodes_[id].level << ' ' << nodes_[id].meaning << ' ' << in_[id].size() << ' '
           << rel_[id].count() << ' ' << relrel_[id].count() << '\n';
    }
    return os.str();
}

StateSetDag fuzzy_init(const Graph& g, int start) { return StateSetDag(g, start); }

void fuzzy_extend_level(StateSetDag& dag, const Graph& g) { dag.extend_level(g); }

namespace {

// Shared core of the production and detail avoidance queries: marks the
// deleted keys and the deletion-candidate transitions, then reports whether
// a root-to-u path survives.
struct AvoidanceScratch {
    std::vector<int> deleted_nodes;
    Bitset candidates;  // U relrel(deleted)
};

bool scan_for_witness(const StateSetDag& dag, const Bitset& rel_u,
                      const std::vector<int>& deleted_nodes, int t) {
    // Exhaustive fallback of the cascade rule: keep t if any surviving key in
    // rel(u) supports it.
    for (std::size_t p = rel_u.find_first(); p != Bitset::npos; p = rel_u.find_next(p)) {
        const int id = static_cast<int>(p);
        if (std::find(deleted_nodes.begin(), deleted_nodes.end(), id) != deleted_nodes.end())
            continue;
        if (dag.relrel(id).test(static_cast<std::size_t>(t))) return true;
    }
    return false;
}

}  // namespace

bool fuzzy_avoidance(const StateSetDag& dag, const Graph& g, int node_id, int v) {
    (void)g;
    if (v < 0 || v >= dag.vertex_count()) throw Error("fuzzy_avoidance: meaning out of range");
    const auto& u_node = dag.node(node_id);
    if (u_node.meaning == v) return false;  // step 2 deletes u itself

    // Nothing with meaning v on any root path to u: steps 2-3 delete nothing
    // and u stays reachable (every node is created reachable and the shared
    // structure is never pruned).
    if (!dag.rel_meanings(node_id).test(static_cast<std::size_t>(v))) return true;

    const Bitset& rel_u = dag.rel(node_id);

    // Step 2: the meaning-v keys inside the rel(u) sub-structure.
    std::vector<int> deleted_nodes;
    for (int id : dag.nodes_with_meaning(v))
        if (rel_u.test(static_cast<std::size_t>(id))) deleted_nodes.push_back(id);
    if (deleted_nodes.empty()) return true;

    // Step 3 candidates: everything the deleted keys supported.
    Bitset candidates(dag.relrel(deleted_nodes.front()).size());
    for (int id : deleted_nodes) candidates |= dag.relrel(id);

    // Survival: walk backward from u over surviving keys and transitions.
    // A candidate transition is actually deleted only when no surviving key
    // in rel(u) supports it; its own surviving endpoints are checked first.
    Bitset visited(dag.node_count());
    std::vector<int> stack{node_id};
    visited.set(static_cast<std::size_t>(node_id));
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        if (dag.node(x).level == 0) return true;  // root reached
        for (int t : dag.in_transitions(x)) {
            const int y = dag.transition(t).from;
            if (visited.test(static_cast<std::size_t>(y))) continue;
            if (!rel_u.test(static_cast<std::size_t>(y))) continue;  // outside the sub-structure
            if (dag.node(y).meaning == v) continue;                  // deleted key
            if (candidates.test(static_cast<std::size_t>(t)) &&
                !dag.relrel(y).test(static_cast<std::size_t>(t)) &&
                !dag.relrel(x).test(static_cast<std::size_t>(t)) &&
                !scan_for_witness(dag, rel_u, deleted_nodes, t))
                continue;  // cascade-deleted transition
            visited.set(static_cast<std::size_t>(y));
            stack.push_back(y);
        }
    }
    return false;
}

AvoidanceDetail fuzzy_avoidance_detail(const StateSetDag& dag, const Graph& g, int node_id, int v) {
    (void)g;
    AvoidanceDetail detail;
    const Bitset& rel_u = dag.rel(node_id);
    for (std::size_t p = rel_u.find_first(); p != Bitset::npos; p = rel_u.find_next(p)) {
        const int id = static_cast<int>(p);
        detail.substructure_nodes.push_back(id);
        if (dag.node(id).meaning == v) detail.deleted_nodes.push_back(id);
    }

    Bitset candidates(dag.relrel(node_id).size());
    for (int id : detail.deleted_nodes) candidates |= dag.relrel(id);
    Bitset kept(candidates.size());
    for (int id : detail.substructure_nodes)
        if (dag.node(id).meaning != v) kept |= dag.relrel(id);
    Bitset deleted = candidates & ~kept;

    for (std::size_t t = candidates.find_first(); t != Bitset::npos; t = candidates.find_next(t))
        detail.candidate_transitions.push_back(static_cast<int>(t));
    for (std::size_t t = deleted.find_first(); t != Bitset::npos; t = deleted.find_next(t))
        detail.deleted_transitions.push_back(static_cast<int>(t));

    // Forward reachability over the pruned view.
    Bitset reach(dag.node_count());
    std::vector<int> stack;
    if (dag.node_count() > 0 && rel_u.test(0) && dag.node(0).meaning != v) {
        reach.set(0);
        stack.push_back(0);
    }
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int t : dag.out_transitions(x)) {
            const int y = dag.transition(t).to;
            if (reach.test(static_cast<std::size_t>(y))) continue;
            if (!rel_u.test(static_cast<std::size_t>(y))) continue;
            if (dag.node(y).meaning == v) continue;
            if (deleted.test(static_cast<std::size_t>(t))) continue;
            detail.surviving_transitions.push_back(t);
            reach.set(static_cast<std::size_t>(y));
            stack.push_back(y);
        }
    }
    std::sort(detail.surviving_transitions.begin(), detail.surviving_transitions.end());
    detail.reachable = dag.node(node_id).meaning != v && reach.test(static_cast<std::size_t>(node_id));
    return detail;
}

std::optional<Circuit> fuzzy_extract_candidate(const StateSetDag& dag, const Graph& g,
                                               int accepting_id, std::size_t reversal_cap,
                                               std::size_t* reversals_out) {
    struct Frame {
        int id;
        std::size_t cursor;  // index into in_transitions(id)
    };
    const int n = dag.vertex_count();
    Bitset used(static_cast<std::size_t>(n));
    std::vector<Frame> stack;
    std::size_t reversals = 0;

    stack.push_back(Frame{accepting_id, 0});
    used.set(static_cast<std::size_t>(dag.node(accepting_id).meaning));

    std::optional<Circuit> result;
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (dag.node(top.id).level == 0) {
            std::vector<int> seq;
            seq.reserve(stack.size());
            for (auto it = stack.rbegin(); it != stack.rend(); ++it)
                seq.push_back(dag.node(it->id).meaning);
            Circuit c{std::move(seq)};
            if (is_valid_circuit(g, c, dag.start())) result = std::move(c);
            break;
        }
        const auto& in = dag.in_transitions(top.id);
        bool advanced = false;
        while (top.cursor < in.size()) {
            const int t = in[top.cursor++];
            const int y = dag.transition(t).from;
            const int m = dag.node(y).meaning;
            if (used.test(static_cast<std::size_t>(m))) continue;
            // in-transitions are stored in ascending source-meaning order
            used.set(static_cast<std::size_t>(m));
            stack.push_back(Frame{y, 0});
            advanced = true;
            break;
        }
        if (advanced) continue;
        used.reset(static_cast<std::size_t>(dag.node(top.id).meaning));
        stack.pop_back();
        if (++reversals > reversal_cap) break;
    }
    if (reversals_out) *reversals_out = reversals;
    return result;
}

FuzzyDecision fuzzy_decide(const Graph& g, int start, const FuzzyConfig& config) {
    const auto t0 = Clock::now();
    const auto deadline = t0 + std::chrono::milliseconds(config.time_cap_ms);
    const int n = g.vertex_count();

    StateSetDag dag = fuzzy_init(g, start);
    FuzzyDecision decision;
    for (int level = 1; level < n; ++level) {
        dag.extend_level(g);
        if (Clock::now() > deadline) {
            decision.time_capped = true;
            break;
        }
    }
    dag.check_size_bounds();

    decision.level_sets = dag.level_sets();
    decision.stats.node_count = dag.node_count();
    decision.stats.transition_count = dag.transition_count();
    for (int i = 0; i < dag.level_count(); ++i)
        decision.stats.nodes_per_level.push_back(dag.level(i).size());

    if (!decision.time_capped && n >= 3) {
        const auto& deepest = dag.level(n - 1);
        std::vector<int> accepting;
        for (int id : deepest)
            if (g.has_edge(dag.node(id).meaning, start)) accepting.push_back(id);
        decision.nonempty = !accepting.empty();

        if (decision.nonempty) {
            decision.stats.extraction_attempted = true;
            const std::size_t cap =
                config.extraction_reversal_factor * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
            // Highest meaning first; the backward walk prefers small
            // predecessor meanings, so this yields the smallest start-anchored
            // sequence (level lists are ascending by meaning).
            for (auto it = accepting.rbegin(); it != accepting.rend(); ++it) {
                std::size_t reversals = 0;
                auto candidate = fuzzy_extract_candidate(dag, g, *it, cap, &reversals);
                decision.stats.extraction_reversals += reversals;
                if (candidate) {
                    decision.candidate = std::move(candidate);
                    decision.candidate_verified = is_valid_circuit(g, *decision.candidate, start);
                    break;
                }
            }
            decision.stats.extraction_failed = !decision.candidate.has_value();
        }
    }
    decision.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return decision;
}

}  // namespace hamlab
