#include "hamlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

namespace hamlab {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::optional<std::uint64_t> env_u64(const char* name) {
    const char* raw = std::getenv(name);
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0') throw Error(std::string(name) + ": not an integer: " + raw);
    return value;
}

Json levels_json(const LevelSets& levels) {
    Json arr = Json::array();
    for (const auto& level : levels) arr.push_back(level);
    return arr;
}

Json flag_json(const std::optional<bool>& flag) {
    if (!flag) return nullptr;
    return *flag;
}

// Runs fn(0..count-1) on a small worker pool; any worker exception is
// rethrown after the join. fn writes only to its own index's slot.
template <class Fn>
void parallel_indices(std::uint64_t count, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (count < 2 || threads == 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), count));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mu);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

AlgoConfig AlgoConfig::from_env() {
    AlgoConfig config;
    if (auto v = env_u64("HAMLAB_EXACT_MAX_NODES")) config.exact_budget.max_nodes = *v;
    if (auto v = env_u64("HAMLAB_EXACT_TIME_MS"))
        config.exact_budget.time_cap_ms = static_cast<std::int64_t>(*v);
    if (auto v = env_u64("HAMLAB_FUZZY_TIME_MS"))
        config.fuzzy_config.time_cap_ms = static_cast<std::int64_t>(*v);
    if (auto v = env_u64("HAMLAB_EXACT_MAX_N")) config.exact_max_n = static_cast<int>(*v);
    if (auto v = env_u64("HAMLAB_ORACLE_MAX_N")) config.oracle_max_n = static_cast<int>(*v);
    return config;
}

Json AlgoConfig::to_json() const {
    Json j;
    j["exact_max_nodes"] = exact_budget.max_nodes;
    j["exact_time_ms"] = exact_budget.time_cap_ms;
    j["fuzzy_time_ms"] = fuzzy_config.time_cap_ms;
    j["extraction_reversal_factor"] = fuzzy_config.extraction_reversal_factor;
    j["exact_max_n"] = exact_max_n;
    j["oracle_max_n"] = oracle_max_n;
    j["oracle_level_cap"] = oracle_level_cap;
    return j;
}

const char* to_string(RunState s) {
    switch (s) {
        case RunState::Ran: return "ran";
        case RunState::Skipped: return "skipped";
        case RunState::BudgetExhausted: return "budget-exhausted";
        case RunState::TimeCapped: return "time-capped";
    }
    return "?";
}

DiffFlags recompute_flags(const DiffReport& r) {
    DiffFlags flags;
    const bool oracle_ran = r.oracle.state == RunState::Ran;
    const bool exact_ran = r.exact.state == RunState::Ran;
    const bool fuzzy_ran = r.fuzzy.state == RunState::Ran;
    if (oracle_ran && exact_ran) flags.oracle_exact = r.oracle.yes == r.exact.yes;
    if (oracle_ran && fuzzy_ran) flags.oracle_fuzzy = r.oracle.yes == r.fuzzy.yes;
    if (exact_ran && fuzzy_ran) {
        flags.exact_fuzzy = r.exact.yes == r.fuzzy.yes;
        flags.levelsets_containment = level_sets_contain(r.fuzzy.level_sets, r.exact.level_sets);
        flags.levelsets_equality = r.fuzzy.level_sets == r.exact.level_sets;
    }
    return flags;
}

bool DiffReport::has_disagreement() const {
    auto bad = [](const std::optional<bool>& f) { return f && !*f; };
    if (bad(flags.oracle_exact) || bad(flags.oracle_fuzzy) || bad(flags.exact_fuzzy) ||
        bad(flags.levelsets_containment))
        return true;
    if (exact.level_sets_match_oracle && !*exact.level_sets_match_oracle) return true;
    return fuzzy.extraction_failed;
}

DiffReport diff_run(const Graph& g, int start, const AlgoConfig& config) {
    DiffReport r;
    r.edge_list = g.to_edge_list();
    r.n = g.vertex_count();
    r.m = g.edge_count();
    r.start = start;
    r.config = config;

    if (r.n <= config.oracle_max_n) {
        const auto t0 = Clock::now();
        auto witness = oracle_has_circuit(g, start);
        r.oracle.state = RunState::Ran;
        r.oracle.yes = witness.has_value();
        if (witness) {
            r.oracle.witness_valid = is_valid_circuit(g, *witness, start);
            r.oracle.witness = std::move(witness);
        }
        if (r.n <= config.oracle_level_cap)
            r.oracle.level_sets = oracle_level_sets(g, start, config.oracle_level_cap);
        r.oracle.ms = ms_since(t0);
    }

    if (r.n <= config.exact_max_n) {
        const auto t0 = Clock::now();
        try {
            Decision d = exact_decide(g, start, config.exact_budget);
            r.exact.state = RunState::Ran;
            r.exact.yes = d.has_circuit;
            if (d.witness) {
                r.exact.witness_valid = is_valid_circuit(g, *d.witness, start);
                r.exact.witness = std::move(d.witness);
            }
            r.exact.level_sets = std::move(d.level_sets);
            r.exact.nodes = d.stats.total_nodes();
            r.exact.arcs = d.stats.total_arcs();
            if (r.oracle.level_sets)
                r.exact.level_sets_match_oracle = (*r.oracle.level_sets == r.exact.level_sets);
        } catch (const BudgetExhausted& e) {
            r.exact.state = RunState::BudgetExhausted;
            r.exact.budget_reason = e.reason;
            r.exact.partial_nodes = e.partial.total_nodes();
        }
        r.exact.ms = ms_since(t0);
    }

    {
        FuzzyDecision d = fuzzy_decide(g, start, config.fuzzy_config);
        r.fuzzy.state = d.time_capped ? RunState::TimeCapped : RunState::Ran;
        r.fuzzy.yes = d.nonempty;
        if (d.candidate) {
            r.fuzzy.candidate_verified = d.candidate_verified && is_valid_circuit(g, *d.candidate, start);
            r.fuzzy.candidate = std::move(d.candidate);
        }
        r.fuzzy.extraction_failed = d.stats.extraction_failed;
        r.fuzzy.level_sets = std::move(d.level_sets);
        r.fuzzy.nodes = d.stats.node_count;
        r.fuzzy.transitions = d.stats.transition_count;
        r.fuzzy.ms = d.elapsed_ms;
    }

    r.flags = recompute_flags(r);
    return r;
}

Json DiffReport::to_json(bool include_volatile) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "diff";
    j["graph"] = Json{{"n", n}, {"m", m}, {"edge_list", edge_list}};
    j["start"] = start;
    j["config"] = config.to_json();

    Json o;
    o["state"] = to_string(oracle.state);
    if (oracle.state == RunState::Ran) {
        o["verdict"] = oracle.yes ? "yes" : "no";
        if (oracle.witness) {
            o["witness"] = oracle.witness->vertices;
            o["witness_valid"] = oracle.witness_valid;
        }
        if (oracle.level_sets) o["level_sets"] = levels_json(*oracle.level_sets);
    }
    j["oracle"] = std::move(o);

    Json e;
    e["state"] = to_string(exact.state);
    if (exact.state == RunState::Ran) {
        e["verdict"] = exact.yes ? "yes" : "no";
        if (exact.witness) {
            e["witness"] = exact.witness->vertices;
            e["witness_valid"] = exact.witness_valid;
        }
        e["level_sets"] = levels_json(exact.level_sets);
        if (exact.level_sets_match_oracle)
            e["level_sets_match_oracle"] = *exact.level_sets_match_oracle;
        e["nodes"] = exact.nodes;
        e["arcs"] = exact.arcs;
    } else if (exact.state == RunState::BudgetExhausted) {
        e["budget_reason"] = exact.budget_reason;
        e["partial_nodes"] = exact.partial_nodes;
    }
    j["exact"] = std::move(e);

    Json f;
    f["state"] = to_string(fuzzy.state);
    f["verdict"] = fuzzy.yes ? "yes" : "no";
    if (fuzzy.candidate) {
        f["candidate"] = fuzzy.candidate->vertices;
        f["candidate_verified"] = fuzzy.candidate_verified;
    }
    f["extraction_failed"] = fuzzy.extraction_failed;
    f["level_sets"] = levels_json(fuzzy.level_sets);
    f["nodes"] = fuzzy.nodes;
    f["transitions"] = fuzzy.transitions;
    j["fuzzy"] = std::move(f);

    j["flags"] = Json{{"oracle_exact", flag_json(flags.oracle_exact)},
                      {"oracle_fuzzy", flag_json(flags.oracle_fuzzy)},
                      {"exact_fuzzy", flag_json(flags.exact_fuzzy)},
                      {"levelsets_containment", flag_json(flags.levelsets_containment)},
                      {"levelsets_equality", flag_json(flags.levelsets_equality)}};
    j["disagreement"] = has_disagreement();

    if (include_volatile)
        j["volatile"] =
            Json{{"timings_ms", Json{{"oracle", oracle.ms}, {"exact", exact.ms}, {"fuzzy", fuzzy.ms}}}};
    return j;
}

namespace {

// Compact per-instance record kept during parallel sweeps; disagreement
// instances are re-materialized afterwards from their index, which is cheap
// because every generator is a pure function of it.
struct Outcome {
    bool filtered = false;
    RunState oracle_state = RunState::Skipped;
    RunState exact_state = RunState::Skipped;
    RunState fuzzy_state = RunState::Ran;
    bool oracle_yes = false, exact_yes = false, fuzzy_yes = false;
    bool extraction_failed = false;
    bool invalid_witness = false;
    std::optional<bool> oracle_exact, containment, equality;
    std::optional<bool> exact_levels_match;
    std::size_t exact_nodes = 0, fuzzy_nodes = 0, fuzzy_transitions = 0;
    double oracle_ms = 0.0, exact_ms = 0.0, fuzzy_ms = 0.0;
};

Outcome outcome_of(const DiffReport& r) {
    Outcome o;
    o.oracle_state = r.oracle.state;
    o.exact_state = r.exact.state;
    o.fuzzy_state = r.fuzzy.state;
    o.oracle_yes = r.oracle.yes;
    o.exact_yes = r.exact.yes;
    o.fuzzy_yes = r.fuzzy.yes;
    o.extraction_failed = r.fuzzy.extraction_failed;
    o.invalid_witness = (r.oracle.witness && !r.oracle.witness_valid) ||
                        (r.exact.witness && !r.exact.witness_valid) ||
                        (r.fuzzy.candidate && !r.fuzzy.candidate_verified);
    o.oracle_exact = r.flags.oracle_exact;
    o.containment = r.flags.levelsets_containment;
    o.equality = r.flags.levelsets_equality;
    o.exact_levels_match = r.exact.level_sets_match_oracle;
    o.exact_nodes = r.exact.nodes;
    o.fuzzy_nodes = r.fuzzy.nodes;
    o.fuzzy_transitions = r.fuzzy.transitions;
    o.oracle_ms = r.oracle.ms;
    o.exact_ms = r.exact.ms;
    o.fuzzy_ms = r.fuzzy.ms;
    return o;
}

void aggregate_outcome(SweepReport& report, SweepReport::PerN& per_n, const Outcome& o,
                       std::uint64_t index, int n, const std::function<Graph()>& materialize) {
    ++report.graphs;
    ++per_n.graphs;

    switch (o.oracle_state) {
        case RunState::Ran: ++(o.oracle_yes ? report.oracle_yes : report.oracle_no); break;
        default: ++report.oracle_skipped; break;
    }
    if (o.oracle_state == RunState::Ran && o.oracle_yes) ++per_n.oracle_yes;
    switch (o.exact_state) {
        case RunState::Ran: ++(o.exact_yes ? report.exact_yes : report.exact_no); break;
        case RunState::BudgetExhausted: ++report.exact_budget_exhausted; break;
        default: ++report.exact_skipped; break;
    }
    switch (o.fuzzy_state) {
        case RunState::TimeCapped: ++report.fuzzy_time_capped; break;
        default: ++(o.fuzzy_yes ? report.fuzzy_yes : report.fuzzy_no); break;
    }

    if (o.equality) ++(*o.equality ? report.levelsets_equal : report.levelsets_unequal);
    if (o.invalid_witness) ++report.invalid_witnesses;

    per_n.exact_nodes += o.exact_nodes;
    per_n.fuzzy_nodes += o.fuzzy_nodes;
    per_n.fuzzy_transitions += o.fuzzy_transitions;
    per_n.oracle_ms += o.oracle_ms;
    per_n.exact_ms += o.exact_ms;
    per_n.fuzzy_ms += o.fuzzy_ms;

    const bool oracle_ran = o.oracle_state == RunState::Ran;
    const bool fuzzy_ran = o.fuzzy_state == RunState::Ran;
    bool listed = false;
    bool fp = oracle_ran && fuzzy_ran && !o.oracle_yes && o.fuzzy_yes;
    bool fn = oracle_ran && fuzzy_ran && o.oracle_yes && !o.fuzzy_yes;
    bool ef = fuzzy_ran && o.extraction_failed;
    bool cv = o.containment && !*o.containment;
    bool em = (o.oracle_exact && !*o.oracle_exact) || (o.exact_levels_match && !*o.exact_levels_match);
    if (fp || fn || ef || cv || em) {
        Graph g = materialize();
        InstanceRef ref{index, n, 0, g.to_edge_list()};
        if (fp) report.fuzzy_pos_oracle_neg.push_back(ref);
        if (fn) report.fuzzy_neg_oracle_pos.push_back(ref);
        if (ef) report.extraction_failures.push_back(ref);
        if (cv) report.containment_violations.push_back(ref);
        if (em) report.exact_oracle_mismatches.push_back(ref);
        listed = true;
    }
    (void)listed;
}

Json instances_json(const std::vector<InstanceRef>& refs) {
    Json arr = Json::array();
    for (const auto& ref : refs)
        arr.push_back(Json{{"index", ref.index}, {"n", ref.n}, {"start", ref.start},
                           {"edge_list", ref.edge_list}});
    return Json{{"count", refs.size()}, {"instances", std::move(arr)}};
}

}  // namespace

bool SweepReport::has_disagreement() const {
    return !fuzzy_pos_oracle_neg.empty() || !fuzzy_neg_oracle_pos.empty() ||
           !extraction_failures.empty() || !containment_violations.empty() ||
           !exact_oracle_mismatches.empty();
}

Json SweepReport::to_json(bool include_volatile) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    j["space"] = space;
    j["config"] = config.to_json();
    j["totals"] = Json{{"graphs", graphs},
                       {"oracle_yes", oracle_yes},
                       {"oracle_no", oracle_no},
                       {"oracle_skipped", oracle_skipped},
                       {"exact_yes", exact_yes},
                       {"exact_no", exact_no},
                       {"exact_budget_exhausted", exact_budget_exhausted},
                       {"exact_skipped", exact_skipped},
                       {"fuzzy_yes", fuzzy_yes},
                       {"fuzzy_no", fuzzy_no},
                       {"fuzzy_time_capped", fuzzy_time_capped},
                       {"levelsets_equal", levelsets_equal},
                       {"levelsets_unequal", levelsets_unequal},
                       {"invalid_witnesses", invalid_witnesses}};
    j["disagreements"] = Json{{"fuzzy_pos_oracle_neg", instances_json(fuzzy_pos_oracle_neg)},
                              {"fuzzy_neg_oracle_pos", instances_json(fuzzy_neg_oracle_pos)},
                              {"extraction_failures", instances_json(extraction_failures)},
                              {"containment_violations", instances_json(containment_violations)},
                              {"exact_oracle_mismatches", instances_json(exact_oracle_mismatches)}};
    Json per_n_json = Json::array();
    for (const auto& entry : per_n)
        per_n_json.push_back(Json{{"n", entry.n},
                                  {"graphs", entry.graphs},
                                  {"oracle_yes", entry.oracle_yes},
                                  {"exact_nodes", entry.exact_nodes},
                                  {"fuzzy_nodes", entry.fuzzy_nodes},
                                  {"fuzzy_transitions", entry.fuzzy_transitions}});
    j["per_n"] = std::move(per_n_json);
    j["disagreement"] = has_disagreement();

    if (include_volatile) {
        Json per_n_ms = Json::array();
        for (const auto& entry : per_n)
            per_n_ms.push_back(Json{{"n", entry.n},
                                    {"oracle_ms", entry.oracle_ms},
                                    {"exact_ms", entry.exact_ms},
                                    {"fuzzy_ms", entry.fuzzy_ms}});
        j["volatile"] = Json{{"total_ms", total_ms},
                             {"per_n_timings", std::move(per_n_ms)},
                             {"environment", Json{{"threads", threads}}}};
    }
    return j;
}

SweepReport sweep_exhaustive(int max_n, bool connected_only, const AlgoConfig& config,
                             int threads, int cap) {
    if (max_n < 3) throw Error("sweep_exhaustive: max_n must be >= 3");
    if (max_n > cap)
        throw CapExceeded("sweep_exhaustive: max_n = " + std::to_string(max_n) + " exceeds cap " +
                          std::to_string(cap) + "; pass the explicit override to sweep this far");
    const auto t0 = Clock::now();

    SweepReport report;
    report.kind = "sweep";
    report.space = Json{{"type", "exhaustive"},
                        {"min_n", 3},
                        {"max_n", max_n},
                        {"connected_only", connected_only}};
    report.config = config;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    report.threads = threads;

    for (int n = 3; n <= max_n; ++n) {
        GraphEnumerator meta(n, cap);
        const std::uint64_t count = meta.total();
        std::vector<Outcome> outcomes(static_cast<std::size_t>(count));
        parallel_indices(count, threads, [&](std::uint64_t mask) {
            Graph g = GraphEnumerator::from_mask(n, mask);
            Outcome& slot = outcomes[static_cast<std::size_t>(mask)];
            if (connected_only && !g.is_connected()) {
                slot.filtered = true;
                return;
            }
            slot = outcome_of(diff_run(g, 0, config));
        });
        SweepReport::PerN per_n;
        per_n.n = n;
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            const Outcome& o = outcomes[static_cast<std::size_t>(mask)];
            if (o.filtered) continue;
            aggregate_outcome(report, per_n, o, mask, n,
                              [&] { return GraphEnumerator::from_mask(n, mask); });
        }
        report.per_n.push_back(per_n);
    }
    report.total_ms = ms_since(t0);
    return report;
}

SweepReport campaign_random(int n, double p, int trials, std::uint64_t seed,
                            const AlgoConfig& config, int threads) {
    if (trials < 1) throw Error("campaign_random: trials must be >= 1");
    const auto t0 = Clock::now();

    SweepReport report;
    report.kind = "random";
    report.space = Json{{"type", "erdos_renyi"}, {"n", n}, {"p", p}, {"trials", trials},
                        {"seed", seed}};
    report.config = config;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    report.threads = threads;

    const auto seeds = derive_instance_seeds(seed, static_cast<std::size_t>(trials));
    std::vector<Outcome> outcomes(static_cast<std::size_t>(trials));
    parallel_indices(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t k) {
        Graph g = generate_erdos_renyi(n, p, seeds[static_cast<std::size_t>(k)]);
        outcomes[static_cast<std::size_t>(k)] = outcome_of(diff_run(g, 0, config));
    });

    SweepReport::PerN per_n;
    per_n.n = n;
    for (int k = 0; k < trials; ++k) {
        aggregate_outcome(report, per_n, outcomes[static_cast<std::size_t>(k)],
                          static_cast<std::uint64_t>(k), n, [&] {
                              return generate_erdos_renyi(n, p, seeds[static_cast<std::size_t>(k)]);
                          });
    }
    report.per_n.push_back(per_n);
    report.total_ms = ms_since(t0);
    return report;
}

PredicateKind predicate_from_name(std::string_view name) {
    if (name == "oracle-yes") return PredicateKind::OracleYes;
    if (name == "oracle-no") return PredicateKind::OracleNo;
    if (name == "fuzzy-yes") return PredicateKind::FuzzyYes;
    if (name == "fuzzy-no") return PredicateKind::FuzzyNo;
    if (name == "fuzzy-ne-oracle") return PredicateKind::FuzzyNeOracle;
    if (name == "fuzzy-pos-oracle-neg") return PredicateKind::FuzzyPosOracleNeg;
    if (name == "fuzzy-neg-oracle-pos") return PredicateKind::FuzzyNegOraclePos;
    if (name == "extraction-failure") return PredicateKind::ExtractionFailure;
    if (name == "containment-violation") return PredicateKind::ContainmentViolation;
    std::string msg = "unknown predicate '" + std::string(name) + "'; known:";
    for (const auto& known : predicate_names()) msg += " " + known;
    throw Error(msg);
}

std::vector<std::string> predicate_names() {
    return {"oracle-yes",          "oracle-no",
            "fuzzy-yes",           "fuzzy-no",
            "fuzzy-ne-oracle",     "fuzzy-pos-oracle-neg",
            "fuzzy-neg-oracle-pos", "extraction-failure",
            "containment-violation"};
}

bool evaluate_predicate(const Graph& g, int start, PredicateKind kind, const AlgoConfig& config) {
    const bool needs_oracle = kind != PredicateKind::FuzzyYes && kind != PredicateKind::FuzzyNo &&
                              kind != PredicateKind::ExtractionFailure &&
                              kind != PredicateKind::ContainmentViolation;
    if (needs_oracle && g.vertex_count() > config.oracle_max_n)
        throw CapExceeded("predicate needs the oracle but n exceeds oracle_max_n");

    switch (kind) {
        case PredicateKind::OracleYes:
            return oracle_has_circuit(g, start).has_value();
        case PredicateKind::OracleNo:
            return !oracle_has_circuit(g, start).has_value();
        case PredicateKind::FuzzyYes:
            return fuzzy_decide(g, start, config.fuzzy_config).nonempty;
        case PredicateKind::FuzzyNo:
            return !fuzzy_decide(g, start, config.fuzzy_config).nonempty;
        case PredicateKind::FuzzyNeOracle: {
            const bool oracle = oracle_has_circuit(g, start).has_value();
            return fuzzy_decide(g, start, config.fuzzy_config).nonempty != oracle;
        }
        case PredicateKind::FuzzyPosOracleNeg: {
            if (oracle_has_circuit(g, start)) return false;
            return fuzzy_decide(g, start, config.fuzzy_config).nonempty;
        }
        case PredicateKind::FuzzyNegOraclePos: {
            if (!oracle_has_circuit(g, start)) return false;
            return !fuzzy_decide(g, start, config.fuzzy_config).nonempty;
        }
        case PredicateKind::ExtractionFailure: {
            FuzzyDecision d = fuzzy_decide(g, start, config.fuzzy_config);
            return d.nonempty && !d.candidate;
        }
        case PredicateKind::ContainmentViolation: {
            if (g.vertex_count() > config.exact_max_n) return false;
            try {
                Decision exact = exact_decide(g, start, config.exact_budget);
                FuzzyDecision fuzzy = fuzzy_decide(g, start, config.fuzzy_config);
                return !level_sets_contain(fuzzy.level_sets, exact.level_sets);
            } catch (const BudgetExhausted&) {
                return false;  // cannot witness a violation without the exact side
            }
        }
    }
    throw Error("evaluate_predicate: unreachable");
}

namespace {

Graph delete_vertex(const Graph& g, int w) {
    Graph h(g.vertex_count() - 1);
    for (const auto& [u, v] : g.edges()) {
        if (u == w || v == w) continue;
        h.add_edge(u - (u > w ? 1 : 0), v - (v > w ? 1 : 0));
    }
    return h;
}

Graph delete_edge(const Graph& g, std::pair<int, int> edge) {
    Graph h(g.vertex_count());
    for (const auto& e : g.edges())
        if (e != edge) h.add_edge(e.first, e.second);
    return h;
}

}  // namespace

Graph minimize(const Graph& g, PredicateKind kind, const AlgoConfig& config) {
    if (!evaluate_predicate(g, 0, kind, config))
        throw Error("minimize: predicate does not hold on the input graph");

    Graph current = g;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int w = current.vertex_count() - 1; w >= 0 && current.vertex_count() > 1; --w) {
            Graph candidate = delete_vertex(current, w);
            if (evaluate_predicate(candidate, 0, kind, config)) {
                current = std::move(candidate);
                progress = true;
                break;  // restart the pass on the smaller graph
            }
        }
        if (progress) continue;
        const auto edges = current.edges();
        for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
            Graph candidate = delete_edge(current, *it);
            if (evaluate_predicate(candidate, 0, kind, config)) {
                current = std::move(candidate);
                progress = true;
                break;
            }
        }
    }
    return current;
}

ScalingFit fit_scaling(const std::vector<std::pair<int, double>>& samples) {
    if (samples.empty()) throw Error("fit_scaling: no samples");
    std::set<int> distinct;
    for (const auto& [n, t] : samples) {
        if (n < 1) throw Error("fit_scaling: n must be >= 1");
        if (!(t > 0.0)) throw Error("fit_scaling: timings must be > 0");
        distinct.insert(n);
    }
    if (distinct.size() < 4)
        throw Error("fit_scaling: need >= 4 distinct n values, got " +
                    std::to_string(distinct.size()));

    const double count = static_cast<double>(samples.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [n, t] : samples) {
        mean_x += std::log(static_cast<double>(n));
        mean_y += std::log(t);
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n, t] : samples) {
        const double dx = std::log(static_cast<double>(n)) - mean_x;
        const double dy = std::log(t) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    ScalingFit fit;
    fit.distinct_n = static_cast<int>(distinct.size());
    fit.exponent = sxy / sxx;
    const double intercept = mean_y - fit.exponent * mean_x;
    double ss = 0.0;
    for (const auto& [n, t] : samples) {
        const double predicted = intercept + fit.exponent * std::log(static_cast<double>(n));
        const double r = std::log(t) - predicted;
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / count);
    return fit;
}

Json BenchReport::to_json(bool include_volatile) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "bench";
    j["space"] = Json{{"n_list", n_list}, {"p", p}, {"trials", trials}, {"seed", seed}};
    j["config"] = config.to_json();
    Json inst = Json::array();
    for (const auto& i : instances)
        inst.push_back(Json{{"n", i.n},
                            {"trial", i.trial},
                            {"verdict", i.fuzzy_yes ? "yes" : "no"},
                            {"time_capped", i.time_capped},
                            {"candidate_verified", i.candidate_verified},
                            {"nodes", i.nodes},
                            {"transitions", i.transitions}});
    j["instances"] = std::move(inst);
    if (include_volatile) {
        Json timings = Json::array();
        for (const auto& i : instances)
            timings.push_back(Json{{"n", i.n}, {"trial", i.trial}, {"ms", i.ms}});
        Json v;
        v["instance_timings"] = std::move(timings);
        if (fit)
            v["fit"] = Json{{"exponent", fit->exponent},
                            {"residual_rms", fit->residual_rms},
                            {"distinct_n", fit->distinct_n}};
        v["total_ms"] = total_ms;
        j["volatile"] = std::move(v);
    }
    return j;
}

BenchReport bench_run(const std::vector<int>& n_list, double p, int trials, std::uint64_t seed,
                      const AlgoConfig& config) {
    if (n_list.empty()) throw Error("bench_run: empty n list");
    if (trials < 1) throw Error("bench_run: trials must be >= 1");
    const auto t0 = Clock::now();

    BenchReport report;
    report.n_list = n_list;
    report.p = p;
    report.trials = trials;
    report.seed = seed;
    report.config = config;

    const auto seeds =
        derive_instance_seeds(seed, n_list.size() * static_cast<std::size_t>(trials));
    std::vector<std::pair<int, double>> medians;
    std::size_t seed_index = 0;
    for (int n : n_list) {
        std::vector<double> times;
        times.reserve(static_cast<std::size_t>(trials));
        for (int trial = 0; trial < trials; ++trial) {
            Graph g = generate_erdos_renyi(n, p, seeds[seed_index++]);
            const auto ti = Clock::now();
            FuzzyDecision d = fuzzy_decide(g, 0, config.fuzzy_config);
            const double ms = ms_since(ti);
            report.instances.push_back(BenchInstance{n, trial, d.nonempty, d.time_capped,
                                                     d.candidate_verified, d.stats.node_count,
                                                     d.stats.transition_count, ms});
            times.push_back(ms);
        }
        std::sort(times.begin(), times.end());
        medians.emplace_back(n, times[times.size() / 2]);
    }
    try {
        report.fit = fit_scaling(medians);
    } catch (const Error&) {
        report.fit = std::nullopt;  // fewer than 4 distinct n values is a legal bench
    }
    report.total_ms = ms_since(t0);
    return report;
}

std::vector<std::uint64_t> derive_instance_seeds(std::uint64_t seed, std::size_t count) {
    detail::SplitMix64 stream{seed};
    std::vector<std::uint64_t> seeds(count);
    for (auto& s : seeds) s = stream.next();
    return seeds;
}

}  // namespace hamlab
