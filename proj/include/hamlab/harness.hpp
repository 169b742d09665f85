#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hamlab/graph.hpp"
#include "hamlab/layered_exact.hpp"
#include "hamlab/level_sets.hpp"
#include "hamlab/oracle.hpp"
#include "hamlab/stateset_fuzzy.hpp"

namespace hamlab {

using Json = nlohmann::ordered_json;

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDisagreements = 10;

inline constexpr const char* kSchemaVersion = "1";

// Shared knobs for differential runs. Budgets come from here (optionally
// overridden by HAMLAB_* environment variables) and are echoed into every
// report.
struct AlgoConfig {
    ExactBudget exact_budget;
    FuzzyConfig fuzzy_config;
    int exact_max_n = 12;      // skip the exponential solver above this size
    int oracle_max_n = 16;     // skip the backtracking oracle above this size
    int oracle_level_cap = 12; // skip oracle level sets above this size

    // Reads HAMLAB_EXACT_MAX_NODES, HAMLAB_EXACT_TIME_MS, HAMLAB_FUZZY_TIME_MS,
    // HAMLAB_EXACT_MAX_N, HAMLAB_ORACLE_MAX_N on top of the defaults.
    static AlgoConfig from_env();

    Json to_json() const;
};

enum class RunState { Ran, Skipped, BudgetExhausted, TimeCapped };
const char* to_string(RunState s);

struct OracleOutcome {
    RunState state = RunState::Skipped;
    bool yes = false;
    std::optional<Circuit> witness;
    bool witness_valid = false;
    std::optional<LevelSets> level_sets;
    double ms = 0.0;
};

struct ExactOutcome {
    RunState state = RunState::Skipped;
    bool yes = false;
    std::optional<Circuit> witness;
    bool witness_valid = false;
    LevelSets level_sets;
    std::optional<bool> level_sets_match_oracle;
    std::string budget_reason;
    std::size_t partial_nodes = 0;
    std::size_t nodes = 0;
    std::size_t arcs = 0;
    double ms = 0.0;
};

struct FuzzyOutcome {
    RunState state = RunState::Ran;
    bool yes = false;
    std::optional<Circuit> candidate;
    bool candidate_verified = false;
    bool extraction_failed = false;
    LevelSets level_sets;
    std::size_t nodes = 0;
    std::size_t transitions = 0;
    double ms = 0.0;
};

// Pairwise verdict agreement plus the level-set relations between the fuzzy
// and exact structures. A flag is absent when either side did not run.
struct DiffFlags {
    std::optional<bool> oracle_exact;
    std::optional<bool> oracle_fuzzy;
    std::optional<bool> exact_fuzzy;
    std::optional<bool> levelsets_containment;  // fuzzy >= exact, per level
    std::optional<bool> levelsets_equality;
};

struct DiffReport {
    std::string edge_list;
    int n = 0;
    int m = 0;
    int start = 0;
    OracleOutcome oracle;
    ExactOutcome exact;
    FuzzyOutcome fuzzy;
    DiffFlags flags;
    AlgoConfig config;

    bool has_disagreement() const;
    Json to_json(bool include_volatile = true) const;
};

// Recomputes the agreement flags from the embedded outcomes; reports must
// round-trip through this unchanged.
DiffFlags recompute_flags(const DiffReport& report);

// Runs oracle, exact (budgeted), and fuzzy on one instance and assembles the
// report. Witnesses and candidates are re-validated before inclusion.
DiffReport diff_run(const Graph& g, int start, const AlgoConfig& config = AlgoConfig::from_env());

// A replayable pointer to one swept instance.
struct InstanceRef {
    std::uint64_t index = 0;
    int n = 0;
    int start = 0;
    std::string edge_list;
};

struct SweepReport {
    std::string kind;  // "sweep" or "random"
    Json space;
    AlgoConfig config;

    std::uint64_t graphs = 0;
    std::uint64_t oracle_yes = 0, oracle_no = 0, oracle_skipped = 0;
    std::uint64_t exact_yes = 0, exact_no = 0, exact_budget_exhausted = 0, exact_skipped = 0;
    std::uint64_t fuzzy_yes = 0, fuzzy_no = 0, fuzzy_time_capped = 0;
    // Measured (never asserted): how often the fuzzy level sets coincide with
    // the exact ones when both solvers ran.
    std::uint64_t levelsets_equal = 0, levelsets_unequal = 0;
    // Witnesses or candidates that failed re-validation; must stay zero.
    std::uint64_t invalid_witnesses = 0;

    std::vector<InstanceRef> fuzzy_pos_oracle_neg;
    std::vector<InstanceRef> fuzzy_neg_oracle_pos;        // would break completeness
    std::vector<InstanceRef> extraction_failures;
    std::vector<InstanceRef> containment_violations;      // would break over-approximation
    std::vector<InstanceRef> exact_oracle_mismatches;     // would mean an outright bug

    struct PerN {
        int n = 0;
        std::uint64_t graphs = 0;
        std::uint64_t oracle_yes = 0;
        std::size_t exact_nodes = 0;
        std::size_t fuzzy_nodes = 0;
        std::size_t fuzzy_transitions = 0;
        double oracle_ms = 0.0, exact_ms = 0.0, fuzzy_ms = 0.0;
    };
    std::vector<PerN> per_n;

    int threads = 1;
    double total_ms = 0.0;

    bool has_disagreement() const;
    int exit_code() const { return has_disagreement() ? kExitDisagreements : kExitClean; }
    Json to_json(bool include_volatile = true) const;
};

// diff_run over every labeled graph with 3 <= n <= max_n in ascending
// edge-bitmask order. max_n above the cap (default 6) is refused unless the
// caller raises the cap. Instance-parallel with deterministic aggregation.
SweepReport sweep_exhaustive(int max_n, bool connected_only,
                             const AlgoConfig& config = AlgoConfig::from_env(), int threads = 0,
                             int cap = GraphEnumerator::kDefaultCap);

// diff_run on `trials` seeded G(n, p) instances; instance k uses the k-th
// seed of a SplitMix64 stream seeded with `seed`.
SweepReport campaign_random(int n, double p, int trials, std::uint64_t seed,
                            const AlgoConfig& config = AlgoConfig::from_env(), int threads = 0);

enum class PredicateKind {
    OracleYes,
    OracleNo,
    FuzzyYes,
    FuzzyNo,
    FuzzyNeOracle,
    FuzzyPosOracleNeg,
    FuzzyNegOraclePos,
    ExtractionFailure,
    ContainmentViolation,
};
PredicateKind predicate_from_name(std::string_view name);
std::vector<std::string> predicate_names();
bool evaluate_predicate(const Graph& g, int start, PredicateKind kind, const AlgoConfig& config);

// Greedy 1-minimization with start fixed at 0: repeatedly try deleting one
// vertex (labels descending; survivors relabeled densely) then one edge
// (descending lexicographic), keeping any deletion that preserves the
// predicate, until a full pass makes no progress. Throws Error if the
// predicate does not hold on the input.
Graph minimize(const Graph& g, PredicateKind kind, const AlgoConfig& config = AlgoConfig::from_env());

struct ScalingFit {
    double exponent = 0.0;      // least-squares slope of log(time) vs log(n)
    double residual_rms = 0.0;  // RMS residual in log space
    int distinct_n = 0;
};

// Requires at least 4 distinct n values and strictly positive timings.
ScalingFit fit_scaling(const std::vector<std::pair<int, double>>& samples);

struct BenchInstance {
    int n = 0;
    int trial = 0;
    bool fuzzy_yes = false;
    bool time_capped = false;
    bool candidate_verified = false;
    std::size_t nodes = 0;
    std::size_t transitions = 0;
    double ms = 0.0;
};

struct BenchReport {
    std::vector<int> n_list;
    double p = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    AlgoConfig config;
    std::vector<BenchInstance> instances;
    std::optional<ScalingFit> fit;  // absent when the fit preconditions fail
    double total_ms = 0.0;

    Json to_json(bool include_volatile = true) const;
};

// Times fuzzy_decide on seeded G(n, p) instances per n and fits the scaling
// exponent over per-n median times.
BenchReport bench_run(const std::vector<int>& n_list, double p, int trials, std::uint64_t seed,
                      const AlgoConfig& config = AlgoConfig::from_env());

// Deterministic per-instance seed stream for campaigns and benches.
std::vector<std::uint64_t> derive_instance_seeds(std::uint64_t seed, std::size_t count);

}  // namespace hamlab
