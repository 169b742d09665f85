#pragma once

#include <cstdint>
#include <optional>

#include "hamlab/graph.hpp"
#include "hamlab/level_sets.hpp"

namespace hamlab {

// Ground-truth procedures: plain recursive backtracking over simple paths
// with a visited array and no pruning beyond adjacency. Deliberately shares
// no machinery with the layered or state-set solvers it cross-checks.

// Lexicographically smallest circuit through `start` if one exists
// (neighbors are always tried in ascending label order), else nullopt.
std::optional<Circuit> oracle_has_circuit(const Graph& g, int start);

// Number of distinct undirected Hamiltonian cycles; each rotation/reflection
// orbit counted once (anchored at vertex 0 with second vertex < last vertex).
// Refuses n above the cap.
long long oracle_count_circuits(const Graph& g, int cap = 10);

// level i holds v iff some simple path of exactly i edges from start ends at
// v. Exactly n levels; level 0 = {start}. Refuses n above the cap.
LevelSets oracle_level_sets(const Graph& g, int start, int cap = 12);

// True iff a simple path of exactly path_len edges from start to target
// exists that never visits `avoid`.
bool oracle_avoidance(const Graph& g, int start, int target, int path_len, int avoid);

}  // namespace hamlab
