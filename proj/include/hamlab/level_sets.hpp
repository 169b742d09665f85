#pragma once

#include <vector>

namespace hamlab {

// Per-position admissible vertex sets for paths out of the start vertex:
// entry i lists (sorted ascending) every vertex that ends some simple path of
// exactly i edges. Always n entries, levels 0..n-1; trailing entries may be
// empty.
using LevelSets = std::vector<std::vector<int>>;

// outer[i] superset-of inner[i] for every level.
bool level_sets_contain(const LevelSets& outer, const LevelSets& inner);

}  // namespace hamlab
