#pragma once

#include <cstdint>
#include <optional>

#include "matchlab/local_model.hpp"

namespace matchlab {

// Searches properly coloured paths of at most 4k nodes, in canonical order
// (length first, then colour sequence lexicographically), for the first one
// containing a node pair u, v with identical radius-(k-2) views where full
// greedy leaves u unmatched and v matched. Such a path exists for every
// k >= 2; it is the instance that pins greedy's worst case to k-1 rounds.
ColouredGraph gen_worst_case_path(int k, bool parallel = true);

// The (u, v) witness pair of a worst-case path, recomputed deterministically.
struct WorstCasePair {
  int unmatched;
  int matched;
};
WorstCasePair worst_case_pair(const ColouredGraph& g);

// Seeded random graph with a proper k-edge-colouring built by greedy colour
// assignment. Identical output for identical (n, k, seed) on any platform.
ColouredGraph gen_random_graph(int n, int k, std::uint64_t seed);

// FNV-1a over the canonical serialization; used to pin generator outputs.
std::uint64_t graph_fingerprint(const ColouredGraph& g);

}  // namespace matchlab
