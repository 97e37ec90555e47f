#include "matchlab/generators.hpp"

#include <algorithm>

namespace matchlab {

namespace {

// Exact greedy on an explicit path, colour steps in ascending order.
// Within a step the edges of that colour are pairwise non-adjacent, so a
// single left-to-right scan is faithful.
std::vector<int> greedy_on_path(const std::vector<int>& colours, int k) {
  int m = static_cast<int>(colours.size()) + 1;
  std::vector<int> matched(m, 0);
  for (int c = 1; c <= k; ++c)
    for (int i = 0; i + 1 < m; ++i)
      if (colours[i] == c && !matched[i] && !matched[i + 1]) {
        matched[i] = c;
        matched[i + 1] = c;
      }
  return matched;
}

ColouredGraph path_graph(const std::vector<int>& colours, int k) {
  std::vector<std::array<int, 3>> edges;
  for (size_t i = 0; i < colours.size(); ++i)
    edges.push_back({static_cast<int>(i), static_cast<int>(i) + 1, colours[i]});
  return ColouredGraph(k, static_cast<int>(colours.size()) + 1,
                       std::move(edges));
}

// Decodes the idx-th proper colour sequence of the given length in
// lexicographic order: k choices for the first colour, k-1 for each later
// one (anything but its predecessor).
std::vector<int> decode_sequence(std::uint64_t idx, int len, int k) {
  std::vector<int> seq(len);
  std::uint64_t weight = 1;
  for (int i = 1; i < len; ++i) weight *= (k - 1);
  seq[0] = 1 + static_cast<int>(idx / weight);
  idx %= weight;
  for (int i = 1; i < len; ++i) {
    weight /= (k - 1);
    int digit = static_cast<int>(idx / weight);
    idx %= weight;
    // digit-th colour in ascending order skipping the predecessor
    int c = digit + 1;
    if (c >= seq[i - 1]) ++c;
    seq[i] = c;
  }
  return seq;
}

// Whether the path given by the colour sequence contains an unmatched node
// and a matched node with identical radius-(k-2) views under full greedy.
bool has_witness_pair(const std::vector<int>& colours, int k,
                      int* out_u = nullptr, int* out_v = nullptr) {
  std::vector<int> matched = greedy_on_path(colours, k);
  int m = static_cast<int>(matched.size());
  bool any_free = false, any_matched = false;
  for (int v = 0; v < m; ++v)
    (matched[v] ? any_matched : any_free) = true;
  if (!any_free || !any_matched) return false;

  ColouredGraph g = path_graph(colours, k);
  std::vector<std::optional<FiniteColourSystem>> views(m);
  auto view_of = [&](int v) -> const FiniteColourSystem& {
    if (!views[v]) views[v] = view_tree(g, v, k - 2).system;
    return *views[v];
  };
  for (int u = 0; u < m; ++u) {
    if (matched[u]) continue;
    for (int v = 0; v < m; ++v) {
      if (!matched[v]) continue;
      if (g.colours_at(u) != g.colours_at(v)) continue;  // cheap filter
      if (view_of(u) == view_of(v)) {
        if (out_u) *out_u = u;
        if (out_v) *out_v = v;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

ColouredGraph gen_worst_case_path(int k, bool parallel) {
  if (k < 2) throw Error(Errc::contract_violation, "need k >= 2");
  for (int m = 2; m <= 4 * k; ++m) {
    const int len = m - 1;
    std::uint64_t count = k;
    for (int i = 1; i < len; ++i) count *= (k - 1);
    // Scan the whole length class in parallel, then take the smallest index:
    // canonical order regardless of thread interleaving.
    std::uint64_t hit = count;
#pragma omp parallel for schedule(dynamic, 1024) reduction(min : hit) \
    if (parallel && count > 4096)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(count); ++idx) {
      if (static_cast<std::uint64_t>(idx) < hit &&
          has_witness_pair(decode_sequence(idx, len, k), k))
        hit = static_cast<std::uint64_t>(idx);
    }
    if (hit < count) return path_graph(decode_sequence(hit, len, k), k);
  }
  throw Error(Errc::internal_error,
              "no worst-case path within 4k nodes for k = " +
                  std::to_string(k));
}

WorstCasePair worst_case_pair(const ColouredGraph& g) {
  int k = g.k();
  std::vector<int> colours;
  for (int i = 0; i + 1 < g.n(); ++i) {
    bool found = false;
    for (int c = 1; c <= k && !found; ++c)
      if (g.neighbour(i, c) == i + 1) {
        colours.push_back(c);
        found = true;
      }
    if (!found) throw Error(Errc::contract_violation, "not a path graph");
  }
  int u = -1, v = -1;
  if (!has_witness_pair(colours, k, &u, &v))
    throw Error(Errc::no_witness, "path has no witness pair");
  return WorstCasePair{u, v};
}

namespace {

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace

ColouredGraph gen_random_graph(int n, int k, std::uint64_t seed) {
  if (n < 1) throw Error(Errc::contract_violation, "need n >= 1");
  Word::check_alphabet(k);
  SplitMix64 rng{seed ^ 0xa5a5a5a5deadbeefull};
  std::vector<ColourMask> used(n, 0);
  std::vector<std::vector<int>> nbr(n, std::vector<int>(k + 1, -1));
  std::vector<std::array<int, 3>> edges;
  const int attempts = 3 * n;
  for (int i = 0; i < attempts; ++i) {
    int u = static_cast<int>(rng.next() % n);
    int v = static_cast<int>(rng.next() % n);
    if (u == v) continue;
    bool adjacent = false;
    for (int c = 1; c <= k && !adjacent; ++c)
      if (nbr[u][c] == v) adjacent = true;
    if (adjacent) continue;
    ColourMask free = full_mask(k) & ~used[u] & ~used[v];
    if (!free) continue;
    int c = mask_to_colours(free).front();
    used[u] = mask_add(used[u], c);
    used[v] = mask_add(used[v], c);
    nbr[u][c] = v;
    nbr[v][c] = u;
    edges.push_back({u, v, c});
  }
  return ColouredGraph(k, n, std::move(edges));
}

std::uint64_t graph_fingerprint(const ColouredGraph& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(g.k()));
  mix(static_cast<std::uint64_t>(g.n()));
  for (const auto& e : g.edge_list()) {
    mix(static_cast<std::uint64_t>(e[0]));
    mix(static_cast<std::uint64_t>(e[1]));
    mix(static_cast<std::uint64_t>(e[2]));
  }
  return h;
}

}  // namespace matchlab
