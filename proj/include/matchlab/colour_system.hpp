#pragma once

#include <atomic>
#include <limits>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "matchlab/word.hpp"

namespace matchlab {

// Sets of colours 1..k packed into a bitmask (bit c set iff colour c present).
using ColourMask = std::uint32_t;

inline bool mask_has(ColourMask m, int c) { return (m >> c) & 1u; }
inline ColourMask mask_add(ColourMask m, int c) { return m | (1u << c); }
inline int mask_size(ColourMask m) { return __builtin_popcount(m); }
inline ColourMask full_mask(int k) { return ((1u << k) - 1u) << 1; }
std::vector<int> mask_to_colours(ColourMask m);

// A finite, prefix-closed set of reduced words containing e, kept in
// length-lexicographic order. This is the materialized form of a colour
// system: a rooted edge-coloured tree.
class FiniteColourSystem {
 public:
  FiniteColourSystem() = default;
  // Sorts, deduplicates and validates (letters in range, prefix-closed).
  FiniteColourSystem(int k, std::vector<Word> nodes);

  int k() const { return k_; }
  const std::vector<Word>& nodes() const { return nodes_; }
  size_t size() const { return nodes_.size(); }
  bool contains(const Word& w) const;
  // Index of w in canonical order, or -1.
  int index_of(const Word& w) const;
  int depth() const;  // largest norm present

  bool operator==(const FiniteColourSystem&) const = default;

 private:
  int k_ = 0;
  std::vector<Word> nodes_;
};

struct SystemEdge {
  Word from;  // pred(to)
  Word to;
  int colour;  // tail(to)
};

// One edge per non-root node, coloured by its tail.
std::vector<SystemEdge> edges(const FiniteColourSystem& v);

// A radius-truncated colour system re-rooted at e: exactly what an anonymous
// node knows after radius-1 communication rounds.
struct RootedBall {
  FiniteColourSystem system;
  int radius = 0;
};

// Hard cap on materialized ball/system sizes; degree^radius growth should
// fail loudly instead of thrashing.
inline constexpr size_t kBallNodeGuard = 10'000'000;

// A walker positioned at a node of a (possibly infinite) colour system.
// step(c) moves along the colour-c edge if it exists and returns whether it
// did; a failed step leaves the cursor unchanged. Since every generator is
// an involution, stepping the same colour twice returns to the start, which
// makes depth-first enumeration need no cloning.
class SystemCursor {
 public:
  virtual ~SystemCursor() = default;
  virtual bool step(int c) = 0;
  // The current node, as a word in the system's own coordinates.
  virtual const Word& position() const = 0;
};

// Membership oracle for a prefix-closed subset of the Cayley tree. Oracles
// are immutable compositions (finite base, translate, prune, extension,
// glue); the only mutable state is a memo cache and a monotonically growing
// depth budget, both thread-safe. Queries deeper than the declared budget
// are an error: correct callers announce their depth needs up front via
// ensure_budget, so a breach means runaway recursion, not a deep instance.
class SystemNode {
 public:
  explicit SystemNode(int k, int initial_budget = 0)
      : k_(k), budget_(initial_budget) {
    Word::check_alphabet(k);
  }
  virtual ~SystemNode() = default;

  SystemNode(const SystemNode&) = delete;
  SystemNode& operator=(const SystemNode&) = delete;

  int k() const { return k_; }
  int depth_budget() const { return budget_.load(std::memory_order_relaxed); }

  // Raises the budget of this oracle (and, transitively, of everything it
  // queries) so that words of norm <= d become answerable.
  void ensure_budget(int d) const;

  // Memoized point query; w must be within the depth budget.
  bool contains(const Word& w) const;

  // A fresh cursor at the root e.
  virtual std::unique_ptr<SystemCursor> root_cursor() const = 0;

 protected:
  virtual void propagate_budget(int d) const = 0;

 private:
  int k_;
  mutable std::atomic<int> budget_;
  mutable std::unordered_map<Word, bool> memo_;
  mutable std::shared_mutex memo_mx_;
};

using SystemPtr = std::shared_ptr<const SystemNode>;

// Wraps a materialized system as an oracle (membership false outside it).
SystemPtr finite_system(FiniteColourSystem base);

// The system u^-1 V, re-rooted at u. Requires u in V.
SystemPtr translate(SystemPtr v, const Word& u);

// Drops the subtree hanging off the root along colour c. Requires c incident
// to the root; the root's degree decreases by one, all other degrees keep.
SystemPtr prune(SystemPtr v, int c);

// All member words of norm <= h, enumerated by depth-first descent from e.
FiniteColourSystem restrict_depth(const SystemNode& v, int h);

// The ball of the given radius around v: restrict_depth of the translate.
RootedBall extract_ball(const SystemPtr& v, const Word& centre, int radius);

// Colours of the edges incident to v: { c : vc in V }.
std::vector<int> incident_colours(const SystemNode& v, const Word& node);
ColourMask incident_mask(const SystemNode& v, const Word& node);

// Probes incident colours with a cursor already at the node (cheap: one
// step/unstep pair per colour, no walk from the root).
ColourMask incident_mask_at(SystemCursor& at, int k);

// Whether U[h] = V[h] as word sets.
bool equal_to_depth(const SystemNode& u, const SystemNode& v, int h);

// Every reduced word over 1..k of norm <= depth, in canonical order.
std::vector<Word> all_reduced_words(int k, int depth);

// Walks a cursor from the root along the letters of w; true iff every step
// exists (i.e. w is a member, since members are exactly the root paths).
bool walk_to(SystemCursor& cur, const Word& w);

}  // namespace matchlab
