#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "matchlab/colour_system.hpp"

namespace matchlab {

// Local output of an unmatched node. Matched nodes output the edge colour.
inline constexpr int kUnmatched = 0;

// A finite anonymous network with a proper edge colouring: at most one
// incident edge per colour per node, symmetric, no self-loops. Parallel
// edges with distinct colours are allowed.
class ColouredGraph {
 public:
  ColouredGraph(int k, int n, std::vector<std::array<int, 3>> edge_list);

  int k() const { return k_; }
  int n() const { return n_; }
  // Neighbour along colour c, or -1.
  int neighbour(int v, int c) const { return adj_[v][c]; }
  ColourMask colours_at(int v) const { return colour_mask_[v]; }
  // (u, v, colour) with u < v, in input order after normalization.
  const std::vector<std::array<int, 3>>& edge_list() const { return edges_; }

 private:
  int k_ = 0;
  int n_ = 0;
  std::vector<std::array<int, 3>> edges_;
  std::vector<std::vector<int>> adj_;  // adj_[v][c] = neighbour or -1
  std::vector<ColourMask> colour_mask_;
};

struct MatchingOutput {
  std::vector<int> outputs;  // per node: colour or kUnmatched
  bool operator==(const MatchingOutput&) const = default;
};

// A distributed algorithm with running time r, modelled extensionally: a
// pure function of the radius-(r+1) ball around a node. Equal balls must
// yield equal outputs; eval receives nothing but the ball, so that holds by
// construction.
class BallAlgorithm {
 public:
  BallAlgorithm(std::string name, int k, int runtime);
  virtual ~BallAlgorithm() = default;

  const std::string& name() const { return name_; }
  int k() const { return k_; }
  int runtime() const { return runtime_; }
  nlohmann::json params() const;

  // Checks the radius contract and the ball-size guard, then evaluates.
  int eval(const RootedBall& ball) const;

 private:
  virtual int eval_ball(const RootedBall& ball) const = 0;

  std::string name_;
  int k_;
  int runtime_;
};

// The greedy algorithm as a runtime-r ball function: simulates the colour
// steps 1..k on the ball's own tree and reports the root's state. With
// r = k-1 the ball is deep enough that boundary effects cannot reach the
// root, so this is exact greedy on every instance; with smaller r it is a
// legitimate runtime-r algorithm that generally loses maximality.
std::unique_ptr<BallAlgorithm> greedy(int k, int r);

// Outputs kUnmatched everywhere; exists to exercise the verifier.
std::unique_ptr<BallAlgorithm> broken_lazy(int k, int r);

// Registry lookup by name + JSON params ({"k":K,"r":R}).
std::unique_ptr<BallAlgorithm> make_algorithm(const std::string& name,
                                              const nlohmann::json& params);

// The set of reduced words w of norm <= radius whose colour walk from v is
// defined at every step: the truncated universal-cover ball, i.e. the whole
// knowledge of an anonymous node after radius-1 rounds.
RootedBall view_tree(const ColouredGraph& g, int v, int radius);

// output[v] = A(view of v at radius r+1), evaluated per node. Nodes are
// independent; with parallel=true the loop fans out over OpenMP threads.
MatchingOutput run_on_graph(const BallAlgorithm& a, const ColouredGraph& g,
                            bool parallel = true);

// Serial reference: an explicit synchronous round loop in which the state of
// a node after round t is its radius-(t+1) view assembled from neighbours'
// round-(t-1) states. Agrees with run_on_graph bitwise.
MatchingOutput simulate_rounds(const BallAlgorithm& a, const ColouredGraph& g);

struct VerifyReport {
  bool pass = true;
  // First violation in canonical (node index, then condition) order.
  int condition = 0;  // 1, 2 or 3 for M1/M2/M3
  int node = -1;
  int colour = 0;
  int neighbour = -1;
  std::string message;
};

// Checks M1 (outputs are incident colours or unmatched), M2 (matched edges
// are mutual) and M3 (no two adjacent unmatched nodes). Violations are data,
// not errors.
VerifyReport verify_matching(const ColouredGraph& g, const MatchingOutput& out);

// The edge-coloured tree of a finite colour system as a graph; node index =
// canonical position of the word.
ColouredGraph system_graph(const FiniteColourSystem& v);

}  // namespace matchlab
