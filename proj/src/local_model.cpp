#include "matchlab/local_model.hpp"

#include <algorithm>
#include <array>
#include <set>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace matchlab {

ColouredGraph::ColouredGraph(int k, int n,
                             std::vector<std::array<int, 3>> edge_list)
    : k_(k), n_(n) {
  Word::check_alphabet(k);
  if (n < 1) throw Error(Errc::model_error, "graph needs at least one node");
  adj_.assign(n, std::vector<int>(k + 1, -1));
  colour_mask_.assign(n, 0);
  for (auto e : edge_list) {
    auto [u, v, c] = e;
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw Error(Errc::model_error, "edge endpoint out of range");
    if (u == v) throw Error(Errc::model_error, "self-loops not allowed");
    if (c < 1 || c > k)
      throw Error(Errc::model_error, "edge colour out of range");
    if (adj_[u][c] != -1 || adj_[v][c] != -1)
      throw Error(Errc::model_error,
                  "colouring not proper: colour " + std::to_string(c) +
                      " repeated at a node");
    adj_[u][c] = v;
    adj_[v][c] = u;
    colour_mask_[u] = mask_add(colour_mask_[u], c);
    colour_mask_[v] = mask_add(colour_mask_[v], c);
    if (u > v) std::swap(u, v);
    edges_.push_back({u, v, c});
  }
}

BallAlgorithm::BallAlgorithm(std::string name, int k, int runtime)
    : name_(std::move(name)), k_(k), runtime_(runtime) {
  Word::check_alphabet(k);
  if (runtime < 0) throw Error(Errc::contract_violation, "negative runtime");
}

nlohmann::json BallAlgorithm::params() const {
  return nlohmann::json{{"k", k_}, {"r", runtime_}};
}

int BallAlgorithm::eval(const RootedBall& ball) const {
  if (ball.radius != runtime_ + 1)
    throw Error(Errc::contract_violation,
                "algorithm with runtime " + std::to_string(runtime_) +
                    " given a radius-" + std::to_string(ball.radius) +
                    " ball");
  if (ball.system.size() > kBallNodeGuard)
    throw Error(Errc::ball_size_exceeded, "ball too large to evaluate");
  int out = eval_ball(ball);
  if (out != kUnmatched && (out < 1 || out > k_))
    throw Error(Errc::contract_violation, "algorithm output out of range");
  return out;
}

namespace {

// Greedy on an explicit finite tree given as a colour system: colour steps
// i = 1..k, matching every colour-i edge whose endpoints are both free.
// Within a step the colour-i edges are disjoint (proper colouring), so the
// scan order does not matter.
int greedy_on_ball(const FiniteColourSystem& sys, int k) {
  const auto& nodes = sys.nodes();
  std::vector<int> matched(nodes.size(), 0);
  // Edges bucketed by colour; endpoints as canonical indices.
  std::vector<std::vector<std::pair<int, int>>> by_colour(k + 1);
  for (size_t i = 1; i < nodes.size(); ++i) {
    int p = sys.index_of(nodes[i].pred());
    by_colour[nodes[i].tail()].push_back({p, static_cast<int>(i)});
  }
  for (int c = 1; c <= k; ++c)
    for (auto [u, v] : by_colour[c])
      if (!matched[u] && !matched[v]) {
        matched[u] = c;
        matched[v] = c;
      }
  return matched[0];  // e is length-lex first
}

class GreedyAlgorithm final : public BallAlgorithm {
 public:
  GreedyAlgorithm(int k, int r) : BallAlgorithm("greedy", k, r) {}

 private:
  int eval_ball(const RootedBall& ball) const override {
    return greedy_on_ball(ball.system, k());
  }
};

class BrokenLazy final : public BallAlgorithm {
 public:
  BrokenLazy(int k, int r) : BallAlgorithm("broken-lazy", k, r) {}

 private:
  int eval_ball(const RootedBall&) const override { return kUnmatched; }
};

}  // namespace

std::unique_ptr<BallAlgorithm> greedy(int k, int r) {
  return std::make_unique<GreedyAlgorithm>(k, r);
}

std::unique_ptr<BallAlgorithm> broken_lazy(int k, int r) {
  return std::make_unique<BrokenLazy>(k, r);
}

std::unique_ptr<BallAlgorithm> make_algorithm(const std::string& name,
                                              const nlohmann::json& params) {
  if (!params.contains("k"))
    throw Error(Errc::format_error, "algorithm params need \"k\"");
  int k = params.at("k").get<int>();
  int r = params.value("r", 0);
  if (name == "greedy") return greedy(k, r);
  if (name == "broken-lazy") return broken_lazy(k, r);
  throw Error(Errc::format_error, "unknown algorithm \"" + name + "\"");
}

namespace {

void view_rec(const ColouredGraph& g, int at, Word& w, int depth_left,
              std::vector<Word>& out) {
  if (out.size() > kBallNodeGuard)
    throw Error(Errc::ball_size_exceeded, "view tree exceeds node guard");
  out.push_back(w);
  if (depth_left == 0) return;
  int avoid = w.empty() ? 0 : w.tail();
  for (int c = 1; c <= g.k(); ++c) {
    if (c == avoid) continue;
    int nxt = g.neighbour(at, c);
    if (nxt < 0) continue;
    w = w.adjoin(c);
    view_rec(g, nxt, w, depth_left - 1, out);
    w = w.adjoin(c);
  }
}

}  // namespace

RootedBall view_tree(const ColouredGraph& g, int v, int radius) {
  if (v < 0 || v >= g.n()) throw Error(Errc::model_error, "no such node");
  if (radius < 0) throw Error(Errc::contract_violation, "negative radius");
  std::vector<Word> words;
  Word w;
  view_rec(g, v, w, radius, words);
  return RootedBall{FiniteColourSystem(g.k(), std::move(words)), radius};
}

MatchingOutput run_on_graph(const BallAlgorithm& a, const ColouredGraph& g,
                            bool parallel) {
  if (g.k() > a.k())
    throw Error(Errc::model_error,
                "graph uses more colours than the algorithm supports");
  MatchingOutput out;
  out.outputs.assign(g.n(), 0);
  const int radius = a.runtime() + 1;
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (int v = 0; v < g.n(); ++v) {
    try {
      out.outputs[v] = a.eval(view_tree(g, v, radius));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

MatchingOutput simulate_rounds(const BallAlgorithm& a, const ColouredGraph& g) {
  if (g.k() > a.k())
    throw Error(Errc::model_error,
                "graph uses more colours than the algorithm supports");
  // state[v] after round t is the word set of the radius-(t+1) view.
  std::vector<std::set<Word>> state(g.n());
  for (int v = 0; v < g.n(); ++v) {
    state[v].insert(Word());
    for (int c = 1; c <= g.k(); ++c)
      if (g.neighbour(v, c) >= 0) state[v].insert(Word({c}, g.k()));
  }
  for (int round = 1; round <= a.runtime(); ++round) {
    std::vector<std::set<Word>> next(g.n());
    for (int v = 0; v < g.n(); ++v) {
      next[v].insert(Word());
      for (int c = 1; c <= g.k(); ++c) {
        int u = g.neighbour(v, c);
        if (u < 0) continue;
        // Everything u knew last round, seen from v across the colour-c
        // edge. Walks that come straight back cancel against c.
        Word step({c}, g.k());
        for (const Word& w : state[u]) next[v].insert(multiply(step, w));
      }
    }
    state = std::move(next);
  }
  MatchingOutput out;
  out.outputs.reserve(g.n());
  for (int v = 0; v < g.n(); ++v) {
    std::vector<Word> words(state[v].begin(), state[v].end());
    out.outputs.push_back(a.eval(
        RootedBall{FiniteColourSystem(g.k(), std::move(words)),
                   a.runtime() + 1}));
  }
  return out;
}

VerifyReport verify_matching(const ColouredGraph& g, const MatchingOutput& out) {
  if (static_cast<int>(out.outputs.size()) != g.n())
    throw Error(Errc::contract_violation, "output size mismatch");
  VerifyReport rep;
  for (int v = 0; v < g.n(); ++v) {
    int o = out.outputs[v];
    if (o != kUnmatched && (o < 1 || o > g.k() || g.neighbour(v, o) < 0)) {
      rep = {false, 1, v, o, -1,
             "M1: node " + std::to_string(v) + " outputs colour " +
                 std::to_string(o) + " which is not incident"};
      return rep;
    }
    if (o != kUnmatched) {
      int u = g.neighbour(v, o);
      if (out.outputs[u] != o) {
        rep = {false, 2, v, o, u,
               "M2: node " + std::to_string(v) + " matches along " +
                   std::to_string(o) + " but neighbour " + std::to_string(u) +
                   " outputs " + std::to_string(out.outputs[u])};
        return rep;
      }
    } else {
      for (int c = 1; c <= g.k(); ++c) {
        int u = g.neighbour(v, c);
        if (u >= 0 && out.outputs[u] == kUnmatched) {
          rep = {false, 3, v, c, u,
                 "M3: unmatched node " + std::to_string(v) +
                     " has unmatched neighbour " + std::to_string(u)};
          return rep;
        }
      }
    }
  }
  return rep;
}

ColouredGraph system_graph(const FiniteColourSystem& v) {
  std::vector<std::array<int, 3>> es;
  for (const SystemEdge& e : edges(v))
    es.push_back({v.index_of(e.from), v.index_of(e.to), e.colour});
  return ColouredGraph(v.k(), static_cast<int>(v.size()), std::move(es));
}

}  // namespace matchlab
