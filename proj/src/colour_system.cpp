#include "matchlab/colour_system.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace matchlab {

namespace {

// Optional cap on memo entries per oracle, from MATCHLAB_CACHE_LIMIT.
size_t cache_limit() {
  static const size_t limit = [] {
    if (const char* s = std::getenv("MATCHLAB_CACHE_LIMIT")) {
      long v = std::atol(s);
      if (v > 0) return static_cast<size_t>(v);
    }
    return std::numeric_limits<size_t>::max();
  }();
  return limit;
}

}  // namespace

std::vector<int> mask_to_colours(ColourMask m) {
  std::vector<int> out;
  for (int c = 1; c <= kMaxAlphabet; ++c)
    if (mask_has(m, c)) out.push_back(c);
  return out;
}

FiniteColourSystem::FiniteColourSystem(int k, std::vector<Word> nodes)
    : k_(k), nodes_(std::move(nodes)) {
  Word::check_alphabet(k);
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.empty() || !nodes_.front().empty())
    throw Error(Errc::format_error, "colour system must contain e");
  for (const Word& w : nodes_) {
    for (int i = 0; i < w.norm(); ++i)
      if (w.letter(i) < 1 || w.letter(i) > k_)
        throw Error(Errc::invalid_word,
                    "node " + w.str() + " uses a letter outside 1.." +
                        std::to_string(k_));
    if (!w.empty() && !contains(w.pred()))
      throw Error(Errc::format_error,
                  "not prefix-closed: " + w.str() + " present without " +
                      w.pred().str());
  }
}

bool FiniteColourSystem::contains(const Word& w) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), w);
}

int FiniteColourSystem::index_of(const Word& w) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), w);
  if (it == nodes_.end() || !(*it == w)) return -1;
  return static_cast<int>(it - nodes_.begin());
}

int FiniteColourSystem::depth() const {
  return nodes_.empty() ? 0 : nodes_.back().norm();
}

std::vector<SystemEdge> edges(const FiniteColourSystem& v) {
  std::vector<SystemEdge> out;
  out.reserve(v.size() > 0 ? v.size() - 1 : 0);
  for (const Word& w : v.nodes())
    if (!w.empty()) out.push_back(SystemEdge{w.pred(), w, w.tail()});
  return out;
}

void SystemNode::ensure_budget(int d) const {
  int cur = budget_.load(std::memory_order_relaxed);
  while (cur < d &&
         !budget_.compare_exchange_weak(cur, d, std::memory_order_relaxed)) {
  }
  if (cur < d) propagate_budget(d);
}

bool SystemNode::contains(const Word& w) const {
  if (w.norm() > depth_budget())
    throw Error(Errc::depth_budget_exceeded,
                "query of norm " + std::to_string(w.norm()) +
                    " exceeds depth budget " + std::to_string(depth_budget()));
  {
    std::shared_lock lock(memo_mx_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
  }
  auto cur = root_cursor();
  bool member = walk_to(*cur, w);
  {
    std::unique_lock lock(memo_mx_);
    if (memo_.size() < cache_limit()) memo_.emplace(w, member);
  }
  return member;
}

bool walk_to(SystemCursor& cur, const Word& w) {
  for (int i = 0; i < w.norm(); ++i)
    if (!cur.step(w.letter(i))) return false;
  return true;
}

ColourMask incident_mask_at(SystemCursor& at, int k) {
  ColourMask m = 0;
  for (int c = 1; c <= k; ++c) {
    if (at.step(c)) {
      m = mask_add(m, c);
      at.step(c);  // involution: undo
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Oracle node types

namespace {

class FiniteNode final : public SystemNode {
 public:
  explicit FiniteNode(FiniteColourSystem base)
      : SystemNode(base.k(), std::numeric_limits<int>::max() / 2),
        base_(std::move(base)) {}

  std::unique_ptr<SystemCursor> root_cursor() const override;
  const FiniteColourSystem& base() const { return base_; }

 protected:
  void propagate_budget(int) const override {}

 private:
  FiniteColourSystem base_;
};

class FiniteCursor final : public SystemCursor {
 public:
  explicit FiniteCursor(const FiniteColourSystem* sys) : sys_(sys) {}

  bool step(int c) override {
    Word next = pos_.adjoin(c);
    if (!sys_->contains(next)) return false;
    pos_ = std::move(next);
    return true;
  }

  const Word& position() const override { return pos_; }

 private:
  const FiniteColourSystem* sys_;
  Word pos_;
};

std::unique_ptr<SystemCursor> FiniteNode::root_cursor() const {
  return std::make_unique<FiniteCursor>(&base_);
}

class TranslateNode final : public SystemNode {
 public:
  TranslateNode(SystemPtr inner, Word u)
      : SystemNode(inner->k()), inner_(std::move(inner)), u_(std::move(u)) {}

  std::unique_ptr<SystemCursor> root_cursor() const override;

 protected:
  void propagate_budget(int d) const override {
    inner_->ensure_budget(d + u_.norm());
  }

 private:
  SystemPtr inner_;
  Word u_;

  friend SystemPtr matchlab::translate(SystemPtr, const Word&);
  friend class TranslateCursor;
};

class TranslateCursor final : public SystemCursor {
 public:
  TranslateCursor(std::unique_ptr<SystemCursor> inner) : inner_(std::move(inner)) {}

  bool step(int c) override {
    if (!inner_->step(c)) return false;
    pos_ = pos_.adjoin(c);
    return true;
  }

  const Word& position() const override { return pos_; }

 private:
  std::unique_ptr<SystemCursor> inner_;  // positioned at u * pos_
  Word pos_;
};

std::unique_ptr<SystemCursor> TranslateNode::root_cursor() const {
  auto inner = inner_->root_cursor();
  if (!walk_to(*inner, u_))
    throw Error(Errc::internal_error,
                "translation base " + u_.str() + " left the system");
  return std::make_unique<TranslateCursor>(std::move(inner));
}

class PruneNode final : public SystemNode {
 public:
  PruneNode(SystemPtr inner, int colour)
      : SystemNode(inner->k()), inner_(std::move(inner)), colour_(colour) {}

  std::unique_ptr<SystemCursor> root_cursor() const override;

 protected:
  void propagate_budget(int d) const override { inner_->ensure_budget(d); }

 private:
  SystemPtr inner_;
  int colour_;
};

class PruneCursor final : public SystemCursor {
 public:
  PruneCursor(std::unique_ptr<SystemCursor> inner, int colour)
      : inner_(std::move(inner)), colour_(colour) {}

  bool step(int c) override {
    Word next = pos_.adjoin(c);
    if (!next.empty() && next.head() == colour_) return false;
    if (!inner_->step(c)) return false;
    pos_ = std::move(next);
    return true;
  }

  const Word& position() const override { return pos_; }

 private:
  std::unique_ptr<SystemCursor> inner_;
  int colour_;
  Word pos_;
};

std::unique_ptr<SystemCursor> PruneNode::root_cursor() const {
  return std::make_unique<PruneCursor>(inner_->root_cursor(), colour_);
}

}  // namespace

SystemPtr finite_system(FiniteColourSystem base) {
  return std::make_shared<FiniteNode>(std::move(base));
}

SystemPtr translate(SystemPtr v, const Word& u) {
  if (u.empty()) return v;
  v->ensure_budget(u.norm());
  if (!v->contains(u))
    throw Error(Errc::not_a_node, "cannot re-root at " + u.str());
  // Collapse stacked translations: u^-1 (w^-1 V) = (w u)^-1 V.
  if (auto* t = dynamic_cast<const TranslateNode*>(v.get())) {
    Word combined = multiply(t->u_, u);
    SystemPtr base = t->inner_;
    if (combined.empty()) return base;
    return std::make_shared<TranslateNode>(std::move(base), std::move(combined));
  }
  return std::make_shared<TranslateNode>(std::move(v), u);
}

SystemPtr prune(SystemPtr v, int c) {
  if (c < 1 || c > v->k())
    throw Error(Errc::invalid_prune, "colour " + std::to_string(c) +
                                         " outside alphabet");
  v->ensure_budget(1);
  if (!v->contains(Word({c}, v->k())))
    throw Error(Errc::invalid_prune,
                "colour " + std::to_string(c) + " not incident to the root");
  return std::make_shared<PruneNode>(std::move(v), c);
}

namespace {

void enumerate_rec(SystemCursor& cur, Word& w, int k, int depth_left,
                   std::vector<Word>& out) {
  if (out.size() > kBallNodeGuard)
    throw Error(Errc::ball_size_exceeded,
                "enumeration exceeds node guard");
  out.push_back(w);
  if (depth_left == 0) return;
  int avoid = w.empty() ? 0 : w.tail();
  for (int c = 1; c <= k; ++c) {
    if (c == avoid) continue;  // keep the walk reduced
    if (!cur.step(c)) continue;
    w = w.adjoin(c);
    enumerate_rec(cur, w, k, depth_left - 1, out);
    w = w.adjoin(c);
    cur.step(c);
  }
}

}  // namespace

FiniteColourSystem restrict_depth(const SystemNode& v, int h) {
  if (h < 0) throw Error(Errc::contract_violation, "negative depth");
  v.ensure_budget(h);
  std::vector<Word> words;
  auto cur = v.root_cursor();
  Word w;
  enumerate_rec(*cur, w, v.k(), h, words);
  return FiniteColourSystem(v.k(), std::move(words));
}

RootedBall extract_ball(const SystemPtr& v, const Word& centre, int radius) {
  if (radius < 0) throw Error(Errc::contract_violation, "negative radius");
  v->ensure_budget(centre.norm() + radius);
  SystemPtr rooted = translate(v, centre);
  return RootedBall{restrict_depth(*rooted, radius), radius};
}

ColourMask incident_mask(const SystemNode& v, const Word& node) {
  v.ensure_budget(node.norm() + 1);
  auto cur = v.root_cursor();
  if (!walk_to(*cur, node))
    throw Error(Errc::not_a_node, node.str() + " is not in the system");
  return incident_mask_at(*cur, v.k());
}

std::vector<int> incident_colours(const SystemNode& v, const Word& node) {
  return mask_to_colours(incident_mask(v, node));
}

bool equal_to_depth(const SystemNode& u, const SystemNode& v, int h) {
  if (u.k() != v.k())
    throw Error(Errc::contract_violation, "alphabet mismatch");
  return restrict_depth(u, h).nodes() == restrict_depth(v, h).nodes();
}

namespace {

void all_words_rec(int k, int depth_left, Word& w, std::vector<Word>& out) {
  out.push_back(w);
  if (depth_left == 0) return;
  int avoid = w.empty() ? 0 : w.tail();
  for (int c = 1; c <= k; ++c) {
    if (c == avoid) continue;
    w = w.adjoin(c);
    all_words_rec(k, depth_left - 1, w, out);
    w = w.adjoin(c);
  }
}

}  // namespace

std::vector<Word> all_reduced_words(int k, int depth) {
  Word::check_alphabet(k);
  std::vector<Word> out;
  Word w;
  all_words_rec(k, depth, w, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace matchlab
