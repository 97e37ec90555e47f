#include "matchlab/template_engine.hpp"

#include <algorithm>
#include <mutex>

namespace matchlab {

int ForbiddenNode::at(const Word& t) const {
  {
    std::shared_lock lock(memo_mx_);
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
  }
  int c = compute(t);
  if (c < 1 || c > k_)
    throw Error(Errc::contract_violation,
                "forbidden colour out of range at " + t.str());
  {
    std::unique_lock lock(memo_mx_);
    memo_.emplace(t, c);
  }
  return c;
}

namespace {

class ConstantForbidden final : public ForbiddenNode {
 public:
  ConstantForbidden(int k, int c) : ForbiddenNode(k), c_(c) {}

 private:
  int compute(const Word&) const override { return c_; }
  int c_;
};

class MapForbidden final : public ForbiddenNode {
 public:
  MapForbidden(int k, std::map<Word, int> values)
      : ForbiddenNode(k), values_(std::move(values)) {}

 private:
  int compute(const Word& t) const override {
    auto it = values_.find(t);
    if (it == values_.end())
      throw Error(Errc::not_a_node,
                  "forbidden oracle has no value at " + t.str());
    return it->second;
  }
  std::map<Word, int> values_;
};

class TranslatedForbidden final : public ForbiddenNode {
 public:
  TranslatedForbidden(ForbiddenPtr inner, Word u)
      : ForbiddenNode(inner->k()), inner_(std::move(inner)), u_(std::move(u)) {}

 private:
  int compute(const Word& t) const override {
    return inner_->at(multiply(u_, t));
  }
  ForbiddenPtr inner_;
  Word u_;
};

}  // namespace

ForbiddenPtr constant_forbidden(int k, int c) {
  if (c < 1 || c > k)
    throw Error(Errc::invalid_word, "forbidden colour out of range");
  return std::make_shared<ConstantForbidden>(k, c);
}

ForbiddenPtr map_forbidden(int k, std::map<Word, int> values) {
  return std::make_shared<MapForbidden>(k, std::move(values));
}

ForbiddenPtr translate_forbidden(ForbiddenPtr f, Word u) {
  if (u.empty()) return f;
  return std::make_shared<TranslatedForbidden>(std::move(f), std::move(u));
}

Template::Template(SystemPtr system, ForbiddenPtr tau, int h)
    : system_(std::move(system)), tau_(std::move(tau)), h_(h) {
  if (!system_ || !tau_)
    throw Error(Errc::contract_violation, "template needs system and oracle");
  if (tau_->k() != system_->k())
    throw Error(Errc::contract_violation, "template alphabet mismatch");
  if (h < 0 || h > k())
    throw Error(Errc::contract_violation, "template regularity out of range");
}

ColourMask Template::free_at(const Word& t) const {
  {
    std::shared_lock lock(free_mx_);
    auto it = free_memo_.find(t);
    if (it != free_memo_.end()) return it->second;
  }
  system_->ensure_budget(t.norm() + 1);
  auto cur = system_->root_cursor();
  if (!walk_to(*cur, t))
    throw Error(Errc::not_a_node, t.str() + " is not a template node");
  return free_at(*cur);
}

ColourMask Template::free_at(SystemCursor& at) const {
  const Word& t = at.position();
  {
    std::shared_lock lock(free_mx_);
    auto it = free_memo_.find(t);
    if (it != free_memo_.end()) return it->second;
  }
  ColourMask incident = incident_mask_at(at, k());
  if (mask_size(incident) != h_)
    throw Error(Errc::contract_violation,
                "system is not " + std::to_string(h_) + "-regular at " +
                    t.str() + " (degree " +
                    std::to_string(mask_size(incident)) + ")");
  int f = tau_->at(t);
  if (mask_has(incident, f))
    throw Error(Errc::contract_violation,
                "forbidden colour " + std::to_string(f) + " is incident at " +
                    t.str());
  ColourMask free = full_mask(k()) & ~incident & ~(1u << f);
  {
    std::unique_lock lock(free_mx_);
    free_memo_.emplace(t, free);
  }
  return free;
}

TemplatePtr make_template(SystemPtr system, ForbiddenPtr tau, int h) {
  return std::make_shared<Template>(std::move(system), std::move(tau), h);
}

TemplatePtr zero_template(int k, int c) {
  FiniteColourSystem z(k, {Word()});
  return make_template(finite_system(std::move(z)), constant_forbidden(k, c),
                       0);
}

TemplatePtr translate_template(const TemplatePtr& t, const Word& y) {
  if (y.empty()) return t;
  return make_template(translate(t->system(), y),
                       translate_forbidden(t->tau(), y), t->h());
}

Picker::Picker(TemplatePtr base, int b) : base_(std::move(base)), b_(b) {
  if (!base_) throw Error(Errc::invalid_picker, "picker needs a template");
  int max_b = base_->k() - base_->h() - 1;
  if (b < 0 || b > max_b)
    throw Error(Errc::invalid_picker,
                "picker size " + std::to_string(b) + " exceeds free colours (" +
                    std::to_string(max_b) + ")");
}

ColourMask Picker::pick(const Word& t) const {
  {
    std::shared_lock lock(memo_mx_);
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
  }
  base_->system()->ensure_budget(t.norm() + 1);
  auto cur = base_->system()->root_cursor();
  if (!walk_to(*cur, t))
    throw Error(Errc::not_a_node, t.str() + " is not a template node");
  return pick_at(*cur);
}

ColourMask Picker::pick_at(SystemCursor& at) const {
  const Word& t = at.position();
  {
    std::shared_lock lock(memo_mx_);
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
  }
  ColourMask free = base_->free_at(at);
  ColourMask chosen = choose(t, free);
  if ((chosen & ~free) != 0)
    throw Error(Errc::invalid_picker,
                "picked colour not free at " + t.str());
  if (mask_size(chosen) != b_)
    throw Error(Errc::invalid_picker,
                "picker must choose exactly " + std::to_string(b_) +
                    " colours at " + t.str());
  {
    std::unique_lock lock(memo_mx_);
    memo_.emplace(t, chosen);
  }
  return chosen;
}

namespace {

ColourMask lowest_bits(ColourMask m, int count) {
  ColourMask out = 0;
  for (int c = 1; c <= kMaxAlphabet && count > 0; ++c)
    if (mask_has(m, c)) {
      out = mask_add(out, c);
      --count;
    }
  return out;
}

class CanonicalPicker final : public Picker {
 public:
  CanonicalPicker(TemplatePtr base, int b, std::map<Word, ColourMask> overrides)
      : Picker(std::move(base), b), overrides_(std::move(overrides)) {}

 private:
  ColourMask choose(const Word& t, ColourMask free) const override {
    auto it = overrides_.find(t);
    if (it != overrides_.end()) return it->second;
    return lowest_bits(free, b());
  }
  std::map<Word, ColourMask> overrides_;
};

class PreferencePicker final : public Picker {
 public:
  PreferencePicker(TemplatePtr base, std::function<int(const Word&)> prefer)
      : Picker(std::move(base), 1), prefer_(std::move(prefer)) {}

 private:
  ColourMask choose(const Word& t, ColourMask free) const override {
    int p = prefer_(t);
    if (p >= 1 && p <= kMaxAlphabet && mask_has(free, p))
      return ColourMask(1) << p;
    return lowest_bits(free, 1);
  }
  std::function<int(const Word&)> prefer_;
};

class FreePicker final : public Picker {
 public:
  explicit FreePicker(TemplatePtr base)
      : Picker(base, base->k() - base->h() - 1) {}

 private:
  ColourMask choose(const Word&, ColourMask free) const override {
    return free;
  }
};

}  // namespace

PickerPtr canonical_picker(TemplatePtr base, int b,
                           std::map<Word, std::vector<int>> overrides) {
  std::map<Word, ColourMask> masks;
  for (auto& [w, cols] : overrides) {
    ColourMask m = 0;
    for (int c : cols) {
      if (c < 1 || c > base->k())
        throw Error(Errc::invalid_picker, "override colour out of range");
      m = mask_add(m, c);
    }
    masks.emplace(w, m);
  }
  return std::make_shared<CanonicalPicker>(std::move(base), b,
                                           std::move(masks));
}

PickerPtr preference_picker(TemplatePtr base,
                            std::function<int(const Word&)> prefer) {
  return std::make_shared<PreferencePicker>(std::move(base),
                                            std::move(prefer));
}

// ---------------------------------------------------------------------------
// Extension system: the letter walk realizing the relation between X and T.

class ExtensionCursor final : public SystemCursor {
 public:
  ExtensionCursor(std::unique_ptr<SystemCursor> inner, const Picker* picker)
      : inner_(std::move(inner)), picker_(picker) {}

  bool step(int c) override {
    // Descend through the template when the edge exists there; otherwise the
    // step is an unfolded self-loop iff the picker chose c at this class.
    if (inner_->step(c)) {
      pos_ = pos_.adjoin(c);
      return true;
    }
    if (mask_has(picker_->pick_at(*inner_), c)) {
      pos_ = pos_.adjoin(c);
      return true;
    }
    return false;
  }

  const Word& position() const override { return pos_; }
  const Word& projected() const { return inner_->position(); }

 private:
  std::unique_ptr<SystemCursor> inner_;  // at p(pos_)
  const Picker* picker_;
  Word pos_;
};

class ExtensionSystemNode final : public SystemNode {
 public:
  ExtensionSystemNode(TemplatePtr base, PickerPtr picker)
      : SystemNode(base->k()), base_(std::move(base)),
        picker_(std::move(picker)) {}

  std::unique_ptr<SystemCursor> root_cursor() const override {
    return std::make_unique<ExtensionCursor>(base_->system()->root_cursor(),
                                             picker_.get());
  }

  std::optional<Word> project(const Word& x) const {
    ExtensionCursor cur(base_->system()->root_cursor(), picker_.get());
    if (!walk_to(cur, x)) return std::nullopt;
    return cur.projected();
  }

 protected:
  void propagate_budget(int d) const override {
    // A walk of length d probes template edges one step below its nodes.
    base_->system()->ensure_budget(d + 1);
  }

 private:
  TemplatePtr base_;
  PickerPtr picker_;
};

namespace {

class ProjectedForbidden final : public ForbiddenNode {
 public:
  ProjectedForbidden(std::shared_ptr<const ExtensionSystemNode> node,
                     ForbiddenPtr tau)
      : ForbiddenNode(tau->k()), node_(std::move(node)), tau_(std::move(tau)) {}

 private:
  int compute(const Word& x) const override {
    auto t = node_->project(x);
    if (!t)
      throw Error(Errc::not_a_node, x.str() + " is not in the extension");
    return tau_->at(*t);
  }
  std::shared_ptr<const ExtensionSystemNode> node_;
  ForbiddenPtr tau_;
};

}  // namespace

Extension::Extension(TemplatePtr base, PickerPtr picker)
    : base_(std::move(base)), picker_(std::move(picker)) {
  if (picker_->base().get() != base_.get())
    throw Error(Errc::invalid_picker, "picker built for a different template");
  node_ = std::make_shared<ExtensionSystemNode>(base_, picker_);
  system_ = node_;
  xi_ = std::make_shared<ProjectedForbidden>(node_, base_->tau());
  as_template_ =
      make_template(system_, xi_, base_->h() + picker_->b());
}

Word Extension::project(const Word& x) const {
  system_->ensure_budget(x.norm());
  auto t = node_->project(x);
  if (!t) throw Error(Errc::not_a_node, x.str() + " is not in the extension");
  return *t;
}

ExtensionPtr extend(TemplatePtr base, PickerPtr picker) {
  return std::make_shared<Extension>(std::move(base), std::move(picker));
}

ExtensionPtr realise(const TemplatePtr& t) {
  int b = t->k() - t->h() - 1;
  if (b < 0)
    throw Error(Errc::contract_violation,
                "cannot realise a template with h >= k");
  return extend(t, std::make_shared<FreePicker>(t));
}

const ExtensionPtr& Evaluator::realisation(const TemplatePtr& t) const {
  {
    std::shared_lock lock(mx_);
    auto it = realisations_.find(t.get());
    if (it != realisations_.end()) return it->second.second;
  }
  ExtensionPtr real = realise(t);
  std::unique_lock lock(mx_);
  auto [it, inserted] = realisations_.emplace(t.get(), std::pair{t, real});
  return it->second.second;
}

int Evaluator::eval(const TemplatePtr& t, const Word& node) const {
  {
    std::shared_lock lock(mx_);
    auto it = cache_.find({t.get(), node});
    if (it != cache_.end()) return it->second;
  }
  const ExtensionPtr& real = realisation(t);
  // t itself is a realisation node in the class of t: its own letters all
  // step through template edges, so the projection fixes it.
  RootedBall ball =
      extract_ball(real->system(), node, a_.runtime() + 1);
  int out = a_.eval(ball);
  {
    std::unique_lock lock(mx_);
    cache_.emplace(std::pair{t.get(), node}, out);
  }
  return out;
}

std::vector<SystemEdge> matched_edges(const Evaluator& ev, const TemplatePtr& t,
                                      int depth) {
  FiniteColourSystem nodes = restrict_depth(*t->system(), depth);
  std::vector<SystemEdge> out;
  for (const Word& u : nodes.nodes()) {
    int c = ev.eval(t, u);
    if (c == kUnmatched) continue;
    if (!mask_has(incident_mask(*t->system(), u), c)) continue;
    Word v = u.adjoin(c);
    if (ev.eval(t, v) != c) continue;
    // Emit each matched edge once, oriented pred -> node.
    if (v.norm() > u.norm())
      out.push_back(SystemEdge{u, v, c});
    else if (!nodes.contains(v))
      out.push_back(SystemEdge{v, u, c});
  }
  return out;
}

}  // namespace matchlab
