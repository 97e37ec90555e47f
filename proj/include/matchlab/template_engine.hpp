#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "matchlab/colour_system.hpp"
#include "matchlab/local_model.hpp"

namespace matchlab {

// Oracle assigning a forbidden colour to every node of a colour system.
class ForbiddenNode {
 public:
  explicit ForbiddenNode(int k) : k_(k) { Word::check_alphabet(k); }
  virtual ~ForbiddenNode() = default;

  ForbiddenNode(const ForbiddenNode&) = delete;
  ForbiddenNode& operator=(const ForbiddenNode&) = delete;

  int k() const { return k_; }
  int at(const Word& t) const;  // memoized

 private:
  virtual int compute(const Word& t) const = 0;

  int k_;
  mutable std::unordered_map<Word, int> memo_;
  mutable std::shared_mutex memo_mx_;
};

using ForbiddenPtr = std::shared_ptr<const ForbiddenNode>;

ForbiddenPtr constant_forbidden(int k, int c);
// Total on the given support; queries outside it are an error.
ForbiddenPtr map_forbidden(int k, std::map<Word, int> values);
// t -> f(u t): the forbidden oracle seen from the re-rooted system.
ForbiddenPtr translate_forbidden(ForbiddenPtr f, Word u);

class Template;
using TemplatePtr = std::shared_ptr<const Template>;

// An h-template: an h-regular colour system T together with a forbidden
// colour per node that is never incident. Regularity and the forbidden
// invariant are opaque oracle properties, so they are validated lazily on
// every node whose free colours get computed; a breach throws.
class Template {
 public:
  Template(SystemPtr system, ForbiddenPtr tau, int h);

  int k() const { return system_->k(); }
  int h() const { return h_; }
  const SystemPtr& system() const { return system_; }
  const ForbiddenPtr& tau() const { return tau_; }

  int forbidden(const Word& t) const { return tau_->at(t); }
  ColourMask incident(const Word& t) const {
    return incident_mask(*system_, t);
  }

  // F(T, tau, t): colours neither incident nor forbidden at t. Size k-h-1.
  ColourMask free_at(const Word& t) const;
  // Same, probing with a cursor already positioned at t (no root walk).
  ColourMask free_at(SystemCursor& at) const;

 private:
  SystemPtr system_;
  ForbiddenPtr tau_;
  int h_;

  mutable std::unordered_map<Word, ColourMask> free_memo_;
  mutable std::shared_mutex free_mx_;
};

TemplatePtr make_template(SystemPtr system, ForbiddenPtr tau, int h);

// ({e}, c): the smallest template; its free colours are everything but c.
TemplatePtr zero_template(int k, int c);

// (y^-1 T, y^-1 tau): the template seen from y.
TemplatePtr translate_template(const TemplatePtr& t, const Word& y);

// Chooses b free colours for every template node. Choices are memoized and
// validated (subset of the free colours, exactly b of them) on first query.
class Picker {
 public:
  Picker(TemplatePtr base, int b);
  virtual ~Picker() = default;

  int b() const { return b_; }
  const TemplatePtr& base() const { return base_; }

  ColourMask pick(const Word& t) const;
  ColourMask pick_at(SystemCursor& at) const;

 private:
  virtual ColourMask choose(const Word& t, ColourMask free) const = 0;

  TemplatePtr base_;
  int b_;
  mutable std::unordered_map<Word, ColourMask> memo_;
  mutable std::shared_mutex memo_mx_;
};

using PickerPtr = std::shared_ptr<const Picker>;

// The b smallest free colours, except where an override says otherwise.
PickerPtr canonical_picker(TemplatePtr base, int b,
                           std::map<Word, std::vector<int>> overrides = {});

// Picker driven by an arbitrary choice function (used by the adversary);
// chooses {prefer(t)} when that colour is free, else the smallest free one.
PickerPtr preference_picker(TemplatePtr base,
                            std::function<int(const Word&)> prefer);

class ExtensionSystemNode;

// ext(T, tau, P) = (X, xi, p): the colour system obtained by unfolding the
// picker colours as self-loops, with the projection p back to the template
// and the inherited forbidden oracle xi = tau o p.
class Extension {
 public:
  Extension(TemplatePtr base, PickerPtr picker);

  const TemplatePtr& base() const { return base_; }
  const PickerPtr& picker() const { return picker_; }
  const SystemPtr& system() const { return system_; }
  const ForbiddenPtr& xi() const { return xi_; }
  // (X, xi) as an (h+b)-template. Cached, so object identity is stable.
  const TemplatePtr& as_template() const { return as_template_; }

  // p(x); error if x is not in the extension.
  Word project(const Word& x) const;

 private:
  TemplatePtr base_;
  PickerPtr picker_;
  std::shared_ptr<const ExtensionSystemNode> node_;
  SystemPtr system_;
  ForbiddenPtr xi_;
  TemplatePtr as_template_;
};

using ExtensionPtr = std::shared_ptr<const Extension>;

ExtensionPtr extend(TemplatePtr base, PickerPtr picker);

// Extension by the full free-colour picker: a (k-1)-regular concrete
// instance. For a (k-1)-template this is the template itself with the
// identity projection.
ExtensionPtr realise(const TemplatePtr& t);

// Evaluates a ball algorithm on template equivalence classes: the output of
// A at the class of t is A's output at any realisation node projecting to t,
// and t itself is such a node. Realisations and outputs are cached per
// template object, so share one Evaluator across a run.
class Evaluator {
 public:
  explicit Evaluator(const BallAlgorithm& a) : a_(a) {}

  const BallAlgorithm& algorithm() const { return a_; }

  int eval(const TemplatePtr& t, const Word& node) const;
  const ExtensionPtr& realisation(const TemplatePtr& t) const;

 private:
  const BallAlgorithm& a_;
  mutable std::map<std::pair<const Template*, Word>, int> cache_;
  mutable std::map<const Template*, std::pair<TemplatePtr, ExtensionPtr>>
      realisations_;
  mutable std::shared_mutex mx_;
};

// Template edges matched by A among nodes of norm <= depth: {u, uc} with
// both endpoints outputting c.
std::vector<SystemEdge> matched_edges(const Evaluator& ev, const TemplatePtr& t,
                                      int depth);

}  // namespace matchlab
