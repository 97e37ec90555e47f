#include "matchlab/adversary.hpp"

#include <algorithm>
#include <mutex>

#include "matchlab/json_io.hpp"

namespace matchlab {

namespace {

// ---------------------------------------------------------------------------
// Gluing: X agrees with K away from the chi-subtree and with L on it. Both
// operands share the edge {e, chi}, so the root is the only crossing point.

class GlueCursor final : public SystemCursor {
 public:
  GlueCursor(std::unique_ptr<SystemCursor> k_side,
             std::unique_ptr<SystemCursor> l_side, int chi)
      : k_(std::move(k_side)), l_(std::move(l_side)), chi_(chi) {}

  bool step(int c) override {
    // Invariant: whichever side we are on tracks the position, the other
    // cursor rests at e. Entering or leaving the chi-subtree passes through
    // the root, so the resting cursor is always ready.
    bool on_l = !pos_.empty() && pos_.head() == chi_;
    Word next = pos_.adjoin(c);
    bool next_l = !next.empty() && next.head() == chi_;
    SystemCursor& active = (pos_.empty() ? (next_l ? *l_ : *k_)
                                         : (on_l ? *l_ : *k_));
    if (!active.step(c)) return false;
    pos_ = std::move(next);
    return true;
  }

  const Word& position() const override { return pos_; }

 private:
  std::unique_ptr<SystemCursor> k_;
  std::unique_ptr<SystemCursor> l_;
  int chi_;
  Word pos_;
};

class GlueSystemNode final : public SystemNode {
 public:
  GlueSystemNode(SystemPtr k_sys, SystemPtr l_sys, int chi)
      : SystemNode(k_sys->k()), k_sys_(std::move(k_sys)),
        l_sys_(std::move(l_sys)), chi_(chi) {}

  std::unique_ptr<SystemCursor> root_cursor() const override {
    return std::make_unique<GlueCursor>(k_sys_->root_cursor(),
                                        l_sys_->root_cursor(), chi_);
  }

 protected:
  void propagate_budget(int d) const override {
    k_sys_->ensure_budget(d);
    l_sys_->ensure_budget(d);
  }

 private:
  SystemPtr k_sys_;
  SystemPtr l_sys_;
  int chi_;
};

class GlueForbidden final : public ForbiddenNode {
 public:
  GlueForbidden(ForbiddenPtr kappa, ForbiddenPtr lambda, int chi)
      : ForbiddenNode(kappa->k()), kappa_(std::move(kappa)),
        lambda_(std::move(lambda)), chi_(chi) {}

 private:
  int compute(const Word& x) const override {
    if (!x.empty() && x.head() == chi_) return lambda_->at(x);
    return kappa_->at(x);
  }
  ForbiddenPtr kappa_;
  ForbiddenPtr lambda_;
  int chi_;
};

TemplatePtr glue(const TemplatePtr& k_tpl, const TemplatePtr& l_tpl, int chi) {
  if (k_tpl->h() != l_tpl->h() || k_tpl->k() != l_tpl->k())
    throw Error(Errc::contract_violation, "glue operands must match");
  if (!mask_has(incident_mask(*k_tpl->system(), Word()), chi) ||
      !mask_has(incident_mask(*l_tpl->system(), Word()), chi))
    throw Error(Errc::contract_violation,
                "glue colour must be a root edge of both operands");
  auto sys = std::make_shared<GlueSystemNode>(k_tpl->system(), l_tpl->system(),
                                              chi);
  auto xi = std::make_shared<GlueForbidden>(k_tpl->tau(), l_tpl->tau(), chi);
  return make_template(sys, xi, k_tpl->h());
}

// ---------------------------------------------------------------------------
// Engine

// Internal signal: a guarantee the construction relies on did not hold for
// this algorithm. Carries enough context to localize a concrete violation.
struct ConstructionFailure {
  std::string origin;
  // Template nodes already known to expose a breach (e.g. an unmatched class
  // on a template that still has free colours).
  std::vector<std::pair<TemplatePtr, Word>> breaches;
};

class Engine {
 public:
  Engine(const BallAlgorithm& a, int k, const AdversaryOptions& opts)
      : a_(a), k_(k), d_(k - 1), r_(a.runtime()), opts_(opts), ev_(a) {
    if (a.k() < k)
      throw Error(Errc::contract_violation,
                  "algorithm alphabet smaller than requested k");
    pair_depth_ = opts.pair_check_depth >= 0 ? opts.pair_check_depth : r_ + 3;
  }

  Certificate run();

 private:
  Certificate run_micro();  // k <= 2
  CriticalPair base_case();
  CriticalPair inductive_step(const CriticalPair& pair);
  void check_pair(const CriticalPair& pair);
  Word find_critical_node(const TemplatePtr& x);
  int checked_eval(const TemplatePtr& t, const Word& node,
                   const std::string& where);

  Certificate violation_certificate(const ConstructionFailure& failure);
  std::optional<ViolationWitness> materialize_witness(const TemplatePtr& t,
                                                      const Word& node,
                                                      const std::string& origin,
                                                      int guard = 8);
  std::optional<ViolationWitness> scan_template(const TemplatePtr& t,
                                                const std::string& origin);

  Certificate skeleton(const std::string& kind) const;

  const BallAlgorithm& a_;
  int k_, d_, r_;
  AdversaryOptions opts_;
  int pair_depth_ = 0;
  Evaluator ev_;
  BaseTrace base_trace_;
  std::vector<StepTrace> steps_;
  std::vector<TemplatePtr> suspects_;  // templates built so far, oldest first
};

Certificate Engine::skeleton(const std::string& kind) const {
  Certificate c;
  c.kind = kind;
  c.k = k_;
  c.d = d_;
  c.alg_name = a_.name();
  c.alg_k = a_.k();
  c.alg_r = r_;
  c.base = base_trace_;
  c.steps = steps_;
  return c;
}

// Evaluates A at a template class; a bottom output on a template that still
// has free colours breaks the perfect-matching guarantee and is flagged as a
// concrete breach right away.
int Engine::checked_eval(const TemplatePtr& t, const Word& node,
                         const std::string& where) {
  int out = ev_.eval(t, node);
  if (out == kUnmatched && t->h() < d_)
    throw ConstructionFailure{
        where + ": class " + node.str() + " is unmatched although free "
        "colours remain",
        {{t, node}}};
  return out;
}

CriticalPair Engine::base_case() {
  // Root outputs of the one-node templates, one per forbidden colour.
  std::vector<TemplatePtr> zeros(k_ + 1);
  base_trace_.h_of.assign(k_ + 1, 0);
  for (int c = 1; c <= k_; ++c) {
    zeros[c] = zero_template(k_, c);
    suspects_.push_back(zeros[c]);
    int out = checked_eval(zeros[c], Word(), "base case");
    if (out == c)
      throw ConstructionFailure{
          "base case: root output equals the forbidden colour " +
              std::to_string(c),
          {{zeros[c], Word()}}};
    base_trace_.h_of[c] = out;
  }
  const auto& h = base_trace_.h_of;

  int c1, c2, c3;
  if (h[h[1]] != 1) {
    c1 = h[1];
    c2 = h[h[1]];
    c3 = 1;
  } else {
    int c = 0;
    for (int cand = 1; cand <= k_; ++cand)
      if (cand != 1 && cand != h[1]) {
        c = cand;
        break;
      }
    if (h[c] == h[1]) {
      c1 = h[1];
      c2 = 1;
      c3 = c;
    } else {
      c1 = 1;
      c2 = h[1];
      c3 = c;
    }
  }
  base_trace_.c1 = c1;
  base_trace_.c2 = c2;
  base_trace_.c3 = c3;
  base_trace_.c4 = h[c3];

  // The two-node system {e, c2} with three forbidden assignments: kappa is
  // constantly c1, lambda constantly c3, and xi mixes them.
  Word wc2({c2}, k_);
  FiniteColourSystem two(k_, {Word(), wc2});
  SystemPtr sys = finite_system(two);
  TemplatePtr k_tpl = make_template(sys, constant_forbidden(k_, c1), 1);
  TemplatePtr l_tpl = make_template(sys, constant_forbidden(k_, c3), 1);
  TemplatePtr x_tpl = make_template(
      sys, map_forbidden(k_, {{Word(), c1}, {wc2, c3}}), 1);
  suspects_.push_back(k_tpl);
  suspects_.push_back(l_tpl);
  suspects_.push_back(x_tpl);

  CriticalPair pair;
  pair.h = 1;
  int ax = checked_eval(x_tpl, Word(), "base case");
  if (ax != c2) {
    base_trace_.branch = "i";
    pair.s = k_tpl;
    pair.t = x_tpl;
  } else {
    base_trace_.branch = "ii";
    pair.s = translate_template(x_tpl, wc2);
    pair.t = translate_template(l_tpl, wc2);
    suspects_.push_back(pair.s);
    suspects_.push_back(pair.t);
  }
  check_pair(pair);
  return pair;
}

void Engine::check_pair(const CriticalPair& pair) {
  const auto& s = pair.s;
  const auto& t = pair.t;
  int h = pair.h;
  std::string lvl = "level-" + std::to_string(h) + " pair";
  if (!equal_to_depth(*s->system(), *t->system(), h))
    throw ConstructionFailure{lvl + ": C1 failed (S[h] != T[h])", {}};
  for (const Word& w : restrict_depth(*s->system(), h - 1).nodes())
    if (s->forbidden(w) != t->forbidden(w))
      throw ConstructionFailure{
          lvl + ": C2 failed (forbidden oracles differ at " + w.str() + ")",
          {}};
  int at_root = checked_eval(t, Word(), lvl);
  if (mask_has(incident_mask(*t->system(), Word()), at_root))
    throw ConstructionFailure{
        lvl + ": C3 failed (root of T matched along an incident colour)", {}};
  for (const Word& w : restrict_depth(*s->system(), pair_depth_).nodes()) {
    int out = checked_eval(s, w, lvl);
    if (!mask_has(incident_mask(*s->system(), w), out))
      throw ConstructionFailure{
          lvl + ": C4 failed (class " + w.str() +
              " of S not matched along an incident colour)",
          {{s, w}}};
  }
}

CriticalPair Engine::inductive_step(const CriticalPair& pair) {
  const int h = pair.h;
  const TemplatePtr s_tpl = pair.s;
  const TemplatePtr t_tpl = pair.t;
  std::string lvl = "step at level " + std::to_string(h);

  int chi = checked_eval(t_tpl, Word(), lvl);

  // Q follows the algorithm's own outputs on T; P copies Q where the
  // templates agree and defaults to the smallest free colour below.
  Engine* self = this;
  PickerPtr q = preference_picker(
      t_tpl, [self, t_tpl, lvl](const Word& node) {
        return self->checked_eval(t_tpl, node, lvl + " (picker on T)");
      });
  PickerPtr p = preference_picker(
      s_tpl, [self, t_tpl, q, h, lvl](const Word& node) {
        if (node.norm() <= h - 1) {
          ColourMask m = q->pick(node);
          return mask_to_colours(m).front();
        }
        return 0;  // falls back to the smallest free colour
      });

  ExtensionPtr k_ext = extend(s_tpl, p);
  ExtensionPtr l_ext = extend(t_tpl, q);
  TemplatePtr k_tpl = k_ext->as_template();
  TemplatePtr l_tpl = l_ext->as_template();
  suspects_.push_back(k_tpl);
  suspects_.push_back(l_tpl);

  // Structural guarantees of the freshly extended pair.
  Word wchi({chi}, k_);
  if (!mask_has(incident_mask(*k_tpl->system(), Word()), chi) ||
      !mask_has(incident_mask(*l_tpl->system(), Word()), chi))
    throw ConstructionFailure{lvl + ": glue edge missing at a root", {}};
  if (!(k_ext->project(Word()) == Word()) ||
      !(k_ext->project(wchi) == Word()) ||
      !(l_ext->project(Word()) == Word()) || !(l_ext->project(wchi) == Word()))
    throw ConstructionFailure{lvl + ": projections do not fix the glue edge",
                              {}};
  if (!equal_to_depth(*k_tpl->system(), *l_tpl->system(), h))
    throw ConstructionFailure{lvl + ": extended templates disagree to depth " +
                                  std::to_string(h),
                              {}};
  int sym_depth = opts_.step_check_depth;
  SystemPtr k_shift = translate(k_tpl->system(), wchi);
  if (!equal_to_depth(*k_shift, *k_tpl->system(), sym_depth))
    throw ConstructionFailure{lvl + ": K is not invariant under the glue "
                              "translation", {}};
  for (const Word& w : restrict_depth(*k_tpl->system(), sym_depth).nodes())
    if (k_tpl->forbidden(w) != k_tpl->forbidden(multiply(wchi, w)))
      throw ConstructionFailure{
          lvl + ": kappa not invariant under the glue translation", {}};

  // Matching behaviour around the glue edge: K leaves it out, L uses it.
  for (const Word& w : restrict_depth(*k_tpl->system(), sym_depth).nodes()) {
    if (!mask_has(incident_mask(*k_tpl->system(), w),
                  checked_eval(k_tpl, w, lvl)))
      throw ConstructionFailure{
          lvl + ": matching on K not perfect at " + w.str(), {{k_tpl, w}}};
    if (!mask_has(incident_mask(*l_tpl->system(), w),
                  checked_eval(l_tpl, w, lvl)))
      throw ConstructionFailure{
          lvl + ": matching on L not perfect at " + w.str(), {{l_tpl, w}}};
  }
  if (checked_eval(k_tpl, Word(), lvl) == chi &&
      checked_eval(k_tpl, wchi, lvl) == chi)
    throw ConstructionFailure{lvl + ": glue edge unexpectedly matched in K",
                              {}};
  if (checked_eval(l_tpl, Word(), lvl) != chi ||
      checked_eval(l_tpl, wchi, lvl) != chi)
    throw ConstructionFailure{lvl + ": glue edge not matched in L", {}};

  TemplatePtr x_tpl = glue(k_tpl, l_tpl, chi);
  suspects_.push_back(x_tpl);

  Word y = find_critical_node(x_tpl);
  bool l_side = !y.empty() && y.head() == chi;
  steps_.push_back(StepTrace{h, chi, y, l_side ? "L" : "K"});

  CriticalPair next;
  next.h = h + 1;
  next.s = translate_template(l_side ? l_tpl : k_tpl, y);
  next.t = translate_template(x_tpl, y);
  suspects_.push_back(next.s);
  suspects_.push_back(next.t);
  check_pair(next);
  return next;
}

Word Engine::find_critical_node(const TemplatePtr& x) {
  // Any matched edge with an endpoint of norm <= r+1 has both endpoints of
  // norm <= r+2, and the parity of the glued halves forces some class in
  // that range to miss out on every incident colour. The parallel phase only
  // warms the evaluation caches; the outcome is decided by a serial sweep in
  // canonical order, so the first qualifying node (or the first failure)
  // wins deterministically.
  FiniteColourSystem candidates = restrict_depth(*x->system(), r_ + 2);
  const auto& nodes = candidates.nodes();
  const int n = static_cast<int>(nodes.size());
  const int block = 64;
  for (int begin = 0; begin < n; begin += block) {
    int end = std::min(n, begin + block);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4) if (opts_.parallel)
    for (int i = begin; i < end; ++i) {
      try {
        ev_.eval(x, nodes[i]);
      } catch (const ConstructionFailure&) {
        // re-raised by the ordered sweep below
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (int i = begin; i < end; ++i) {
      int out = ev_.eval(x, nodes[i]);
      if (!mask_has(incident_mask(*x->system(), nodes[i]), out))
        return nodes[i];
    }
  }
  throw ConstructionFailure{
      "no critical node within norm " + std::to_string(r_ + 2) +
          " of the glued template",
      {}};
}

Certificate Engine::run() {
  try {
    if (k_ <= 2) return run_micro();
    CriticalPair pair = base_case();
    while (pair.h < d_) pair = inductive_step(pair);

    const TemplatePtr u = pair.s;
    const TemplatePtr v = pair.t;
    if (!equal_to_depth(*u->system(), *v->system(), d_))
      throw ConstructionFailure{"final pair: U[d] != V[d]", {}};
    int out_u = ev_.eval(u, Word());
    int out_v = ev_.eval(v, Word());
    if (!mask_has(incident_mask(*u->system(), Word()), out_u))
      throw ConstructionFailure{
          "final pair: root of U not matched along an incident colour",
          {{u, Word()}}};
    if (out_v != kUnmatched) {
      // A d-template is its own realisation, so a non-incident colour here
      // is already a concrete failure on the instance V.
      throw ConstructionFailure{
          "final pair: root of V outputs " + std::to_string(out_v) +
              " instead of staying unmatched",
          {{v, Word()}}};
    }

    Certificate cert = skeleton("tightness");
    cert.u_depth = restrict_depth(*u->system(), d_);
    cert.v_depth = restrict_depth(*v->system(), d_);
    cert.ball_u = extract_ball(u->system(), Word(), r_ + 1);
    cert.ball_v = extract_ball(v->system(), Word(), r_ + 1);
    cert.out_u = out_u;
    cert.out_v = out_v;
    return cert;
  } catch (const ConstructionFailure& failure) {
    return violation_certificate(failure);
  }
}

Certificate Engine::run_micro() {
  // Hard-coded micro-instances: the single-edge system for k = 1, and the
  // three two-colour systems whose radius-1 views trap any 0-round
  // algorithm.
  std::vector<FiniteColourSystem> instances;
  if (k_ == 1) {
    instances.push_back(FiniteColourSystem(1, {Word()}));
    instances.push_back(FiniteColourSystem(1, {Word(), Word({1}, 1)}));
  } else {
    instances.push_back(FiniteColourSystem(2, {Word(), Word({1}, 2)}));
    instances.push_back(FiniteColourSystem(2, {Word(), Word({2}, 2)}));
    instances.push_back(
        FiniteColourSystem(2, {Word(), Word({1}, 2), Word({2}, 2)}));
  }
  for (const FiniteColourSystem& sys : instances) {
    ColouredGraph g = system_graph(sys);
    MatchingOutput out = run_on_graph(a_, g, opts_.parallel);
    VerifyReport rep = verify_matching(g, out);
    if (!rep.pass) {
      Certificate cert = skeleton("violation");
      cert.violation =
          ViolationWitness{"micro-instance for k = " + std::to_string(k_),
                           sys, std::move(out), std::move(rep)};
      return cert;
    }
  }
  throw Error(Errc::no_witness,
              "algorithm passes the k <= 2 micro-instances; with runtime " +
                  std::to_string(r_) + " >= k-1 no witness is forced");
}

std::optional<ViolationWitness> Engine::materialize_witness(
    const TemplatePtr& t, const Word& node, const std::string& origin,
    int guard) {
  if (guard <= 0) return std::nullopt;
  // Truncate the realisation, re-rooted at the breach node, deep enough that
  // the outputs at the new root and its neighbours keep their infinite-case
  // values. The result is an ordinary finite instance A must handle. If the
  // enumeration itself trips over a breach one construction level below,
  // descend to that breach instead; the chain grounds out at the finite
  // base-case templates.
  try {
    for (int depth = r_ + 3; depth <= r_ + 4; ++depth) {
      const ExtensionPtr& real = ev_.realisation(t);
      FiniteColourSystem sys =
          restrict_depth(*translate(real->system(), node), depth);
      ColouredGraph g = system_graph(sys);
      MatchingOutput out = run_on_graph(a_, g, opts_.parallel);
      VerifyReport rep = verify_matching(g, out);
      if (!rep.pass)
        return ViolationWitness{origin, std::move(sys), std::move(out),
                                std::move(rep)};
    }
  } catch (const ConstructionFailure& f) {
    if (!f.breaches.empty())
      return materialize_witness(f.breaches.front().first,
                                 f.breaches.front().second, origin, guard - 1);
  }
  return std::nullopt;
}

std::optional<ViolationWitness> Engine::scan_template(
    const TemplatePtr& t, const std::string& origin) {
  FiniteColourSystem nodes;
  try {
    nodes = restrict_depth(*t->system(), r_ + 2);
  } catch (const ConstructionFailure&) {
    return std::nullopt;  // template itself cannot be enumerated; skip
  }
  for (const Word& w : nodes.nodes()) {
    std::optional<std::pair<TemplatePtr, Word>> breach;
    try {
      int out = ev_.eval(t, w);
      if (out == kUnmatched && t->h() < d_) {
        breach = {t, w};  // an unmatched class with a free-colour twin
      } else if (out != kUnmatched) {
        ColourMask incident = incident_mask(*t->system(), w);
        if (out == t->forbidden(w)) {
          breach = {t, w};  // output is never an edge of the realisation
        } else if (mask_has(incident, out) &&
                   ev_.eval(t, w.adjoin(out)) != out) {
          breach = {t, w};  // matched edge not reciprocated
        }
      } else {
        // h = d: unmatched is fine unless a neighbour is unmatched too.
        for (int c : mask_to_colours(incident_mask(*t->system(), w)))
          if (ev_.eval(t, w.adjoin(c)) == kUnmatched) {
            breach = {t, w};
            break;
          }
      }
    } catch (const ConstructionFailure& f) {
      if (!f.breaches.empty()) breach = f.breaches.front();
    }
    if (breach)
      if (auto witness = materialize_witness(breach->first, breach->second,
                                             origin))
        return witness;
  }
  return std::nullopt;
}

Certificate Engine::violation_certificate(const ConstructionFailure& failure) {
  // Known breaches first, then the most recently built templates.
  for (const auto& [tpl, node] : failure.breaches)
    if (auto witness = materialize_witness(tpl, node, failure.origin)) {
      Certificate cert = skeleton("violation");
      cert.violation = std::move(witness);
      return cert;
    }
  for (auto it = suspects_.rbegin(); it != suspects_.rend(); ++it)
    if (auto witness = scan_template(*it, failure.origin)) {
      Certificate cert = skeleton("violation");
      cert.violation = std::move(witness);
      return cert;
    }
  throw Error(Errc::internal_error,
              "construction failed (" + failure.origin +
                  ") but no concrete violation could be localized");
}

}  // namespace

Certificate run_induction(const BallAlgorithm& a, int k,
                          const AdversaryOptions& opts) {
  Word::check_alphabet(k);
  Engine engine(a, k, opts);
  return engine.run();
}

// ---------------------------------------------------------------------------
// Certificate verification: everything is recomputed from the dumps.

namespace {

CertCheck fail(const std::string& detail) { return CertCheck{false, detail}; }

CertCheck verify_tightness(const Certificate& c,
                           const BallAlgorithm& a) {
  if (c.u_depth.depth() > c.d || c.v_depth.depth() > c.d)
    return fail("depth-d dump contains nodes deeper than d");
  // Set equality checked the exhaustive way: membership of every reduced
  // word of norm <= d must agree.
  for (const Word& w : all_words(c.k, c.d))
    if (c.u_depth.contains(w) != c.v_depth.contains(w))
      return fail("U[d] and V[d] disagree at " + w.str());
  // The root balls are what the algorithm actually sees; they must agree
  // with the depth-d dumps wherever both are defined.
  int common_u = std::min(c.d, c.ball_u.radius);
  for (const Word& w : all_words(c.k, common_u))
    if (c.u_depth.contains(w) != c.ball_u.system.contains(w))
      return fail("U ball inconsistent with U[d] at " + w.str());
  int common_v = std::min(c.d, c.ball_v.radius);
  for (const Word& w : all_words(c.k, common_v))
    if (c.v_depth.contains(w) != c.ball_v.system.contains(w))
      return fail("V ball inconsistent with V[d] at " + w.str());
  if (c.ball_u.radius != a.runtime() + 1 || c.ball_v.radius != a.runtime() + 1)
    return fail("ball radius does not match the algorithm runtime");
  int out_u = a.eval(c.ball_u);
  int out_v = a.eval(c.ball_v);
  if (out_u != c.out_u)
    return fail("recomputed U output " + std::to_string(out_u) +
                " differs from claimed " + std::to_string(c.out_u));
  if (out_v != c.out_v)
    return fail("recomputed V output " + std::to_string(out_v) +
                " differs from claimed " + std::to_string(c.out_v));
  if (c.out_v != kUnmatched) return fail("root of V is not unmatched");
  if (c.out_u == kUnmatched ||
      !c.u_depth.contains(Word({c.out_u}, c.k)))
    return fail("root of U is not matched along an incident colour");
  return CertCheck{true,
                   "tightness verified: U[d] = V[d], outputs " +
                       std::to_string(c.out_u) + " vs unmatched"};
}

CertCheck verify_violation(const Certificate& c, const BallAlgorithm& a) {
  const ViolationWitness& w = c.violation.value();
  ColouredGraph g = system_graph(w.instance);
  MatchingOutput out = run_on_graph(a, g);
  if (out.outputs != w.outputs.outputs)
    return fail("recomputed outputs differ from the recorded ones");
  VerifyReport rep = verify_matching(g, out);
  if (rep.pass) return fail("algorithm output is a valid maximal matching");
  if (rep.condition != w.report.condition || rep.node != w.report.node ||
      rep.colour != w.report.colour || rep.neighbour != w.report.neighbour)
    return fail("first violation differs from the recorded one");
  return CertCheck{true, "violation verified: " + rep.message};
}

}  // namespace

CertCheck verify_certificate(const nlohmann::json& cert_json) {
  Certificate c;
  try {
    c = certificate_from_json(cert_json);
  } catch (const Error& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  }
  std::unique_ptr<BallAlgorithm> a;
  try {
    a = make_algorithm(c.alg_name,
                       nlohmann::json{{"k", c.alg_k}, {"r", c.alg_r}});
  } catch (const Error& e) {
    return fail(std::string("cannot resolve algorithm: ") + e.what());
  }
  try {
    if (c.kind == "tightness") return verify_tightness(c, *a);
    return verify_violation(c, *a);
  } catch (const Error& e) {
    return fail(std::string("verification error: ") + e.what());
  }
}

}  // namespace matchlab
