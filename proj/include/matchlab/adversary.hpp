#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "matchlab/template_engine.hpp"

namespace matchlab {

// Two h-regular templates agreeing to depth h (and on forbidden colours to
// depth h-1) on which the algorithm's root behaviour differs: matched
// through an incident colour on S, unmatchable at the root of T. This is
// the induction invariant of the lower-bound construction.
struct CriticalPair {
  int h = 0;
  TemplatePtr s;  // (S, sigma)
  TemplatePtr t;  // (T, tau)
};

struct BaseTrace {
  std::vector<int> h_of;  // h_of[c] = output at the root of ({e}, c); [0] unused
  int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  std::string branch;  // "i" or "ii"
};

struct StepTrace {
  int h = 0;    // level of the input pair
  int chi = 0;  // root output of T_h, the colour the glued halves share
  Word y;       // critical node the next pair is recentred at
  std::string side;  // "K" or "L"
};

// Finite instance on which the algorithm demonstrably fails, with the
// recorded outputs and the first M1/M2/M3 violation in canonical order.
struct ViolationWitness {
  std::string origin;  // which engine check failed
  FiniteColourSystem instance;
  MatchingOutput outputs;
  VerifyReport report;
};

// Machine-checkable outcome of an adversary run: either a tightness pair
// (U[d] = V[d] with differing root outputs, plus the finite ball dumps the
// evaluations depend on) or a concrete violation witness.
struct Certificate {
  std::string kind;  // "tightness" | "violation"
  int k = 0;
  int d = 0;
  std::string alg_name;
  int alg_k = 0;
  int alg_r = 0;
  BaseTrace base;
  std::vector<StepTrace> steps;
  // tightness payload
  FiniteColourSystem u_depth;  // U[d]
  FiniteColourSystem v_depth;  // V[d]
  RootedBall ball_u;           // radius-(r+1) ball at the root of U
  RootedBall ball_v;
  int out_u = 0;
  int out_v = 0;
  // violation payload
  std::optional<ViolationWitness> violation;
};

struct AdversaryOptions {
  bool parallel = true;
  // Depth of the structural checks after each extension step.
  int step_check_depth = 2;
  // Depth to which C4 (perfect matching on S) is sampled; -1 = r+3.
  int pair_check_depth = -1;
};

// Runs the constructive lower bound against A: base case, then one
// inductive step per level up to d = k-1. Every guarantee the construction
// relies on is checked; any breach is localized to a finite instance and
// reported as a violation certificate instead. For k <= 2 the hard-coded
// micro-instances are tried; if A passes them, no witness exists at this
// runtime and Errc::no_witness is thrown.
Certificate run_induction(const BallAlgorithm& a, int k,
                          const AdversaryOptions& opts = {});

struct CertCheck {
  bool pass = true;
  std::string detail;
};

// Re-derives every claim of a certificate from its embedded finite dumps
// alone: set equality of U[d] and V[d] over all words of norm <= d, dump
// consistency, and the algorithm outputs (recomputed through the registry).
// Violation certificates are replayed on their instance.
CertCheck verify_certificate(const nlohmann::json& cert);

}  // namespace matchlab
