#pragma once

// Convex subgroups of the limit ordering: closure of a seed inside a word
// ball, a small deduction engine for "x lies in every convex subgroup that
// contains S", and replays of the conditions used for non-isolation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordlim/chainspec.hpp"
#include "ordlim/cone.hpp"
#include "ordlim/probes.hpp"
#include "ordlim/words.hpp"

namespace ordlim::convexity {

/// Seed: the conclusion is a seed element.
/// Root: premise = conclusion^exponent, exponent != 0.
/// Sandwich: 1 < conclusion < premise, both certified.
/// RelationRewrite: premise and conclusion are equal in the group.
/// Product: conclusion is the free product of the premises, in order.
/// Inverse: conclusion is the free inverse of the premise.
enum class Rule { Seed, Root, Sandwich, RelationRewrite, Product, Inverse };

const char* to_string(Rule r);

struct Step {
  Rule rule = Rule::Seed;
  std::vector<std::size_t> premises;
  Word conclusion;
  std::int64_t exponent = 0;
  /// Sandwich only: sign of the conclusion, then sign of conclusion^-1 premise.
  std::vector<cone::SignResult> evidence;
};

struct DeductionTrace {
  std::vector<Step> steps;
};

struct DeduceOptions {
  std::size_t step_budget = 2000;
  std::size_t sign_budget = 2000;
  /// Largest window for elements the engine may introduce; -1 picks the
  /// largest window among seeds and targets.
  int max_window = -1;
};

struct Deduction {
  bool complete = false;
  DeductionTrace trace;
  /// For each target: the step concluding it, or nullopt when it is a seed
  /// element, the identity, or unreached.
  std::vector<std::optional<std::size_t>> target_steps;
  std::vector<bool> reached;
  /// Everything known to lie in C when the search stopped.
  std::vector<Word> frontier;
  int max_window = 0;
};

Deduction deduce_containment(const ChainSpec& spec, const std::vector<Word>& seed,
                             const std::vector<Word>& targets, const DeduceOptions& options = {});

struct TraceCheck {
  bool valid = true;
  std::size_t failed_step = 0;
  std::string reason;
};

/// Independent replay: every step is re-checked against its rule schema.
TraceCheck replay(const ChainSpec& spec, const std::vector<Word>& seed, const DeductionTrace& trace);

struct ConvexApprox {
  std::vector<Word> seed;
  int window = 0;
  int radius = 0;
  /// Normal forms, shortlex sorted; the identity included.
  std::vector<Word> members;
  bool truncated = false;
  std::size_t work = 0;
  /// Derivation of every member except the identity.
  DeductionTrace trace;
};

/// Least subset of the ball of the given radius at the given window that
/// contains the seed and is closed under inverses, products and roots staying
/// in the ball, and the sandwich rule. budget bounds products and sign calls.
ConvexApprox gamma_ball(const ChainSpec& spec, const std::vector<Word>& seed, int window, int radius,
                        std::size_t budget, std::size_t sign_budget = 2000);

probes::ProbeReport replay_conditions(const ChainSpec& spec, int m, const DeduceOptions& options = {});

probes::ProbeReport conradian_soul_evidence(const ChainSpec& spec, int radius, int horizon,
                                            const DeduceOptions& options = {}, int window = 1);

}  // namespace ordlim::convexity
