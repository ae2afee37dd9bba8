#pragma once

// Word problem for the finitely presented groups built by this library.
//
// Two independent engines live here:
//
//  * TreeNormalizer: exact normal forms for a tree of infinite cyclic groups
//    (every chain group G_(m), the limit, the cyclic tower and every Ito
//    amalgam is one). Elements are reduced paths in the Bass-Serre tree with
//    canonical coset representatives; the result is a canonical Word.
//
//  * RewriteSystem: Knuth-Bendix completion over unit letters with a wreath
//    ordering. Best effort; the complete flag is only set after every critical
//    pair has been checked to join.
//
// naive_equal is a third, deliberately dumb oracle: it only ever confirms
// equality by explicit relator substitutions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordlim/chainspec.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/words.hpp"

namespace ordlim::rewriting {

/// An edge g_u^a = g_v^b of a tree of cyclic groups.
struct TreeEdge {
  int u = 0;
  std::int64_t a = 1;
  int v = 0;
  std::int64_t b = 1;
};

class TreeNormalizer {
 public:
  /// The chain group of a spec at every window at once (normal forms do not
  /// depend on the window). Base vertex is g_0.
  static TreeNormalizer for_chain(const ChainSpec& spec);
  /// A finite tree of cyclic groups. Every relator must have the shape
  /// g_u^a g_v^b with u != v, and the relators must form a spanning tree of the
  /// generators. The first generator is the base vertex.
  static TreeNormalizer for_presentation(const PresState& pres);
  static TreeNormalizer for_tree(std::vector<int> vertices, std::vector<TreeEdge> edges);

  /// Canonical representative; normalize(a) == normalize(b) iff a = b.
  Word normalize(const Word& w) const;
  bool equal(const Word& a, const Word& b) const;
  bool is_identity(const Word& w) const { return normalize(w).empty(); }

  bool is_chain() const { return chain_.has_value(); }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  const std::vector<int>& vertices() const { return vertices_; }

 private:
  struct Hop {
    int next = 0;
    std::int64_t from_exp = 1;  // g_from^from_exp = g_next^to_exp, from_exp > 0
    std::int64_t to_exp = 1;
  };
  Hop hop(int from, int to) const;
  bool knows(int v) const;

  std::optional<ChainSpec> chain_;
  int base_ = 0;
  std::vector<int> vertices_;
  std::vector<TreeEdge> edges_;
  std::map<int, std::size_t> index_;
  // next_[i][j]: hop from vertex i toward vertex j (finite trees only).
  std::vector<std::vector<Hop>> next_;
};

// ---------------------------------------------------------------------------
// Knuth-Bendix completion

struct Rule {
  Word lhs;
  Word rhs;
};

enum class CompletionStatus { Complete, RuleBudgetExceeded, LengthBudgetExceeded };

const char* to_string(CompletionStatus s);

struct CompletionOptions {
  std::size_t max_rules = 400;
  std::size_t max_len = 40;
};

/// Ranks generators for the wreath ordering. Higher rank dominates; rules
/// therefore rewrite heavy letters into lighter ones.
struct GeneratorRanking {
  std::vector<int> lightest_first;
};

/// For chain presentations: g_0 lightest, then g_{-1}, g_1, g_{-2}, g_2, ...
GeneratorRanking center_out_ranking(const PresState& pres);
GeneratorRanking listed_ranking(const PresState& pres);

class RewriteSystem {
 public:
  using Code = std::vector<int>;

  const PresState& presentation() const { return pres_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const GeneratorRanking& ranking() const { return ranking_; }
  /// Signed letter order used to break ties inside the wreath ordering.
  Precedence precedence() const;
  bool complete() const { return status_ == CompletionStatus::Complete; }
  CompletionStatus status() const { return status_; }

  /// Irreducible descendant of w. Throws ResourceExhausted past step_budget.
  Word normalize(const Word& w, std::size_t step_budget = 1'000'000) const;
  /// Group equality; throws Unsupported unless the system is complete.
  bool equal(const Word& a, const Word& b) const;
  /// Wreath comparison of two words over the system's alphabet.
  Ordering compare(const Word& a, const Word& b) const;

  // Coded interface shared with completion and the confluence checker.
  Code encode(const Word& w) const;
  Word decode(const Code& c) const;
  Code reduce(Code w, std::size_t step_budget) const;
  bool less(const Code& a, const Code& b) const;
  const std::vector<std::pair<Code, Code>>& coded_rules() const { return coded_; }

 private:
  friend RewriteSystem complete(const PresState&, const CompletionOptions&,
                                std::optional<GeneratorRanking>);
  void set_rules(std::vector<std::pair<Code, Code>> rules);

  PresState pres_;
  GeneratorRanking ranking_;
  std::map<int, int> rank_of_;
  std::vector<std::pair<Code, Code>> coded_;
  std::vector<std::vector<std::size_t>> by_last_;
  std::vector<Rule> rules_;
  CompletionStatus status_ = CompletionStatus::Complete;
};

/// Knuth-Bendix completion. The ranking defaults to center_out_ranking for
/// chain presentations and to the listed order otherwise.
RewriteSystem complete(const PresState& pres, const CompletionOptions& options = {},
                       std::optional<GeneratorRanking> ranking = std::nullopt);

struct ConfluenceReport {
  std::size_t pairs_checked = 0;
  std::size_t unjoinable = 0;
  bool confluent() const { return unjoinable == 0; }
};

/// Recomputes every critical pair of the rule set (including overlaps with the
/// free cancellation rules) and checks that each joins. Independent of the
/// completion run that produced the rules.
ConfluenceReport check_confluence(const RewriteSystem& rs);

// ---------------------------------------------------------------------------
// Naive oracle

enum class NaiveVerdict { Equal, Unknown };

/// Best-first search (shorter words first) from a * b^-1 to the empty word,
/// using free reduction and substitutions u -> v^-1 for every cyclic rotation
/// uv of a relator or its inverse. Never claims inequality.
NaiveVerdict naive_equal(const PresState& pres, const Word& a, const Word& b, std::size_t budget);

}  // namespace ordlim::rewriting
