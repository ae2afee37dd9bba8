#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordlim/chainspec.hpp"
#include "ordlim/words.hpp"

namespace ordlim {

/// A finite presentation. Generators are integer ids (the chain uses the level
/// n for g_n); names are only for display.
struct PresState {
  std::vector<int> generators;
  std::vector<std::string> names;
  std::vector<Word> relators;

  bool has_generator(int id) const;
  const std::string& name_of(int id) const;
  /// Throws InputError if a relator mentions an unlisted generator.
  void validate() const;
};

/// g_{-m}, ..., g_m with relators g_{j-1}^{k_j} g_j^{-l_j} for -m < j <= m.
PresState chain_presentation(const ChainSpec& spec, int m);

/// Identifies the cone generator a_{i,m}, -m <= i <= m.
struct ConeGenId {
  int i = 0;
  int m = 0;
  friend auto operator<=>(const ConeGenId&, const ConeGenId&) = default;
};

/// a_{-m,m} = g_{-m}; otherwise g_{-m}^{-(k_{-m+1}-1)} ... g_{i-1}^{-(k_i-1)} g_i.
Word cone_generator(const ChainSpec& spec, ConeGenId id);

/// The generating set of P_(m), ordered a_{-m,m}, ..., a_{m,m}.
std::vector<ConeGenId> cone_generator_ids(int m);

// Euclidean normalisation of a single edge relation x^k = y^l.

struct Resolution {
  std::int64_t dividend = 0;   // r_prev
  std::int64_t quotient = 0;   // q
  std::int64_t divisor = 0;    // r_cur
  std::int64_t remainder = 0;  // r_next
};

/// introduced := replaced * other^{-quotient}. The replaced generator appears
/// with exponent 1 in the defining word, so the step is invertible.
struct Substitution {
  std::string replaced;
  std::string introduced;
  std::string other;
  std::int64_t quotient = 0;
  Word definition;  // over ids 0 (x) and 1 (y): the introduced generator in terms of x, y
};

struct TietzeStep {
  Substitution substitution;
  Resolution resolution;
};

struct GcdObstruction {
  std::int64_t d = 1;
  std::int64_t reduced_k = 0;
  std::int64_t reduced_l = 0;
};

/// A relation lhs^lhs_exp = rhs^rhs_exp between two named generators.
struct NamedRelation {
  std::string lhs;
  std::int64_t lhs_exp = 0;
  std::string rhs;
  std::int64_t rhs_exp = 0;
};

struct TietzeTrace {
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::optional<GcdObstruction> obstruction;
  /// True when the reduced exponents had r1 < r2 and the roles were swapped.
  bool swapped = false;
  std::vector<TietzeStep> steps;
  NamedRelation final_relation;

  bool has_exponent_one_relation() const;
};

TietzeTrace euclid_normalize(std::int64_t k, std::int64_t l);

/// Replays a trace on the commuting two-generator quotient
/// <x, y | x^{r1} = y^{r2}, [x, y]>.
struct AbelianReplay {
  bool steps_unimodular = true;
  /// Relation vector in the final basis (coefficients of the two current
  /// generators).
  std::int64_t final_a = 0;
  std::int64_t final_b = 0;
  /// Generators left after eliminating one with a unit coefficient.
  int generators_left = 2;
  bool consistent = true;
};

AbelianReplay replay_abelian(const TietzeTrace& trace);

}  // namespace ordlim
