#pragma once

// Executable ordering properties: identity and inequality suites, discreteness,
// density, Conradian / cofinality / right-invariance probes, the rational
// evaluation of the cyclic tower, HNN orderings and the conjugate-witness search.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordlim/chaingroup.hpp"
#include "ordlim/chainspec.hpp"
#include "ordlim/cone.hpp"
#include "ordlim/words.hpp"

namespace ordlim::probes {

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

/// A sign verdict with its certificate as factor names ("a(1,1)", "x1", ...).
struct Signed {
  cone::Sign value = cone::Sign::Unknown;
  std::vector<std::string> certificate;  // of the element, or of its inverse when Negative
  std::size_t budget_used = 0;
  /// Group whose generators the names refer to: "chain" or a handle name.
  std::string basis = "chain";
};

using Signer = std::function<Signed(const Word&)>;

/// Sign oracle for a chain spec at the word's own window.
Signer chain_signer(const ChainSpec& spec, std::size_t budget);
Signed to_signed(const cone::SignResult& r);

struct Evidence {
  std::string role;
  Word word;
  std::optional<Signed> sign;
};

struct Check {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Evidence> evidence;
  std::string note;
};

struct ProbeReport {
  std::string probe;
  std::vector<Check> checks;
  std::map<std::string, std::int64_t> budgets;
  std::string note;

  Verdict overall() const;
  /// Sorts checks by name so the report does not depend on evaluation order.
  void finalize();
};

ProbeReport verify_dehornoy_props(const ChainSpec& spec, int m, std::size_t budget);
ProbeReport minimal_positive_probe(const ChainSpec& spec, int m, int radius, std::size_t budget);
ProbeReport density_probe(const ChainSpec& spec, int m_max, std::size_t budget);

/// For each pair of positive elements, the least n <= n_max with g1 < g2 g1^n.
ProbeReport conradian_probe(const Signer& signer, const std::vector<std::pair<Word, Word>>& pairs, int n_max);
/// For each sample g, the least M <= M_max with z^-M < g < z^M.
ProbeReport cofinal_probe(const Signer& signer, const Word& z, const std::vector<Word>& samples, int M_max);
/// For each pair, orders (a, b) and checks that a z and b z are ordered the same way.
ProbeReport right_invariance_probe(const Signer& signer, const Word& z,
                                   const std::vector<std::pair<Word, Word>>& samples);

/// Exact rational p/q with q > 0, gcd 1.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static Rational make(std::int64_t n, std::int64_t d);
  Rational operator+(const Rational& o) const;
  Rational operator-() const { return {-num, den}; }
  friend bool operator==(const Rational&, const Rational&) = default;
  int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
  std::string str() const;
};

/// g(n) -> l^-n, extended additively. The spec must be a cyclic tower.
Rational zl_evaluate(const ChainSpec& spec, const Word& w);

enum class TowerOrder { StandardUp, StandardDown };
/// The tower's two orderings, read off the evaluation.
cone::Sign tower_sign(const ChainSpec& spec, const Word& w, TowerOrder order);

enum class HnnVariant { TPositive, TNegative };

struct HnnSign {
  cone::Sign value = cone::Sign::Unknown;
  /// Set when t_exp == 0 and the sign comes from the cone.
  std::optional<cone::SignResult> base;
  std::string basis;  // "t-exponent" or "cone"
};

HnnSign hnn_sign(const ChainSpec& spec, const HnnElement& x, HnnVariant variant, std::size_t budget);

struct WitnessOptions {
  int conj_window = 2;
  int conj_radius = 2;
  int disc_window = 2;
  int disc_radius = 2;
  std::size_t budget = 2000;
};

struct WitnessResult {
  bool found = false;
  Word conjugator;
  Word discriminator;
  std::vector<Word> agreement;
  /// sign of each agreement element under the cone and under the conjugate
  std::vector<std::pair<cone::SignResult, cone::SignResult>> agreement_signs;
  cone::SignResult disc_sign;
  cone::SignResult disc_conjugate_sign;
  std::size_t conjugators_tried = 0;
  std::size_t discriminators_tried = 0;
};

WitnessResult nonisolation_witness(const ChainSpec& spec, const std::vector<Word>& agreement,
                                   const WitnessOptions& options);
/// Re-verifies the four sign conditions of a witness from scratch.
bool verify_witness(const ChainSpec& spec, const WitnessResult& w, std::size_t budget);

}  // namespace ordlim::probes
