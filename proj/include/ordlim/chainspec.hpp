#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ordlim {

/// The exponents of the edge between g_{n-1} and g_n: g_{n-1}^k = g_n^l.
struct ExponentPair {
  std::int64_t k = 2;
  std::int64_t l = 2;
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// The exponent family (k_n, l_n)_{n in Z} that defines the chain groups.
///
/// Constant, Periodic and Table are the families with k_n, l_n >= 2 that carry
/// the left-ordering cones. CyclicTower(l) is the abelian tower g_{n-1} = g_n^l;
/// FreeProduct and FiniteChain are the degenerate constructions with no cone.
class ChainSpec {
 public:
  enum class Kind { Constant, Periodic, Table, CyclicTower, FreeProduct, FiniteChain };

  static ChainSpec constant(std::int64_t k, std::int64_t l);
  /// Level n uses pairs[n mod pairs.size()].
  static ChainSpec periodic(std::vector<ExponentPair> pairs);
  static ChainSpec table(std::map<int, ExponentPair> entries, ExponentPair fallback);
  static ChainSpec cyclic_tower(std::int64_t l);
  static ChainSpec free_product();
  /// Constant(k, l) with every g_n, |n| > bound, collapsed to the identity.
  static ChainSpec finite_chain(int bound, std::int64_t k, std::int64_t l);

  Kind kind() const { return kind_; }
  /// Exponents of the relation g_{n-1}^{k_n} = g_n^{l_n}. Total over Z.
  ExponentPair at(int n) const;

  /// True for the families whose chain groups carry the cones P_(m).
  bool has_dehornoy_cone() const;
  bool is_tower() const { return kind_ == Kind::CyclicTower; }
  bool has_edges() const { return kind_ != Kind::FreeProduct; }
  /// Whether level translation by d is an automorphism of the family.
  bool shift_invariant(int d) const;
  /// Levels that survive in the group (FiniteChain drops the rest).
  bool level_alive(int n) const;

  /// Canonical textual key, stable across runs; used for memo tables.
  std::string key() const;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

  std::int64_t tower_base() const { return tower_l_; }
  int finite_bound() const { return bound_; }
  const std::vector<ExponentPair>& periodic_pairs() const { return pairs_; }
  const std::map<int, ExponentPair>& table_entries() const { return entries_; }
  ExponentPair fallback() const { return fallback_; }

 private:
  Kind kind_ = Kind::Constant;
  std::vector<ExponentPair> pairs_;
  std::map<int, ExponentPair> entries_;
  ExponentPair fallback_;
  std::int64_t tower_l_ = 0;
  int bound_ = 0;
};

}  // namespace ordlim
