#include "ordlim/chainspec.hpp"

#include <cstdlib>

#include "ordlim/errors.hpp"

namespace ordlim {

namespace {

void require_cone_pair(const ExponentPair& p) {
  if (p.k < 2 || p.l < 2) {
    throw InputError("chain exponents must satisfy k, l >= 2 (got k=" + std::to_string(p.k) +
                     ", l=" + std::to_string(p.l) + ")");
  }
}

int floor_mod(int n, int m) {
  const int r = n % m;
  return r < 0 ? r + m : r;
}

}  // namespace

ChainSpec ChainSpec::constant(std::int64_t k, std::int64_t l) {
  ChainSpec s;
  s.kind_ = Kind::Constant;
  s.fallback_ = {k, l};
  require_cone_pair(s.fallback_);
  return s;
}

ChainSpec ChainSpec::periodic(std::vector<ExponentPair> pairs) {
  if (pairs.empty()) throw InputError("periodic chain needs at least one pair");
  for (const auto& p : pairs) require_cone_pair(p);
  ChainSpec s;
  s.kind_ = Kind::Periodic;
  s.pairs_ = std::move(pairs);
  return s;
}

ChainSpec ChainSpec::table(std::map<int, ExponentPair> entries, ExponentPair fallback) {
  require_cone_pair(fallback);
  for (const auto& [n, p] : entries) require_cone_pair(p);
  ChainSpec s;
  s.kind_ = Kind::Table;
  s.entries_ = std::move(entries);
  s.fallback_ = fallback;
  return s;
}

ChainSpec ChainSpec::cyclic_tower(std::int64_t l) {
  if (l < 2) throw InputError("cyclic tower needs l >= 2");
  ChainSpec s;
  s.kind_ = Kind::CyclicTower;
  s.tower_l_ = l;
  return s;
}

ChainSpec ChainSpec::free_product() {
  ChainSpec s;
  s.kind_ = Kind::FreeProduct;
  return s;
}

ChainSpec ChainSpec::finite_chain(int bound, std::int64_t k, std::int64_t l) {
  if (bound < 0) throw InputError("finite chain bound must be >= 0");
  ChainSpec s;
  s.kind_ = Kind::FiniteChain;
  s.bound_ = bound;
  s.fallback_ = {k, l};
  require_cone_pair(s.fallback_);
  return s;
}

ExponentPair ChainSpec::at(int n) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::FiniteChain:
      return fallback_;
    case Kind::Periodic:
      return pairs_[static_cast<std::size_t>(floor_mod(n, static_cast<int>(pairs_.size())))];
    case Kind::Table: {
      auto it = entries_.find(n);
      return it == entries_.end() ? fallback_ : it->second;
    }
    case Kind::CyclicTower:
      return {1, tower_l_};
    case Kind::FreeProduct:
      throw Unsupported("free product chain has no edge relations");
  }
  return fallback_;
}

bool ChainSpec::has_dehornoy_cone() const {
  return kind_ == Kind::Constant || kind_ == Kind::Periodic || kind_ == Kind::Table;
}

bool ChainSpec::shift_invariant(int d) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::CyclicTower:
    case Kind::FreeProduct:
      return true;
    case Kind::Periodic:
      return d % static_cast<int>(pairs_.size()) == 0;
    case Kind::Table:
      if (d == 0) return true;
      for (const auto& [n, p] : entries_) {
        if (!(p == fallback_)) return false;
      }
      return true;
    case Kind::FiniteChain:
      return d == 0;
  }
  return false;
}

bool ChainSpec::level_alive(int n) const {
  return kind_ != Kind::FiniteChain || std::abs(n) <= bound_;
}

std::string ChainSpec::key() const {
  auto pair = [](const ExponentPair& p) {
    return "(" + std::to_string(p.k) + "," + std::to_string(p.l) + ")";
  };
  switch (kind_) {
    case Kind::Constant:
      return "constant" + pair(fallback_);
    case Kind::Periodic: {
      std::string s = "periodic[";
      for (const auto& p : pairs_) s += pair(p);
      return s + "]";
    }
    case Kind::Table: {
      std::string s = "table{";
      for (const auto& [n, p] : entries_) s += std::to_string(n) + ":" + pair(p) + ";";
      return s + "}default" + pair(fallback_);
    }
    case Kind::CyclicTower:
      return "cyclic-tower(" + std::to_string(tower_l_) + ")";
    case Kind::FreeProduct:
      return "free-product";
    case Kind::FiniteChain:
      return "finite-chain(" + std::to_string(bound_) + ")" + pair(fallback_);
  }
  return "?";
}

}  // namespace ordlim
