#pragma once

// Certificate search for P_(m) by right reversing.
//
// In terms of the cone generators a_{-m,m} .. a_{m,m} the chain group satisfies
// a_i = a_j V_ij (i < j) with V_ij = W_{j-1} ... W_i and W_i = g_{i+1}^{l_{i+1}-1},
// each g_n itself a positive word in the a's. Delta = g_{-m}^{k_{-m+1} ... k_m}
// is central, so an element can be written Delta^-n q with q positive; right
// reversing (Delta^n)^-1 q then yields a positive word for the element or for
// its inverse. Each relation used is a group identity, so any answer is a
// genuine factorization; callers still re-check it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ordlim/chainspec.hpp"
#include "ordlim/words.hpp"

namespace ordlim::cone {

class ChainReverser {
 public:
  /// Returns nullopt if the spec has no cone or Delta would be too long.
  static std::optional<ChainReverser> build(const ChainSpec& spec, int m);

  struct Outcome {
    int sign = 0;                   // +1, -1, or 0 for the identity
    std::vector<int> factors;       // generator offsets i + m
    std::size_t steps = 0;
  };

  /// nullopt when reversing exceeds the step budget or ends in a mixed word.
  std::optional<Outcome> decide(const Word& w, std::size_t step_budget) const;

  int window() const { return m_; }
  /// Positive a-word (offsets) for g_level.
  const std::vector<int>& level_word(int level) const { return g_[static_cast<std::size_t>(level + m_)]; }
  /// Positive a-word (offsets) V_ij with a_i = a_j V_ij; requires -m <= i < j <= m.
  const std::vector<int>& quotient(int i, int j) const {
    return v_[static_cast<std::size_t>(i + m_)][static_cast<std::size_t>(j + m_)];
  }

 private:
  using AWord = std::vector<int>;
  // right-reverses the signed word (letters +-(offset+1)); nullopt past budget
  std::optional<std::pair<AWord, AWord>> reverse(std::vector<int> input, std::size_t budget,
                                                 std::size_t& steps) const;

  int m_ = 0;
  std::vector<AWord> g_;                 // g_n as a-word, index n + m
  std::vector<std::vector<AWord>> v_;    // v_[i][j] = V_ij, i < j (offsets)
  AWord delta_;
  std::vector<AWord> d_;                 // d_[n + m]: positive word equal to g_n^-1 Delta
};

}  // namespace ordlim::cone
