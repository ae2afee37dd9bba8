#include "ordlim/reversing.hpp"

#include <algorithm>

namespace ordlim::cone {

namespace {

constexpr std::size_t kMaxDelta = 4096;
constexpr std::size_t kMaxWord = 1 << 22;

void append(std::vector<int>& out, const std::vector<int>& w, std::int64_t times = 1) {
  for (std::int64_t r = 0; r < times; ++r) out.insert(out.end(), w.begin(), w.end());
}

}  // namespace

std::optional<ChainReverser> ChainReverser::build(const ChainSpec& spec, int m) {
  if (!spec.has_dehornoy_cone() || m < 0) return std::nullopt;
  ChainReverser r;
  r.m_ = m;
  const std::size_t n = static_cast<std::size_t>(2 * m + 1);

  // g_j = g_{j-1}^{k_j-1} g_{j-2}^{k_{j-1}-1} ... g_{-m}^{k_{-m+1}-1} a_j
  r.g_.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    AWord w;
    for (std::size_t s = t; s-- > 0;) {
      const int level = static_cast<int>(s) - m;
      append(w, r.g_[s], spec.at(level + 1).k - 1);
      if (w.size() > kMaxWord) return std::nullopt;
    }
    w.push_back(static_cast<int>(t));
    r.g_[t] = std::move(w);
  }

  // W_i = g_{i+1}^{l_{i+1}-1}; V_ij = W_{j-1} ... W_i
  std::vector<AWord> wi(n);
  for (std::size_t t = 0; t + 1 < n; ++t) {
    append(wi[t], r.g_[t + 1], spec.at(static_cast<int>(t + 1) - m).l - 1);
  }
  r.v_.assign(n, std::vector<AWord>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      AWord v = wi[j - 1];
      append(v, r.v_[i][j - 1]);
      if (v.size() > kMaxWord) return std::nullopt;
      r.v_[i][j] = std::move(v);
    }
  }

  std::int64_t power = 1;
  for (int j = -m + 1; j <= m; ++j) {
    if (__builtin_mul_overflow(power, spec.at(j).k, &power) || power > static_cast<std::int64_t>(kMaxDelta)) {
      return std::nullopt;
    }
  }
  r.delta_.assign(static_cast<std::size_t>(power), 0);

  // d_n = g_n^-1 Delta, by reversing
  r.d_.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<int> input;
    for (auto it = r.g_[t].rbegin(); it != r.g_[t].rend(); ++it) input.push_back(-(*it + 1));
    for (int a : r.delta_) input.push_back(a + 1);
    std::size_t steps = 0;
    auto res = r.reverse(std::move(input), 50'000'000, steps);
    if (!res || !res->second.empty()) return std::nullopt;
    r.d_[t] = std::move(res->first);
  }
  return r;
}

std::optional<std::pair<ChainReverser::AWord, ChainReverser::AWord>> ChainReverser::reverse(
    std::vector<int> input, std::size_t budget, std::size_t& steps) const {
  // input is consumed from the back; keep it reversed so the next letter is last
  std::reverse(input.begin(), input.end());
  AWord pos, neg;  // current prefix equals pos * neg^-1, neg listed outermost-last
  while (!input.empty()) {
    const int x = input.back();
    input.pop_back();
    if (x < 0) {
      neg.push_back(-x - 1);
      continue;
    }
    const int t = x - 1;
    if (neg.empty()) {
      pos.push_back(t);
      continue;
    }
    const int s = neg.back();
    neg.pop_back();
    if (++steps > budget || input.size() > kMaxWord) return std::nullopt;
    if (s == t) continue;
    // s^-1 t = c d^-1; push c d^-1 back in front of the input
    if (s < t) {
      const AWord& d = v_[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
      for (int a : d) input.push_back(-(a + 1));  // d^-1 read left to right is reversed d
    } else {
      const AWord& c = v_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
      for (auto it = c.rbegin(); it != c.rend(); ++it) input.push_back(*it + 1);
    }
  }
  std::reverse(neg.begin(), neg.end());
  return std::make_pair(std::move(pos), std::move(neg));
}

std::optional<ChainReverser::Outcome> ChainReverser::decide(const Word& w, std::size_t step_budget) const {
  // w = Delta^-n q with q positive
  AWord q;
  std::size_t n = 0;
  for (const Letter& l : w.letters()) {
    if (l.gen < -m_ || l.gen > m_) return std::nullopt;
    const std::size_t t = static_cast<std::size_t>(l.gen + m_);
    const AWord& piece = l.exp > 0 ? g_[t] : d_[t];
    const std::int64_t reps = l.exp > 0 ? l.exp : -l.exp;
    if (l.exp < 0) n += static_cast<std::size_t>(reps);
    if (static_cast<double>(piece.size()) * static_cast<double>(reps) + static_cast<double>(q.size()) > kMaxWord) {
      return std::nullopt;
    }
    append(q, piece, reps);
  }
  std::vector<int> input;
  input.reserve(n * delta_.size() + q.size());
  for (std::size_t r = 0; r < n * delta_.size(); ++r) input.push_back(-1);
  for (int a : q) input.push_back(a + 1);
  Outcome out;
  auto res = reverse(std::move(input), step_budget, out.steps);
  if (!res) return std::nullopt;
  auto& [pos, neg] = *res;
  if (!pos.empty() && !neg.empty()) return std::nullopt;
  if (!pos.empty()) {
    out.sign = 1;
    out.factors = std::move(pos);
  } else if (!neg.empty()) {
    out.sign = -1;
    out.factors = std::move(neg);
  }
  return out;
}

}  // namespace ordlim::cone
