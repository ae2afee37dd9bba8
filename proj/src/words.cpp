#include "ordlim/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "ordlim/errors.hpp"

namespace ordlim {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ResourceExhausted("exponent overflow while merging syllables");
  }
  return out;
}

// Appends one syllable to an already reduced sequence, cancelling as needed.
void push_reduced(std::vector<Letter>& out, Letter l) {
  if (l.exp == 0) return;
  if (!out.empty() && out.back().gen == l.gen) {
    out.back().exp = checked_add(out.back().exp, l.exp);
    if (out.back().exp == 0) out.pop_back();
    return;
  }
  out.push_back(l);
}

}  // namespace

Word::Word(std::initializer_list<Letter> letters)
    : Word(from_letters(std::span<const Letter>(letters.begin(), letters.size()))) {}

Word Word::from_letters(std::span<const Letter> letters) {
  Word w;
  w.letters_.reserve(letters.size());
  for (const Letter& l : letters) push_reduced(w.letters_, l);
  return w;
}

Word Word::gen(int level, std::int64_t exp) {
  Word w;
  if (exp != 0) w.letters_.push_back({level, exp});
  return w;
}

std::int64_t Word::length() const {
  std::int64_t n = 0;
  for (const Letter& l : letters_) n += std::llabs(l.exp);
  return n;
}

int Word::window() const {
  int w = 0;
  for (const Letter& l : letters_) w = std::max(w, std::abs(l.gen));
  return w;
}

int Word::min_level() const {
  int lo = std::numeric_limits<int>::max();
  for (const Letter& l : letters_) lo = std::min(lo, l.gen);
  return letters_.empty() ? 0 : lo;
}

int Word::max_level() const {
  int hi = std::numeric_limits<int>::min();
  for (const Letter& l : letters_) hi = std::max(hi, l.gen);
  return letters_.empty() ? 0 : hi;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const Letter& l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l.gen)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(l.exp) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

Word free_reduce(const Word& w) { return Word::from_letters(w.letters()); }

Word mul(const Word& a, const Word& b) {
  std::vector<Letter> out(a.letters());
  for (const Letter& l : b.letters()) push_reduced(out, l);
  return Word::from_letters(out);
}

Word mul(std::initializer_list<Word> factors) {
  std::vector<Letter> out;
  for (const Word& f : factors) {
    for (const Letter& l : f.letters()) push_reduced(out, l);
  }
  return Word::from_letters(out);
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.syllables());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back({it->gen, -it->exp});
  }
  return Word::from_letters(out);
}

Word power(const Word& w, std::int64_t n) {
  if (n == 0 || w.empty()) return {};
  const Word base = n > 0 ? w : invert(w);
  const std::int64_t reps = n > 0 ? n : -n;
  // A single syllable powers without expansion.
  if (base.syllables() == 1) {
    const Letter& l = base.letters().front();
    std::int64_t e;
    if (__builtin_mul_overflow(l.exp, reps, &e)) {
      throw ResourceExhausted("exponent overflow in power");
    }
    return Word::gen(l.gen, e);
  }
  std::vector<Letter> out;
  for (std::int64_t i = 0; i < reps; ++i) {
    for (const Letter& l : base.letters()) push_reduced(out, l);
  }
  return Word::from_letters(out);
}

Word shift_levels(const Word& w, int d) {
  std::vector<Letter> out(w.letters());
  for (Letter& l : out) l.gen += d;
  return Word::from_letters(out);
}

std::vector<std::pair<int, int>> unit_letters(const Word& w) {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(w.length()));
  for (const Letter& l : w.letters()) {
    const int s = l.exp > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < std::llabs(l.exp); ++i) out.emplace_back(l.gen, s);
  }
  return out;
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
  }
  return "?";
}

Precedence Precedence::level_ascending() { return {}; }

Precedence Precedence::explicit_order(std::vector<SignedLetter> order) {
  Precedence p;
  p.explicit_ = true;
  p.order_ = std::move(order);
  return p;
}

std::optional<std::int64_t> Precedence::rank(SignedLetter s) const {
  if (!explicit_) {
    return static_cast<std::int64_t>(s.gen) * 2 + (s.inverse ? 1 : 0);
  }
  auto it = std::find(order_.begin(), order_.end(), s);
  if (it == order_.end()) return std::nullopt;
  return static_cast<std::int64_t>(it - order_.begin());
}

Ordering shortlex_compare(const Word& a, const Word& b, const Precedence& precedence) {
  auto rank_of = [&](int gen, bool inverse) {
    auto r = precedence.rank({gen, inverse});
    if (!r) {
      throw InputError("letter g(" + std::to_string(gen) + ")" + (inverse ? "^-1" : "") +
                       " is outside the precedence domain");
    }
    return *r;
  };
  // Validate the domain before any early exit so errors do not depend on length.
  for (const Word* w : {&a, &b}) {
    for (const Letter& l : w->letters()) rank_of(l.gen, l.exp < 0);
  }
  const std::int64_t la = a.length();
  const std::int64_t lb = b.length();
  if (la != lb) return la < lb ? Ordering::Less : Ordering::Greater;

  // Walk both run-length sequences in lockstep without expanding them.
  std::size_t ia = 0, ib = 0;
  std::int64_t used_a = 0, used_b = 0;
  while (ia < a.syllables() && ib < b.syllables()) {
    const Letter& x = a.letters()[ia];
    const Letter& y = b.letters()[ib];
    const auto rx = rank_of(x.gen, x.exp < 0);
    const auto ry = rank_of(y.gen, y.exp < 0);
    if (rx != ry) return rx < ry ? Ordering::Less : Ordering::Greater;
    const std::int64_t left_x = std::llabs(x.exp) - used_a;
    const std::int64_t left_y = std::llabs(y.exp) - used_b;
    const std::int64_t step = std::min(left_x, left_y);
    used_a += step;
    used_b += step;
    if (used_a == std::llabs(x.exp)) { ++ia; used_a = 0; }
    if (used_b == std::llabs(y.exp)) { ++ib; used_b = 0; }
  }
  return Ordering::Equal;
}

}  // namespace ordlim

namespace ordlim {

std::vector<Word> ball(int lo, int hi, int radius) {
  std::vector<Word> out{Word{}};
  if (lo > hi || radius <= 0) return out;
  std::vector<std::vector<std::pair<int, int>>> layer{{}};
  for (int len = 1; len <= radius; ++len) {
    std::vector<std::vector<std::pair<int, int>>> next;
    for (const auto& w : layer) {
      for (int g = lo; g <= hi; ++g) {
        for (int s : {1, -1}) {
          if (!w.empty() && w.back().first == g && w.back().second == -s) continue;
          auto v = w;
          v.emplace_back(g, s);
          next.push_back(std::move(v));
        }
      }
    }
    for (const auto& w : next) {
      std::vector<Letter> letters;
      for (auto [g, s] : w) letters.push_back({g, s});
      out.push_back(Word::from_letters(letters));
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace ordlim
