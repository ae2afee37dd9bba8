#pragma once

// Free words over the indexed alphabet {g_n : n in Z}.
//
// Words are stored run-length encoded: a sequence of (generator, exponent)
// syllables in which neighbouring syllables never share a generator and no
// exponent is zero. Relations routinely manipulate powers like g_i^{k_{i+1}},
// so the compact form keeps those cheap.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ordlim {

/// Names generator g_level. Levels are unbounded integers.
struct GenRef {
  int level = 0;
  friend auto operator<=>(const GenRef&, const GenRef&) = default;
};

struct Letter {
  int gen = 0;
  std::int64_t exp = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);

  /// Builds a word from arbitrary syllables, merging runs and dropping zeros.
  static Word from_letters(std::span<const Letter> letters);
  static Word gen(int level, std::int64_t exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t syllables() const { return letters_.size(); }
  /// Number of unit letters, sum of |exp|.
  std::int64_t length() const;
  /// Largest |level| over the letters, 0 for the identity.
  int window() const;
  int min_level() const;
  int max_level() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

Word free_reduce(const Word& w);
Word mul(const Word& a, const Word& b);
Word mul(std::initializer_list<Word> factors);
Word invert(const Word& w);
Word power(const Word& w, std::int64_t n);
/// Adds d to every level.
Word shift_levels(const Word& w, int d);

/// Expands syllables into unit letters (gen, +1 or -1).
std::vector<std::pair<int, int>> unit_letters(const Word& w);

enum class Ordering { Less, Equal, Greater };

const char* to_string(Ordering o);

struct SignedLetter {
  int gen = 0;
  bool inverse = false;
  friend auto operator<=>(const SignedLetter&, const SignedLetter&) = default;
};

/// A total order on signed letters. The default ranks generators by level
/// ascending with g_n before g_n^-1; an explicit list restricts the domain.
class Precedence {
 public:
  Precedence() = default;
  static Precedence level_ascending();
  static Precedence explicit_order(std::vector<SignedLetter> order);

  /// Rank of a letter, or nullopt when it is outside the domain.
  std::optional<std::int64_t> rank(SignedLetter s) const;

 private:
  bool explicit_ = false;
  std::vector<SignedLetter> order_;
};

/// Shortlex: shorter words first, ties broken letter by letter. Throws
/// InputError if a letter lies outside the precedence domain.
Ordering shortlex_compare(const Word& a, const Word& b,
                          const Precedence& precedence = {});

}  // namespace ordlim

namespace ordlim {

/// All freely reduced words of unit length <= radius over g_lo..g_hi and their
/// inverses, by length, then in shortlex order of the letters g_lo < g_lo^-1 < ...
std::vector<Word> ball(int lo, int hi, int radius);

}  // namespace ordlim
