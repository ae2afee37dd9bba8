#include "ordlim/grammar.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "ordlim/errors.hpp"
#include "ordlim/presentations.hpp"

namespace ordlim {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  std::size_t pos() const { return pos_; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::int64_t integer() {
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::int64_t v = 0;
    const char* b = s_.data() + start;
    const char* e = s_.data() + pos_;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || b == e) {
      pos_ = start;
      fail("expected an integer");
    }
    return v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("word syntax error at column " + std::to_string(pos_ + 1) + ": " + what + " in \"" +
                     std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

int to_level(Scanner& sc, std::int64_t v) {
  if (v < -1'000'000 || v > 1'000'000) sc.fail("level out of range");
  return static_cast<int>(v);
}

}  // namespace

Word parse_word(std::string_view text, const ChainSpec* spec) {
  Scanner sc(text);
  std::vector<Word> terms;
  while (!sc.done()) {
    if (!terms.empty()) sc.expect(' ');
    Word term;
    if (sc.accept('g')) {
      sc.expect('(');
      const int level = to_level(sc, sc.integer());
      sc.expect(')');
      term = Word::gen(level);
    } else if (sc.accept('a')) {
      sc.expect('(');
      const int i = to_level(sc, sc.integer());
      sc.expect(',');
      const std::int64_t m = sc.integer();
      if (m < 0) sc.fail("window must be a natural number");
      sc.expect(')');
      if (!spec) throw InputError("a(i,m) terms need a chain spec");
      term = cone_generator(*spec, {i, to_level(sc, m)});
    } else {
      sc.fail("expected 'g(' or 'a('");
    }
    if (sc.accept('^')) {
      const std::int64_t e = sc.integer();
      if (e == 0) sc.fail("exponent must be nonzero");
      term = power(term, e);
    }
    terms.push_back(std::move(term));
  }
  Word out;
  for (const Word& t : terms) out = mul(out, t);
  return out;
}

std::string format_word(const Word& w) {
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += "g(" + std::to_string(l.gen) + ")";
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

}  // namespace ordlim
