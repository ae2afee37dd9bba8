#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "ordlim/words.hpp"

namespace testsupport {

inline ordlim::Word random_word(std::mt19937_64& rng, int lo, int hi, int max_syllables,
                                int max_exp = 3) {
  std::uniform_int_distribution<int> level(lo, hi);
  std::uniform_int_distribution<int> count(0, max_syllables);
  std::uniform_int_distribution<int> mag(1, max_exp);
  std::bernoulli_distribution neg(0.5);
  std::vector<ordlim::Letter> out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const int e = mag(rng);
    out.push_back({level(rng), neg(rng) ? -e : e});
  }
  return ordlim::Word::from_letters(out);
}

// Laurent polynomials in t with integer coefficients.
struct Laurent {
  std::map<int, std::int64_t> c;

  static Laurent constant(std::int64_t v) {
    Laurent p;
    if (v != 0) p.c[0] = v;
    return p;
  }
  static Laurent monomial(std::int64_t v, int e) {
    Laurent p;
    if (v != 0) p.c[e] = v;
    return p;
  }
  Laurent operator+(const Laurent& o) const {
    Laurent r = *this;
    for (auto [e, v] : o.c) {
      if ((r.c[e] += v) == 0) r.c.erase(e);
    }
    return r;
  }
  Laurent operator*(const Laurent& o) const {
    Laurent r;
    for (auto [e1, v1] : c) {
      for (auto [e2, v2] : o.c) {
        if ((r.c[e1 + e2] += v1 * v2) == 0) r.c.erase(e1 + e2);
      }
    }
    return r;
  }
  bool operator==(const Laurent&) const = default;
};

struct Mat2 {
  Laurent a, b, c, d;
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const Mat2&) const = default;
  static Mat2 identity() { return {Laurent::constant(1), {}, {}, Laurent::constant(1)}; }
};

// Reduced Burau representation of B_3, faithful. x = s1 s2 s1 and y = s1 s2
// satisfy x^2 = y^3, giving an isomorphism <x, y | x^2 = y^3> -> B_3.
class BraidOracle {
 public:
  BraidOracle() {
    const Laurent one = Laurent::constant(1), mone = Laurent::constant(-1);
    const Laurent t = Laurent::monomial(1, 1), mt = Laurent::monomial(-1, 1);
    const Laurent ti = Laurent::monomial(1, -1), mti = Laurent::monomial(-1, -1);
    const Mat2 s1{mt, one, {}, one};
    const Mat2 s2{one, {}, t, mt};
    const Mat2 s1i{mti, ti, {}, one};
    const Mat2 s2i{one, {}, one, mti};
    x_ = s1 * s2 * s1;
    xi_ = s1i * s2i * s1i;
    y_ = s1 * s2;
    yi_ = s2i * s1i;
  }

  // Image of a word over generators x_gen (-> x) and y_gen (-> y).
  Mat2 image(const ordlim::Word& w, int x_gen, int y_gen) const {
    Mat2 m = Mat2::identity();
    for (auto [g, s] : ordlim::unit_letters(w)) {
      if (g == x_gen) {
        m = m * (s > 0 ? x_ : xi_);
      } else if (g == y_gen) {
        m = m * (s > 0 ? y_ : yi_);
      } else {
        throw std::invalid_argument("braid oracle: letter outside the two generators");
      }
    }
    return m;
  }

 private:
  Mat2 x_, xi_, y_, yi_;
};

}  // namespace testsupport
