#include "ordlim/chaingroup.hpp"

#include "ordlim/errors.hpp"

namespace ordlim {

Element Element::of(Word w) {
  Element e;
  e.window = w.window();
  e.word = std::move(w);
  return e;
}

Element embed(const Element& e, int m) {
  if (m < e.word.window()) {
    throw InputError("cannot embed an element of window " + std::to_string(e.word.window()) +
                     " into G_(" + std::to_string(m) + ")");
  }
  return {e.word, m};
}

Element shift(const ChainSpec& spec, const Element& e, int d) {
  if (!spec.shift_invariant(d)) {
    throw Unsupported("spec " + spec.key() + " is not invariant under shift by " + std::to_string(d));
  }
  return Element::of(shift_levels(e.word, d));
}

HnnElement hnn_mul(const ChainSpec& spec, const HnnElement& x, const HnnElement& y) {
  const std::int64_t p = x.t_exp;
  std::int64_t sum;
  if (__builtin_add_overflow(p, y.t_exp, &sum)) throw ResourceExhausted("t exponent overflow");
  if (p < -1'000'000 || p > 1'000'000) throw ResourceExhausted("t exponent too large to shift by");
  const Element moved = shift(spec, y.part, static_cast<int>(-p));
  return {Element::of(mul(x.part.word, moved.word)), sum};
}

HnnElement hnn_inverse(const ChainSpec& spec, const HnnElement& x) {
  // (a, t^p)^-1 = (shift(a^-1, p), t^-p)
  if (x.t_exp < -1'000'000 || x.t_exp > 1'000'000) throw ResourceExhausted("t exponent too large");
  const Element inv = shift(spec, Element::of(invert(x.part.word)), static_cast<int>(x.t_exp));
  return {inv, -x.t_exp};
}

}  // namespace ordlim
