#pragma once

#include <cstdint>

#include "ordlim/chainspec.hpp"
#include "ordlim/words.hpp"

namespace ordlim {

/// An element of the limit group, carried with the smallest window G_(m)
/// containing all of its letters.
struct Element {
  Word word;
  int window = 0;

  static Element of(Word w);
  friend bool operator==(const Element&, const Element&) = default;
};

/// (part, t^t_exp) in G~ x| <t>, with t^-1 g_n t = g_{n+1}.
struct HnnElement {
  Element part;
  std::int64_t t_exp = 0;
  friend bool operator==(const HnnElement&, const HnnElement&) = default;
};

/// Same element viewed in G_(m). Throws InputError if m < e.window.
Element embed(const Element& e, int m);

/// Level translation by d. Throws Unsupported unless the spec is d-invariant.
Element shift(const ChainSpec& spec, const Element& e, int d);

/// (a, t^p)(b, t^q) = (a * shift(b, -p), t^{p+q}).
HnnElement hnn_mul(const ChainSpec& spec, const HnnElement& x, const HnnElement& y);
HnnElement hnn_inverse(const ChainSpec& spec, const HnnElement& x);

}  // namespace ordlim
