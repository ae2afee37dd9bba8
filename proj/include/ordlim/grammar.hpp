#pragma once

// Text form of words:
//   word := term (" " term)*
//   term := "g(" int ")" ["^" nonzero-int] | "a(" int "," nat ")" ["^" nonzero-int]
// The empty string is the identity. a-terms expand through cone_generator.

#include <optional>
#include <string>
#include <string_view>

#include "ordlim/chainspec.hpp"
#include "ordlim/words.hpp"

namespace ordlim {

/// Throws InputError on malformed text, or on an a-term without a spec.
Word parse_word(std::string_view text, const ChainSpec* spec = nullptr);
std::string format_word(const Word& w);

}  // namespace ordlim
