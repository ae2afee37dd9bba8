#pragma once

// Positive cones given by finitely many generators, enumerated breadth-first
// by factor count. Membership is decided by searching the enumeration for the
// element or its inverse, either directly or as a product of two entries.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ordlim/chaingroup.hpp"
#include "ordlim/chainspec.hpp"
#include "ordlim/kernels.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/words.hpp"

namespace ordlim::cone {

enum class Sign { Positive, Negative, Zero, Unknown };

const char* to_string(Sign s);
Sign negate(Sign s);

enum class Exec { Serial, Parallel };

/// Sign over a generic table; factors index the table's generators.
struct GenericSign {
  Sign value = Sign::Unknown;
  std::vector<int> factors;  // certifies the element (Positive) or its inverse (Negative)
  std::size_t budget_used = 0;
};

class ConeTable {
 public:
  using Normalizer = kernels::Normalizer;

  struct Entry {
    Word nf;
    std::int32_t parent = -1;  // entry index, -1 for the first level
    std::int32_t gen = -1;
    std::int32_t depth = 0;    // factor count
  };

  ConeTable(Normalizer nf, std::vector<Word> generators, Exec exec = Exec::Parallel);

  /// Grows the enumeration to at least count entries (whole levels at a time).
  void ensure(std::size_t count);
  std::size_t size() const;

  /// Generator indices whose product is entry i.
  std::vector<int> factors(std::size_t i) const;
  /// The first count entries (after ensure(count)).
  std::vector<Entry> prefix(std::size_t count);

  /// Decides the sign of w looking only at entries [0, budget).
  GenericSign sign(const Word& w, std::size_t budget);

  Word normalize(const Word& w) const { return nf_(w); }
  const std::vector<Word>& generators() const { return gens_; }

 private:
  std::vector<int> factors_locked(std::size_t i) const;
  std::optional<std::size_t> find_locked(const Word& nf) const;

  Normalizer nf_;
  std::vector<Word> gens_;
  Exec exec_;
  mutable std::shared_mutex mu_;
  std::vector<Entry> entries_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::size_t level_begin_ = 0;
};

// ---------------------------------------------------------------------------
// Chain cones P_(m)

struct ConeCertificate {
  std::vector<ConeGenId> factors;
};

enum class Method { None, Enumeration, Reversing };

const char* to_string(Method m);

/// Combined: a short enumeration pass, then reversing, then enumeration up to
/// the budget. EnumerationOnly is the plain breadth-first search.
enum class Strategy { Combined, EnumerationOnly };

struct SignResult {
  Sign value = Sign::Unknown;
  std::optional<ConeCertificate> certificate;
  std::size_t budget_used = 0;  // enumeration entries examined
  int window = 0;
  Method method = Method::None;
  std::size_t reversal_steps = 0;
};

struct CompareResult {
  std::optional<Ordering> order;  // nullopt when undecided
  SignResult evidence;            // sign of a^-1 b
};

/// Whether sign queries are supported for the spec (cone families and the tower).
bool has_cone(const ChainSpec& spec);

/// Shared memo table for P_(m). Generators a_{-m,m}, ..., a_{m,m}; for the
/// cyclic tower only a_{m,m} = g_m.
std::shared_ptr<ConeTable> chain_table(const ChainSpec& spec, int m);
std::vector<ConeGenId> chain_table_ids(const ChainSpec& spec, int m);

struct ConeEntry {
  Word nf;
  ConeCertificate certificate;
};

std::vector<ConeEntry> enumerate_cone(const ChainSpec& spec, int m, std::size_t budget);

SignResult sign(const ChainSpec& spec, const Element& e, std::size_t budget,
                Strategy strategy = Strategy::Combined);
/// Sign of w in G_(m); m must be at least the window of w.
SignResult sign_at(const ChainSpec& spec, const Word& w, int m, std::size_t budget,
                   Strategy strategy = Strategy::Combined);
CompareResult compare(const ChainSpec& spec, const Element& a, const Element& b, std::size_t budget);
/// Sign of c^-1 e c.
SignResult conjugate_sign(const ChainSpec& spec, const Element& c, const Element& e, std::size_t budget);

std::vector<SignResult> sign_batch(const ChainSpec& spec, std::span<const Word> words, int m,
                                   std::size_t budget, Exec exec = Exec::Parallel,
                                   Strategy strategy = Strategy::Combined);

/// Certificate for a_{j,m}^-1 a_{i,m} (i < j), read off the defining relations.
/// nullopt when the spec has no reversing data at window m.
std::optional<ConeCertificate> generator_quotient(const ChainSpec& spec, int i, int j, int m);

/// Product of the certificate's generator words.
Word certificate_word(const ChainSpec& spec, const ConeCertificate& cert);
/// Re-checks a decided sign: the certificate multiplies out to w (Positive) or
/// w^-1 (Negative), and Zero means w is trivial.
bool validate(const ChainSpec& spec, const Word& w, const SignResult& r);

std::string format_id(const ConeGenId& id);

}  // namespace ordlim::cone
