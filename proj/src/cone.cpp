#include "ordlim/cone.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ordlim/errors.hpp"
#include "ordlim/reversing.hpp"
#include "ordlim/rewriting.hpp"

namespace ordlim::cone {

namespace {
constexpr std::size_t kReversalSteps = 20'000'000;
}  // namespace

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::None: return "none";
    case Method::Enumeration: return "enumeration";
    case Method::Reversing: return "reversing";
  }
  return "?";
}

Sign negate(Sign s) {
  if (s == Sign::Positive) return Sign::Negative;
  if (s == Sign::Negative) return Sign::Positive;
  return s;
}

ConeTable::ConeTable(Normalizer nf, std::vector<Word> generators, Exec exec)
    : nf_(std::move(nf)), gens_(std::move(generators)), exec_(exec) {
  if (gens_.empty()) throw InputError("a cone needs at least one generator");
}

std::size_t ConeTable::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

void ConeTable::ensure(std::size_t count) {
  {
    std::shared_lock lock(mu_);
    if (entries_.size() >= count) return;
  }
  std::unique_lock lock(mu_);
  while (entries_.size() < count) {
    std::vector<kernels::Candidate> cand;
    const std::int32_t depth = entries_.empty() ? 1 : entries_.back().depth + 1;
    if (entries_.empty()) {
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        cand.push_back({nf_(gens_[j]), -1, static_cast<std::int32_t>(j)});
      }
    } else {
      std::vector<Word> frontier;
      frontier.reserve(entries_.size() - level_begin_);
      for (std::size_t i = level_begin_; i < entries_.size(); ++i) frontier.push_back(entries_[i].nf);
      if (frontier.empty()) break;
      cand = exec_ == Exec::Parallel ? kernels::expand_parallel(frontier, gens_, nf_)
                                     : kernels::expand_serial(frontier, gens_, nf_);
      for (auto& c : cand) c.parent += static_cast<std::int32_t>(level_begin_);
    }
    std::stable_sort(cand.begin(), cand.end(), [](const kernels::Candidate& a, const kernels::Candidate& b) {
      return shortlex_compare(a.nf, b.nf) == Ordering::Less;
    });
    const std::size_t begin = entries_.size();
    for (auto& c : cand) {
      if (c.nf.empty() || index_.count(c.nf)) continue;
      index_.emplace(c.nf, entries_.size());
      entries_.push_back({std::move(c.nf), c.parent, c.gen, depth});
    }
    level_begin_ = begin;
    if (entries_.size() == begin) break;  // nothing new: the enumeration is finite
  }
}

std::vector<int> ConeTable::factors_locked(std::size_t i) const {
  std::vector<int> out;
  for (std::int64_t at = static_cast<std::int64_t>(i); at >= 0; at = entries_[static_cast<std::size_t>(at)].parent) {
    out.push_back(entries_[static_cast<std::size_t>(at)].gen);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> ConeTable::factors(std::size_t i) const {
  std::shared_lock lock(mu_);
  return factors_locked(i);
}

std::optional<std::size_t> ConeTable::find_locked(const Word& nf) const {
  auto it = index_.find(nf);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<ConeTable::Entry> ConeTable::prefix(std::size_t count) {
  ensure(count);
  std::shared_lock lock(mu_);
  const std::size_t n = std::min(count, entries_.size());
  return {entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)};
}

GenericSign ConeTable::sign(const Word& w, std::size_t budget) {
  GenericSign out;
  const Word e = nf_(w);
  if (e.empty()) {
    out.value = Sign::Zero;
    return out;
  }
  const Word ei = nf_(invert(e));

  auto concat = [this](std::size_t a, std::size_t b) {
    std::vector<int> f = factors_locked(a);
    const std::vector<int> g = factors_locked(b);
    f.insert(f.end(), g.begin(), g.end());
    return f;
  };
  // Looks for target as p * q or q * p with p = entry i and q an entry <= i.
  auto split = [&](const Word& target, const Word& p, const Word& pinv,
                   std::size_t i) -> std::optional<std::vector<int>> {
    if (p == target) return factors_locked(i);
    if (auto j = find_locked(nf_(mul(pinv, target))); j && *j <= i) return concat(i, *j);
    if (auto j = find_locked(nf_(mul(target, pinv))); j && *j <= i) return concat(*j, i);
    return std::nullopt;
  };

  // Entry i is only ever paired with entries <= i, so growing the table in
  // stages gives the same answer as growing it to the budget up front.
  std::size_t i = 0;
  std::size_t target = std::min<std::size_t>(budget, 256);
  while (true) {
    ensure(target);
    std::shared_lock lock(mu_);
    const std::size_t limit = std::min(target, entries_.size());
    for (; i < limit; ++i) {
      const Word& p = entries_[i].nf;
      const Word pinv = invert(p);
      out.budget_used = i + 1;
      if (auto f = split(e, p, pinv, i)) {
        out.value = Sign::Positive;
        out.factors = std::move(*f);
        return out;
      }
      if (auto f = split(ei, p, pinv, i)) {
        out.value = Sign::Negative;
        out.factors = std::move(*f);
        return out;
      }
    }
    if (limit >= budget || limit < target) break;
    target = std::min(budget, target * 4);
  }
  out.budget_used = i;
  return out;
}

// ---------------------------------------------------------------------------

bool has_cone(const ChainSpec& spec) { return spec.has_dehornoy_cone() || spec.is_tower(); }

std::vector<ConeGenId> chain_table_ids(const ChainSpec& spec, int m) {
  if (spec.is_tower()) return {{m, m}};
  return cone_generator_ids(m);
}

namespace {

struct ChainCone {
  std::shared_ptr<ConeTable> table;
  std::optional<ChainReverser> reverser;
  std::shared_ptr<rewriting::TreeNormalizer> tn;
};

const ChainCone& chain_cone(const ChainSpec& spec, int m) {
  if (!has_cone(spec)) throw Unsupported("spec " + spec.key() + " carries no positive cone");
  if (m < 0) throw InputError("window m must be >= 0");
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<ChainCone>> cones;
  const std::string key = spec.key() + "@" + std::to_string(m);
  std::lock_guard lock(mu);
  auto& slot = cones[key];
  if (!slot) {
    auto c = std::make_unique<ChainCone>();
    std::vector<Word> gens;
    for (const ConeGenId& id : chain_table_ids(spec, m)) gens.push_back(cone_generator(spec, id));
    c->tn = std::make_shared<rewriting::TreeNormalizer>(rewriting::TreeNormalizer::for_chain(spec));
    c->table = std::make_shared<ConeTable>([tn = c->tn](const Word& w) { return tn->normalize(w); },
                                           std::move(gens));
    c->reverser = ChainReverser::build(spec, m);
    slot = std::move(c);
  }
  return *slot;
}

}  // namespace

std::shared_ptr<ConeTable> chain_table(const ChainSpec& spec, int m) { return chain_cone(spec, m).table; }

namespace {

ConeCertificate to_certificate(const ChainSpec& spec, int m, const std::vector<int>& factors) {
  const std::vector<ConeGenId> ids = chain_table_ids(spec, m);
  ConeCertificate cert;
  for (int f : factors) cert.factors.push_back(ids[static_cast<std::size_t>(f)]);
  return cert;
}

}  // namespace

std::vector<ConeEntry> enumerate_cone(const ChainSpec& spec, int m, std::size_t budget) {
  auto table = chain_table(spec, m);
  std::vector<ConeEntry> out;
  const auto entries = table->prefix(budget);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out.push_back({entries[i].nf, to_certificate(spec, m, table->factors(i))});
  }
  return out;
}

SignResult sign_at(const ChainSpec& spec, const Word& w, int m, std::size_t budget, Strategy strategy) {
  if (m < w.window()) {
    throw InputError("word has window " + std::to_string(w.window()) + " > m = " + std::to_string(m));
  }
  const ChainCone& cone = chain_cone(spec, m);
  SignResult r;
  r.window = m;
  auto from_table = [&](std::size_t b) {
    GenericSign g = cone.table->sign(w, b);
    r.value = g.value;
    r.budget_used = g.budget_used;
    r.method = g.value == Sign::Unknown ? Method::None : Method::Enumeration;
    if (g.value == Sign::Positive || g.value == Sign::Negative) {
      r.certificate = to_certificate(spec, m, g.factors);
    } else if (g.value == Sign::Zero) {
      r.method = Method::None;
    }
  };

  if (strategy == Strategy::EnumerationOnly || !cone.reverser) {
    from_table(budget);
    return r;
  }
  constexpr std::size_t kQuickPass = 16;
  from_table(std::min(budget, kQuickPass));
  if (r.value != Sign::Unknown) return r;

  const std::size_t quick_used = r.budget_used;
  try {
    if (auto out = cone.reverser->decide(w, kReversalSteps)) {
      SignResult rev;
      rev.window = m;
      rev.budget_used = quick_used;
      rev.reversal_steps = out->steps;
      if (out->sign == 0) {
        rev.value = Sign::Zero;
      } else {
        rev.value = out->sign > 0 ? Sign::Positive : Sign::Negative;
        rev.method = Method::Reversing;
        ConeCertificate cert;
        for (int f : out->factors) cert.factors.push_back({f - m, m});
        rev.certificate = std::move(cert);
      }
      // reversing only applies group identities, but the answer is re-checked
      if (validate(spec, w, rev)) return rev;
    }
  } catch (const ResourceExhausted&) {
  }
  from_table(budget);
  return r;
}

SignResult sign(const ChainSpec& spec, const Element& e, std::size_t budget, Strategy strategy) {
  return sign_at(spec, e.word, std::max(e.window, e.word.window()), budget, strategy);
}

CompareResult compare(const ChainSpec& spec, const Element& a, const Element& b, std::size_t budget) {
  const int m = std::max({a.window, b.window, a.word.window(), b.word.window()});
  CompareResult out;
  out.evidence = sign_at(spec, mul(invert(a.word), b.word), m, budget);
  switch (out.evidence.value) {
    case Sign::Positive: out.order = Ordering::Less; break;
    case Sign::Negative: out.order = Ordering::Greater; break;
    case Sign::Zero: out.order = Ordering::Equal; break;
    case Sign::Unknown: break;
  }
  return out;
}

SignResult conjugate_sign(const ChainSpec& spec, const Element& c, const Element& e, std::size_t budget) {
  const int m = std::max({c.window, e.window, c.word.window(), e.word.window()});
  return sign_at(spec, mul({invert(c.word), e.word, c.word}), m, budget);
}

std::vector<SignResult> sign_batch(const ChainSpec& spec, std::span<const Word> words, int m,
                                   std::size_t budget, Exec exec, Strategy strategy) {
  std::vector<SignResult> out(words.size());
  auto body = [&](std::size_t i) { out[i] = sign_at(spec, words[i], m, budget, strategy); };
  if (exec == Exec::Parallel) {
    kernels::for_each_parallel(words.size(), body);
  } else {
    kernels::for_each_serial(words.size(), body);
  }
  return out;
}

std::optional<ConeCertificate> generator_quotient(const ChainSpec& spec, int i, int j, int m) {
  if (i >= j || i < -m || j > m) throw InputError("generator_quotient needs -m <= i < j <= m");
  const ChainCone& cone = chain_cone(spec, m);
  if (!cone.reverser) return std::nullopt;
  ConeCertificate cert;
  for (int f : cone.reverser->quotient(i, j)) cert.factors.push_back({f - m, m});
  return cert;
}

Word certificate_word(const ChainSpec& spec, const ConeCertificate& cert) {
  Word w;
  for (const ConeGenId& id : cert.factors) w = mul(w, cone_generator(spec, id));
  return w;
}

bool validate(const ChainSpec& spec, const Word& w, const SignResult& r) {
  const auto& tn = *chain_cone(spec, r.window).tn;
  switch (r.value) {
    case Sign::Zero:
      return !r.certificate && tn.is_identity(w);
    case Sign::Unknown:
      return !r.certificate;
    case Sign::Positive:
    case Sign::Negative: {
      if (!r.certificate || r.certificate->factors.empty()) return false;
      for (const ConeGenId& id : r.certificate->factors) {
        if (id.m != r.window) return false;
        const auto ids = chain_table_ids(spec, r.window);
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) return false;
      }
      const Word target = r.value == Sign::Positive ? w : invert(w);
      return tn.equal(certificate_word(spec, *r.certificate), target);
    }
  }
  return false;
}

std::string format_id(const ConeGenId& id) {
  return "a(" + std::to_string(id.i) + "," + std::to_string(id.m) + ")";
}

}  // namespace ordlim::cone
