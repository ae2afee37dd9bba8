#include "ordlim/probes.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ordlim/errors.hpp"
#include "ordlim/grammar.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/rewriting.hpp"

namespace ordlim::probes {

using cone::Sign;
using cone::SignResult;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict ProbeReport::overall() const {
  Verdict v = Verdict::Pass;
  for (const Check& c : checks) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    if (c.verdict == Verdict::Inconclusive) v = Verdict::Inconclusive;
  }
  return v;
}

void ProbeReport::finalize() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.name < b.name; });
}

Signed to_signed(const SignResult& r) {
  Signed s;
  s.value = r.value;
  s.budget_used = r.budget_used;
  if (r.certificate) {
    for (const ConeGenId& id : r.certificate->factors) s.certificate.push_back(cone::format_id(id));
  }
  return s;
}

Signer chain_signer(const ChainSpec& spec, std::size_t budget) {
  return [spec, budget](const Word& w) { return to_signed(cone::sign_at(spec, w, w.window(), budget)); };
}

namespace {

// ---------------------------------------------------------------------------
// helpers shared by the chain probes

class ChainChecks {
 public:
  ChainChecks(const ChainSpec& spec, std::size_t budget, ProbeReport& report)
      : spec_(spec), budget_(budget), report_(report), tn_(rewriting::TreeNormalizer::for_chain(spec)) {}

  /// a < b at the given window, certified by the sign of a^-1 b.
  void less(const std::string& name, const Word& a, const Word& b, int window) {
    const Word q = mul(invert(a), b);
    const SignResult r = cone::sign_at(spec_, q, window, budget_);
    Check c;
    c.name = name;
    c.evidence.push_back({"a^-1 b", q, to_signed(r)});
    if (r.value == Sign::Positive && cone::validate(spec_, q, r)) {
      c.verdict = Verdict::Pass;
    } else if (r.value == Sign::Unknown) {
      c.verdict = Verdict::Inconclusive;
      c.note = "sign budget exhausted";
    } else {
      c.verdict = Verdict::Fail;
      c.note = r.value == Sign::Positive ? "certificate did not re-validate" : "a^-1 b is not positive";
    }
    report_.checks.push_back(std::move(c));
  }

  void identity(const std::string& name, const Word& a, const Word& b) {
    Check c;
    c.name = name;
    c.evidence.push_back({"lhs", a, std::nullopt});
    c.evidence.push_back({"rhs", b, std::nullopt});
    c.verdict = tn_.equal(a, b) ? Verdict::Pass : Verdict::Fail;
    if (c.verdict == Verdict::Fail) c.note = "sides differ in the group";
    report_.checks.push_back(std::move(c));
  }

  Word a(int i, int m) const { return cone_generator(spec_, {i, m}); }
  Word g(int n, std::int64_t e = 1) const { return Word::gen(n, e); }
  const rewriting::TreeNormalizer& tn() const { return tn_; }

 private:
  const ChainSpec& spec_;
  std::size_t budget_;
  ProbeReport& report_;
  rewriting::TreeNormalizer tn_;
};

std::string gname(int n) { return "g(" + std::to_string(n) + ")"; }
std::string aname(int i, int m) { return cone::format_id({i, m}); }

void require_cone(const ChainSpec& spec) {
  if (!spec.has_dehornoy_cone()) throw Unsupported("spec " + spec.key() + " carries no cone of the a(i,m) form");
}

}  // namespace

ProbeReport verify_dehornoy_props(const ChainSpec& spec, int m, std::size_t budget) {
  require_cone(spec);
  if (m < 0) throw InputError("m must be >= 0");
  ProbeReport rep;
  rep.probe = "props";
  rep.budgets["sign"] = static_cast<std::int64_t>(budget);
  ChainChecks ck(spec, budget, rep);

  for (int i = -m; i <= m; ++i) {
    ck.less("generators: 1 < " + gname(i), {}, ck.g(i), m);
    if (i < m) ck.less("generators: " + gname(i) + " < " + gname(i + 1), ck.g(i), ck.g(i + 1), m);
  }
  for (int i = -m; i < m; ++i) {
    const std::int64_t l = spec.at(i + 1).l;
    ck.identity("step: " + aname(i, m) + " = " + aname(i + 1, m) + " " + gname(i + 1) + "^" + std::to_string(l - 1),
                ck.a(i, m), mul(ck.a(i + 1, m), ck.g(i + 1, l - 1)));
  }
  const std::int64_t k0 = spec.at(-m).k;
  for (int i = -m; i <= m; ++i) {
    ck.identity("widen: " + aname(i, m) + " = " + gname(-m - 1) + "^" + std::to_string(k0 - 1) + " " +
                    aname(i, m + 1),
                ck.a(i, m), mul(ck.g(-m - 1, k0 - 1), ck.a(i, m + 1)));
  }
  for (int i = -m; i < m; ++i) {
    const std::int64_t l = spec.at(i + 1).l;
    ck.less("quotient: " + aname(i + 1, m) + " < " + aname(i, m), ck.a(i + 1, m), ck.a(i, m), m);
    ck.identity("quotient: " + aname(i + 1, m) + "^-1 " + aname(i, m) + " = " + gname(i + 1) + "^" +
                    std::to_string(l - 1),
                mul(invert(ck.a(i + 1, m)), ck.a(i, m)), ck.g(i + 1, l - 1));
  }
  for (int i = -m; i <= m; ++i) {
    ck.less("window: " + aname(i, m + 1) + " < " + aname(i, m), ck.a(i, m + 1), ck.a(i, m), m + 1);
  }
  ck.less("cone order: 1 < " + aname(m, m), {}, ck.a(m, m), m);
  for (int i = m; i > -m; --i) {
    ck.less("cone order: " + aname(i, m) + " < " + aname(i - 1, m), ck.a(i, m), ck.a(i - 1, m), m);
  }
  ck.identity("cone order: " + aname(-m, m) + " = " + gname(-m), ck.a(-m, m), ck.g(-m));
  for (int j = -m; j < m; ++j) {
    ck.less("cone order: " + gname(j) + " < " + gname(j + 1), ck.g(j), ck.g(j + 1), m);
  }
  rep.finalize();
  return rep;
}

ProbeReport minimal_positive_probe(const ChainSpec& spec, int m, int radius, std::size_t budget) {
  require_cone(spec);
  if (m < 0) throw InputError("m must be >= 0");
  if (radius < 1) throw InputError("radius must be >= 1");
  ProbeReport rep;
  rep.probe = "minimal";
  rep.budgets["sign"] = static_cast<std::int64_t>(budget);
  rep.budgets["radius"] = radius;
  const auto tn = rewriting::TreeNormalizer::for_chain(spec);
  const Word amin = cone_generator(spec, {m, m});
  const Word amin_inv = invert(amin);

  {
    Check c;
    c.name = "minimal element is positive";
    const SignResult r = cone::sign_at(spec, amin, m, budget);
    c.evidence.push_back({"a(m,m)", amin, to_signed(r)});
    c.verdict = r.value == Sign::Positive ? Verdict::Pass : Verdict::Fail;
    rep.checks.push_back(std::move(c));
  }

  // distinct nontrivial elements of the ball
  std::vector<Word> elems;
  {
    std::unordered_set<Word, WordHash> seen;
    for (const Word& w : ball(-m, m, radius)) {
      Word nf = tn.normalize(w);
      if (nf.empty() || !seen.insert(nf).second) continue;
      elems.push_back(w);
    }
  }
  const std::vector<SignResult> signs = cone::sign_batch(spec, elems, m, budget);

  // For positive e = a_i F', a_m^-1 e = V_im F' (or F' when i = m), so every
  // positive e other than a_m lies above a_m. The derived certificate is
  // re-checked; when it does not apply the comparison is searched directly.
  std::vector<std::optional<cone::ConeCertificate>> quot(static_cast<std::size_t>(2 * m + 1));
  for (int i = -m; i < m; ++i) quot[static_cast<std::size_t>(i + m)] = cone::generator_quotient(spec, i, m, m);

  Check ball_check;
  ball_check.name = "no positive element below the minimal one";
  std::size_t positive = 0, unknown = 0, searched = 0;
  for (std::size_t n = 0; n < elems.size(); ++n) {
    const SignResult& s = signs[n];
    if (s.value == Sign::Unknown) {
      ++unknown;
      if (ball_check.evidence.size() < 8) ball_check.evidence.push_back({"undecided", elems[n], to_signed(s)});
      continue;
    }
    if (s.value != Sign::Positive) continue;
    ++positive;
    const Word q = mul(amin_inv, elems[n]);
    if (tn.is_identity(q)) continue;
    SignResult derived;
    derived.window = m;
    derived.value = Sign::Positive;
    const auto& f = s.certificate->factors;
    const ConeGenId head = f.front();
    if (head.i == m) {
      derived.certificate = cone::ConeCertificate{{f.begin() + 1, f.end()}};
    } else if (quot[static_cast<std::size_t>(head.i + m)]) {
      auto cert = *quot[static_cast<std::size_t>(head.i + m)];
      cert.factors.insert(cert.factors.end(), f.begin() + 1, f.end());
      derived.certificate = std::move(cert);
    }
    bool ok = derived.certificate && !derived.certificate->factors.empty() && cone::validate(spec, q, derived);
    if (!ok) {
      ++searched;
      derived = cone::sign_at(spec, q, m, budget);
      ok = derived.value == Sign::Positive;
      if (derived.value == Sign::Unknown) {
        ++unknown;
        continue;
      }
    }
    if (!ok) {
      ball_check.verdict = Verdict::Fail;
      ball_check.evidence.push_back({"counterexample", elems[n], to_signed(s)});
      ball_check.evidence.push_back({"a(m,m)^-1 e", q, to_signed(derived)});
    } else if (ball_check.evidence.size() < 8) {
      ball_check.evidence.push_back({"above a(m,m)", elems[n], std::nullopt});
      ball_check.evidence.push_back({"a(m,m)^-1 e", q, to_signed(derived)});
    }
  }
  if (ball_check.verdict != Verdict::Fail) ball_check.verdict = unknown ? Verdict::Inconclusive : Verdict::Pass;
  ball_check.note = std::to_string(elems.size()) + " distinct elements, " + std::to_string(positive) +
                    " positive, " + std::to_string(unknown) + " undecided, " + std::to_string(searched) +
                    " compared by search";
  rep.checks.push_back(std::move(ball_check));
  rep.finalize();
  return rep;
}

ProbeReport density_probe(const ChainSpec& spec, int m_max, std::size_t budget) {
  require_cone(spec);
  if (m_max < 0) throw InputError("m_max must be >= 0");
  ProbeReport rep;
  rep.probe = "density";
  rep.budgets["sign"] = static_cast<std::int64_t>(budget);
  ChainChecks ck(spec, budget, rep);
  for (int m = 0; m < m_max; ++m) {
    ck.less(aname(m + 1, m + 1) + " < " + aname(m, m), ck.a(m + 1, m + 1), ck.a(m, m), m + 1);
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

void require_positive(const Signer& signer, const Word& w, const char* what) {
  const Signed s = signer(w);
  if (s.value != Sign::Positive) {
    throw InputError(std::string(what) + " " + format_word(w) + " is not positive (" + cone::to_string(s.value) +
                     ")");
  }
}

}  // namespace

ProbeReport conradian_probe(const Signer& signer, const std::vector<std::pair<Word, Word>>& pairs, int n_max) {
  ProbeReport rep;
  rep.probe = "conradian";
  rep.budgets["n_max"] = n_max;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [g1, g2] = pairs[p];
    require_positive(signer, g1, "g1");
    require_positive(signer, g2, "g2");
    Check c;
    char buf[16];
    std::snprintf(buf, sizeof buf, "pair %04zu", p);
    c.name = buf;
    c.evidence.push_back({"g1", g1, std::nullopt});
    c.evidence.push_back({"g2", g2, std::nullopt});
    bool undecided = false;
    for (int n = 1; n <= n_max; ++n) {
      const Word q = mul({invert(g1), g2, power(g1, n)});
      const Signed s = signer(q);
      if (s.value == Sign::Positive) {
        c.verdict = Verdict::Pass;
        c.note = "n = " + std::to_string(n);
        c.evidence.push_back({"g1^-1 g2 g1^n", q, s});
        break;
      }
      if (s.value == Sign::Unknown) undecided = true;
    }
    if (c.verdict != Verdict::Pass) {
      c.verdict = Verdict::Inconclusive;
      c.note = undecided ? "no n <= " + std::to_string(n_max) + " found; some signs undecided"
                         : "g2 g1^n < g1 for every n <= " + std::to_string(n_max) + " (non-Conradian evidence)";
    }
    rep.checks.push_back(std::move(c));
  }
  rep.finalize();
  return rep;
}

ProbeReport cofinal_probe(const Signer& signer, const Word& z, const std::vector<Word>& samples, int M_max) {
  require_positive(signer, z, "z");
  ProbeReport rep;
  rep.probe = "cofinal";
  rep.budgets["M_max"] = M_max;
  for (std::size_t p = 0; p < samples.size(); ++p) {
    const Word& g = samples[p];
    Check c;
    char buf[16];
    std::snprintf(buf, sizeof buf, "sample %04zu", p);
    c.name = buf;
    c.evidence.push_back({"g", g, std::nullopt});
    for (int M = 1; M <= M_max; ++M) {
      const Word zm = power(z, M);
      const Signed above = signer(mul(invert(g), zm));  // g < z^M
      if (above.value != Sign::Positive) continue;
      const Signed below = signer(mul(zm, g));  // z^-M < g
      if (below.value != Sign::Positive) continue;
      c.verdict = Verdict::Pass;
      c.note = "M = " + std::to_string(M);
      c.evidence.push_back({"g^-1 z^M", mul(invert(g), zm), above});
      c.evidence.push_back({"z^M g", mul(zm, g), below});
      break;
    }
    if (c.verdict != Verdict::Pass) c.note = "no M <= " + std::to_string(M_max);
    rep.checks.push_back(std::move(c));
  }
  rep.finalize();
  return rep;
}

ProbeReport right_invariance_probe(const Signer& signer, const Word& z,
                                   const std::vector<std::pair<Word, Word>>& samples) {
  ProbeReport rep;
  rep.probe = "right-invariance";
  for (std::size_t p = 0; p < samples.size(); ++p) {
    Word a = samples[p].first, b = samples[p].second;
    Check c;
    char buf[16];
    std::snprintf(buf, sizeof buf, "sample %04zu", p);
    c.name = buf;
    const Signed ab = signer(mul(invert(a), b));
    c.evidence.push_back({"a^-1 b", mul(invert(a), b), ab});
    if (ab.value == Sign::Unknown) {
      c.note = "order of a, b undecided";
    } else if (ab.value == Sign::Zero) {
      c.verdict = Verdict::Pass;
      c.note = "a = b";
    } else {
      if (ab.value == Sign::Negative) std::swap(a, b);
      const Word q = mul({invert(z), invert(a), b, z});
      const Signed s = signer(q);
      c.evidence.push_back({"(a z)^-1 b z", q, s});
      if (s.value == Sign::Positive) {
        c.verdict = Verdict::Pass;
      } else if (s.value == Sign::Unknown) {
        c.note = "order of a z, b z undecided";
      } else {
        c.verdict = Verdict::Fail;
        c.note = "a < b but a z >= b z";
      }
    }
    rep.checks.push_back(std::move(c));
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceExhausted("rational arithmetic overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceExhausted("rational arithmetic overflow");
  return r;
}

}  // namespace

Rational Rational::make(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InputError("zero denominator");
  if (d < 0) {
    n = checked_mul(n, -1);
    d = checked_mul(d, -1);
  }
  const std::int64_t g = std::gcd(n, d);
  return {n / g, d / g};
}

Rational Rational::operator+(const Rational& o) const {
  const std::int64_t g = std::gcd(den, o.den);
  const std::int64_t d = checked_mul(den / g, o.den);
  const std::int64_t n = checked_add(checked_mul(num, o.den / g), checked_mul(o.num, den / g));
  return make(n, d);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational zl_evaluate(const ChainSpec& spec, const Word& w) {
  if (!spec.is_tower()) throw InputError("zl_evaluate needs a cyclic tower spec");
  const std::int64_t l = spec.tower_base();
  Rational sum;
  for (const Letter& x : w.letters()) {
    std::int64_t p = 1;
    for (int i = 0; i < std::abs(x.gen); ++i) p = checked_mul(p, l);
    sum = sum + (x.gen >= 0 ? Rational::make(x.exp, p) : Rational::make(checked_mul(x.exp, p), 1));
  }
  return sum;
}

cone::Sign tower_sign(const ChainSpec& spec, const Word& w, TowerOrder order) {
  const int s = zl_evaluate(spec, w).sign() * (order == TowerOrder::StandardUp ? 1 : -1);
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

HnnSign hnn_sign(const ChainSpec& spec, const HnnElement& x, HnnVariant variant, std::size_t budget) {
  if (!cone::has_cone(spec) || !spec.shift_invariant(1)) {
    throw Unsupported("HNN orderings need a shift-invariant spec with a cone");
  }
  HnnSign out;
  if (x.t_exp != 0) {
    out.basis = "t-exponent";
    const bool pos = (x.t_exp > 0) == (variant == HnnVariant::TPositive);
    out.value = pos ? Sign::Positive : Sign::Negative;
    return out;
  }
  out.basis = "cone";
  out.base = cone::sign(spec, x.part, budget);
  out.value = out.base->value;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Word> distinct_nontrivial(const ChainSpec& spec, int window, int radius) {
  const auto tn = rewriting::TreeNormalizer::for_chain(spec);
  std::vector<Word> out;
  std::unordered_set<Word, WordHash> seen;
  for (const Word& w : ball(-window, window, radius)) {
    Word nf = tn.normalize(w);
    if (nf.empty() || !seen.insert(std::move(nf)).second) continue;
    out.push_back(w);
  }
  return out;
}

bool decided(const SignResult& r) { return r.value != Sign::Unknown; }

}  // namespace

WitnessResult nonisolation_witness(const ChainSpec& spec, const std::vector<Word>& agreement,
                                   const WitnessOptions& opt) {
  if (opt.conj_window < 0 || opt.disc_window < 0 || opt.conj_radius < 1 || opt.disc_radius < 1) {
    throw InputError("witness windows must be >= 0 and radii >= 1");
  }
  WitnessResult res;
  res.agreement = agreement;
  for (const Word& f : agreement) {
    const SignResult s = cone::sign(spec, Element::of(f), opt.budget);
    if (s.value != Sign::Positive) {
      throw InputError("agreement element " + format_word(f) + " is not positive (" + cone::to_string(s.value) + ")");
    }
  }
  const std::vector<Word> conjugators = distinct_nontrivial(spec, opt.conj_window, opt.conj_radius);
  const std::vector<Word> discriminators = distinct_nontrivial(spec, opt.disc_window, opt.disc_radius);

  for (const Word& w : conjugators) {
    ++res.conjugators_tried;
    const Element cw = Element::of(w);
    std::vector<std::pair<SignResult, SignResult>> agree;
    bool ok = true;
    for (const Word& f : agreement) {
      SignResult c = cone::conjugate_sign(spec, cw, Element::of(f), opt.budget);
      if (c.value != Sign::Positive) {
        ok = false;
        break;
      }
      agree.emplace_back(cone::sign(spec, Element::of(f), opt.budget), std::move(c));
    }
    if (!ok) continue;
    for (const Word& d : discriminators) {
      ++res.discriminators_tried;
      const SignResult s = cone::sign(spec, Element::of(d), opt.budget);
      if (!decided(s)) continue;
      const SignResult c = cone::conjugate_sign(spec, cw, Element::of(d), opt.budget);
      if (!decided(c) || c.value == s.value) continue;
      res.found = true;
      res.conjugator = w;
      res.discriminator = d;
      res.agreement_signs = std::move(agree);
      res.disc_sign = s;
      res.disc_conjugate_sign = c;
      return res;
    }
  }
  return res;
}

bool verify_witness(const ChainSpec& spec, const WitnessResult& w, std::size_t budget) {
  if (!w.found || w.agreement.size() != w.agreement_signs.size()) return false;
  auto conj = [&](const Word& e) { return mul({invert(w.conjugator), e, w.conjugator}); };
  auto recheck = [&](const Word& e, const SignResult& r) {
    if (r.value == Sign::Unknown || !cone::validate(spec, e, r)) return false;
    // an independent search at the same window must not contradict the certificate
    const SignResult again = cone::sign_at(spec, e, r.window, budget, cone::Strategy::Combined);
    return again.value == Sign::Unknown || again.value == r.value;
  };
  for (std::size_t i = 0; i < w.agreement.size(); ++i) {
    const auto& [base, conjugated] = w.agreement_signs[i];
    if (base.value != Sign::Positive || conjugated.value != Sign::Positive) return false;
    if (!recheck(w.agreement[i], base) || !recheck(conj(w.agreement[i]), conjugated)) return false;
  }
  if (w.disc_sign.value == w.disc_conjugate_sign.value) return false;
  return recheck(w.discriminator, w.disc_sign) && recheck(conj(w.discriminator), w.disc_conjugate_sign);
}

}  // namespace ordlim::probes
