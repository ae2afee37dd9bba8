#include "ordlim/ito.hpp"

#include <algorithm>

#include "ordlim/errors.hpp"
#include "ordlim/grammar.hpp"

namespace ordlim::ito {

using cone::Sign;
using probes::Check;
using probes::ProbeReport;
using probes::Signed;
using probes::Verdict;

namespace {

Signed to_signed(const cone::GenericSign& g) {
  Signed s;
  s.value = g.value;
  s.budget_used = g.budget_used;
  for (int f : g.factors) s.certificate.push_back("c" + std::to_string(f + 1));
  return s;
}

// a < b, certified by the sign of a^-1 b
Check less_check(const probes::Signer& signer, std::string name, const Word& a, const Word& b, bool allow_equal = false) {
  Check c;
  c.name = std::move(name);
  const Word q = mul(invert(a), b);
  const Signed s = signer(q);
  c.evidence.push_back({"a^-1 b", q, s});
  if (s.value == Sign::Positive || (allow_equal && s.value == Sign::Zero)) {
    c.verdict = Verdict::Pass;
  } else if (s.value == Sign::Unknown) {
    c.note = "sign budget exhausted";
  } else {
    c.verdict = Verdict::Fail;
    c.note = "a^-1 b is " + std::string(cone::to_string(s.value));
  }
  return c;
}

}  // namespace

OrderedGroupHandle OrderedGroupHandle::make(std::string name, PresState pres, std::vector<Word> generators,
                                            Word central, const HandleOptions& options,
                                            bool allow_central_generator,
                                            std::vector<std::vector<int>> shortcuts) {
  if (generators.empty()) throw InputError("a handle needs at least one cone generator");
  OrderedGroupHandle h;
  h.s_ = std::make_shared<State>();
  State& s = *h.s_;
  s.name = std::move(name);
  s.pres = std::move(pres);
  s.gens = std::move(generators);
  s.z = std::move(central);
  s.budget = options.sign_budget;
  s.tn = std::make_shared<rewriting::TreeNormalizer>(rewriting::TreeNormalizer::for_presentation(s.pres));
  std::vector<Word> search = s.gens;
  for (std::size_t i = 0; i < s.gens.size(); ++i) s.expansion.push_back({static_cast<int>(i)});
  for (auto& sc : shortcuts) {
    Word w;
    for (int f : sc) {
      if (f < 0 || static_cast<std::size_t>(f) >= s.gens.size()) throw InputError("shortcut names an unknown generator");
      w = mul(w, s.gens[static_cast<std::size_t>(f)]);
    }
    if (sc.empty()) throw InputError("empty shortcut");
    search.push_back(std::move(w));
    s.expansion.push_back(std::move(sc));
  }
  s.table = std::make_shared<cone::ConeTable>([tn = s.tn](const Word& w) { return tn->normalize(w); }, std::move(search));

  const probes::Signer signer = h.signer();
  if (s.tn->is_identity(s.z)) throw InputError("central element of " + s.name + " is trivial");
  for (int id : s.pres.generators) {
    Check c;
    c.name = "central commutes with " + s.pres.name_of(id);
    const Word g = Word::gen(id);
    c.evidence.push_back({"[z, g]", mul({invert(s.z), invert(g), s.z, g}), std::nullopt});
    c.verdict = s.tn->equal(mul(s.z, g), mul(g, s.z)) ? Verdict::Pass : Verdict::Fail;
    s.checks.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < s.gens.size(); ++i) {
    const std::string ci = "c" + std::to_string(i + 1);
    s.checks.push_back(less_check(signer, "positive " + ci, Word{}, s.gens[i]));
    if (i + 1 < s.gens.size()) {
      s.checks.push_back(less_check(signer, "ordered " + ci + " < c" + std::to_string(i + 2), s.gens[i], s.gens[i + 1],
                                    allow_central_generator));
    }
    s.checks.push_back(less_check(signer, "cofinal " + ci + " < z", s.gens[i], s.z, allow_central_generator));
  }
  std::sort(s.checks.begin(), s.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  for (const Check& c : s.checks) {
    if (c.verdict == Verdict::Fail) throw InputError("handle " + s.name + " fails check: " + c.name);
  }
  for (const Check& c : s.checks) {
    if (c.verdict == Verdict::Inconclusive) {
      throw ResourceExhausted("handle " + s.name + " check undecided within budget: " + c.name);
    }
  }
  return h;
}

std::vector<std::vector<int>> OrderedGroupHandle::shortcuts() const {
  return {s_->expansion.begin() + static_cast<std::ptrdiff_t>(s_->gens.size()), s_->expansion.end()};
}

bool OrderedGroupHandle::cyclic_central() const { return s_->gens.size() == 1 && equal(s_->gens[0], s_->z); }

cone::GenericSign OrderedGroupHandle::sign(const Word& w, std::size_t budget) const {
  cone::GenericSign g = s_->table->sign(w, budget);
  std::vector<int> flat;
  for (int f : g.factors) {
    const auto& e = s_->expansion[static_cast<std::size_t>(f)];
    flat.insert(flat.end(), e.begin(), e.end());
  }
  g.factors = std::move(flat);
  return g;
}

probes::Signer OrderedGroupHandle::signer(std::size_t budget) const {
  const OrderedGroupHandle self = *this;
  return [self, budget](const Word& w) {
    Signed s = to_signed(self.sign(w, budget));
    s.basis = self.name();
    return s;
  };
}

OrderedGroupHandle make_z_handle(std::int64_t N, const HandleOptions& options) {
  if (N < 2) throw InputError("Z handle needs N >= 2");
  PresState p;
  p.generators = {0};
  p.names = {"g"};
  return OrderedGroupHandle::make("Z(" + std::to_string(N) + ")", p, {Word::gen(0)}, Word::gen(0, N), options);
}

OrderedGroupHandle make_cyclic_central_handle(const HandleOptions& options) {
  PresState p;
  p.generators = {0};
  p.names = {"g"};
  return OrderedGroupHandle::make("Z(1)", p, {Word::gen(0)}, Word::gen(0), options, true);
}

OrderedGroupHandle make_torus_handle(std::int64_t p, std::int64_t q, const HandleOptions& options) {
  if (p < 2 || q < 2) throw InputError("torus handle needs p, q >= 2");
  PresState pres;
  pres.generators = {0, 1};
  pres.names = {"x", "y"};
  pres.relators = {Word{{0, p}, {1, -q}}};
  const Word x = Word::gen(0), y = Word::gen(1);
  return OrderedGroupHandle::make("T(" + std::to_string(p) + "," + std::to_string(q) + ")", pres,
                                  {mul(Word::gen(0, -(p - 1)), y), x}, Word::gen(0, p), options);
}

std::vector<std::pair<Word, Word>> sample_pairs(const OrderedGroupHandle& h, std::size_t limit) {
  std::vector<Word> pool;
  for (const Word& g : h.generators()) pool.push_back(g);
  for (const Word& g : h.generators()) pool.push_back(invert(g));
  for (const Word& a : h.generators()) {
    for (const Word& b : h.generators()) pool.push_back(mul(a, invert(b)));
  }
  std::vector<std::pair<Word, Word>> out;
  for (std::size_t i = 0; i < pool.size() && out.size() < limit; ++i) {
    for (std::size_t j = i + 1; j < pool.size() && out.size() < limit; ++j) {
      if (!h.equal(pool[i], pool[j])) out.emplace_back(pool[i], pool[j]);
    }
  }
  return out;
}

AmalgamHandle amalgamate(const OrderedGroupHandle& G, const OrderedGroupHandle& H, const HandleOptions& options) {
  AmalgamHandle X{G, G, H, 0, {}};
  X.inv_h = probes::right_invariance_probe(H.signer(), H.central(), sample_pairs(H, 24));
  X.inv_h.note = "right invariance of z_H checked on " + std::to_string(X.inv_h.checks.size()) +
                 " sample pairs only; the hypothesis itself is not proved";
  if (X.inv_h.overall() == Verdict::Fail) {
    throw InputError("handle " + H.name() + " fails the right-invariance sample for its central element");
  }

  const PresState& pg = G.presentation();
  const PresState& ph = H.presentation();
  const int gmax = *std::max_element(pg.generators.begin(), pg.generators.end());
  const int hmin = *std::min_element(ph.generators.begin(), ph.generators.end());
  X.h_offset = gmax + 1 - hmin;

  PresState p = pg;
  for (std::size_t i = 0; i < ph.generators.size(); ++i) {
    const int id = ph.generators[i] + X.h_offset;
    std::string name = ph.names[i];
    if (std::find(p.names.begin(), p.names.end(), name) != p.names.end()) name += "_" + std::to_string(id);
    p.generators.push_back(id);
    p.names.push_back(name);
  }
  for (const Word& r : ph.relators) p.relators.push_back(X.embed_h(r));
  const Word zh = X.embed_h(H.central());
  p.relators.push_back(mul(G.central(), invert(zh)));

  const Word h1 = X.embed_h(H.generators().front());
  std::vector<Word> gens;
  for (const Word& g : G.generators()) gens.push_back(mul({g, invert(zh), h1}));
  for (const Word& h : H.generators()) gens.push_back(X.embed_h(h));

  // g_i = x_i (h_1^-1 z_H), and h_1^-1 z_H is positive in H
  std::vector<std::vector<int>> shortcuts;
  const cone::GenericSign lift = H.sign(mul(invert(H.generators().front()), H.central()), options.sign_budget);
  const int m = static_cast<int>(G.generators().size());
  for (auto sc : H.shortcuts()) {
    for (int& f : sc) f += m;
    shortcuts.push_back(std::move(sc));
  }
  if (lift.value == Sign::Positive) {
    auto lifted = [&](int i) {
      std::vector<int> sc{i};
      for (int f : lift.factors) sc.push_back(m + f);
      return sc;
    };
    for (int i = 0; i < m; ++i) shortcuts.push_back(lifted(i));
    for (const auto& gs : G.shortcuts()) {
      std::vector<int> sc;
      for (int f : gs) {
        const auto part = lifted(f);
        sc.insert(sc.end(), part.begin(), part.end());
      }
      shortcuts.push_back(std::move(sc));
    }
  }

  X.handle = OrderedGroupHandle::make("(" + G.name() + " * " + H.name() + ")", std::move(p), std::move(gens),
                                      G.central(), options, G.cyclic_central() || H.cyclic_central(),
                                      std::move(shortcuts));
  return X;
}

ProbeReport verify_ito_chain(const AmalgamHandle& X, std::size_t budget) {
  ProbeReport rep;
  rep.probe = "ito-chain";
  rep.budgets["sign"] = static_cast<std::int64_t>(budget);
  const auto signer = X.handle.signer(budget);
  const auto& gens = X.handle.generators();
  const std::size_t m = X.x_count();
  auto label = [&](std::size_t i) {
    char buf[32];
    if (i < m) {
      std::snprintf(buf, sizeof buf, "x%02zu", i + 1);
    } else {
      std::snprintf(buf, sizeof buf, "h%02zu", i - m + 1);
    }
    return std::string(buf);
  };

  const bool degenerate = X.g.cyclic_central() || X.h.cyclic_central();
  rep.checks.push_back(less_check(signer, "chain 1 < " + label(0), Word{}, gens[0]));
  for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
    rep.checks.push_back(
        less_check(signer, "chain " + label(i) + " < " + label(i + 1), gens[i], gens[i + 1], degenerate));
  }
  rep.checks.push_back(
      less_check(signer, "chain " + label(gens.size() - 1) + " < z", gens.back(), X.handle.central(), degenerate));

  // the inclusions of G and H preserve the order
  auto preserved = [&](const OrderedGroupHandle& part, const char* tag, auto embed) {
    const auto inner = part.signer(budget);
    const auto pairs = sample_pairs(part, 12);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Word q = mul(invert(pairs[k].first), pairs[k].second);
      const Signed a = inner(q);
      const Signed b = signer(embed(q));
      Check c;
      char buf[48];
      std::snprintf(buf, sizeof buf, "inclusion %s sample %02zu", tag, k);
      c.name = buf;
      c.evidence.push_back({"in factor", q, a});
      c.evidence.push_back({"in amalgam", embed(q), b});
      if (a.value == Sign::Unknown || b.value == Sign::Unknown) {
        c.note = "undecided";
      } else {
        c.verdict = a.value == b.value ? Verdict::Pass : Verdict::Fail;
      }
      rep.checks.push_back(std::move(c));
    }
  };
  preserved(X.g, "G", [&](const Word& w) { return X.embed_g(w); });
  preserved(X.h, "H", [&](const Word& w) { return X.embed_h(w); });

  std::vector<Word> samples;
  for (int id : X.handle.presentation().generators) {
    samples.push_back(Word::gen(id));
    samples.push_back(Word::gen(id, -1));
  }
  for (Check c : probes::cofinal_probe(signer, X.handle.central(), samples, 8).checks) {
    c.name = "cofinal " + c.name;
    rep.checks.push_back(std::move(c));
  }
  for (Check c : probes::right_invariance_probe(signer, X.handle.central(), sample_pairs(X.handle, 16)).checks) {
    c.name = "right-invariant " + c.name;
    rep.checks.push_back(std::move(c));
  }
  rep.finalize();
  return rep;
}

ProbeReport factorization_probe(const AmalgamHandle& X, std::size_t budget) {
  ProbeReport rep;
  rep.probe = "factorization";
  const auto signer = X.handle.signer(budget);
  const Word z = X.handle.central();
  const auto& gg = X.g.generators();
  const auto& hg = X.h.generators();
  auto positive = [&](std::string name, const Word& w) {
    rep.checks.push_back(less_check(signer, std::move(name), Word{}, w));
  };
  std::vector<std::string> missing;
  const Word h1 = X.embed_h(hg[0]);
  positive("(h1^-1 z) > 1", mul(invert(h1), z));
  if (gg.size() >= 2) {
    positive("(g1^-1 g2) > 1", mul(invert(gg[0]), gg[1]));
  } else {
    missing.push_back("g2");
  }
  if (hg.size() >= 2) {
    const Word h2 = X.embed_h(hg[1]);
    positive("(z h2 z^-1) > 1", mul({z, h2, invert(z)}));
  } else {
    missing.push_back("h2");
  }
  const auto& xs = X.handle.generators();
  if (missing.empty()) {
    const Word h2 = X.embed_h(hg[1]);
    const Word lhs = mul({invert(xs[0]), xs[1], invert(z)});
    const Word rhs = mul({invert(h1), z, invert(gg[0]), gg[1], z, h2, invert(z)});
    rep.note = std::string("x1^-1 x2 z^-1 is ") + cone::to_string(signer(lhs).value) +
               "; displayed factorization " + (X.handle.equal(lhs, rhs) ? "holds" : "does not hold as a group identity");
  } else {
    rep.note = "factor rank 1, missing";
    for (const auto& s : missing) rep.note += " " + s;
    rep.note += "; the sign of x1^-1 x2 z^-1 is not reported";
  }
  rep.finalize();
  return rep;
}

ChainBuild iterate_chain(const HandleFamily& family, int m, const HandleOptions& options) {
  if (m < 0) throw InputError("m must be >= 0");
  ChainBuild out{family(0), {}, {}};
  out.report.probe = "ito-iterate";
  out.report.budgets["sign"] = static_cast<std::int64_t>(options.sign_budget);
  out.minimal.push_back(out.top.generators().front());

  for (int j = 0; j < m; ++j) {
    const OrderedGroupHandle right = family(j + 1);
    const OrderedGroupHandle left = family(-j - 1);
    const std::string lv = "level " + std::to_string(j);

    const AmalgamHandle gp = amalgamate(out.top, right, options);
    const Word p = out.minimal.back();
    const Word pp = gp.handle.generators().front();
    {
      Check c;
      c.name = lv + " p' = p z^-1 g1";
      const Word rhs = mul({p, invert(gp.embed_h(right.central())), gp.embed_h(right.generators().front())});
      c.evidence = {{"p'", pp, std::nullopt}, {"p z^-1 g1", rhs, std::nullopt}};
      c.verdict = gp.handle.equal(pp, rhs) ? Verdict::Pass : Verdict::Fail;
      out.report.checks.push_back(std::move(c));
    }
    auto step = [&](const std::string& name, const probes::Signer& signer, const Word& lower, const Word& upper,
                    bool degenerate) {
      Check c = less_check(signer, name, lower, upper, true);
      const Sign s = c.evidence.front().sign->value;
      if (s == Sign::Positive || s == Sign::Zero) {
        const bool strict = s == Sign::Positive;
        c.note = strict ? "strict" : "equal";
        if (strict == degenerate) {
          c.verdict = Verdict::Fail;
          c.note += degenerate ? " although the factor is cyclic-central" : " although the factor is not cyclic-central";
        }
      }
      out.report.checks.push_back(std::move(c));
    };
    step(lv + " p' <= p", gp.handle.signer(), pp, p, right.cyclic_central());

    const AmalgamHandle gn = amalgamate(left, gp.handle, options);
    for (Word& w : out.minimal) w = gn.embed_h(w);
    const Word pn = gn.handle.generators().front();
    step(lv + " p(next) <= p'", gn.handle.signer(), pn, gn.embed_h(pp), left.cyclic_central());
    out.top = gn.handle;
    out.minimal.push_back(pn);
  }
  out.report.finalize();
  return out;
}

}  // namespace ordlim::ito
