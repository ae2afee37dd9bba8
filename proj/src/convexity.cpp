#include "ordlim/convexity.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "ordlim/errors.hpp"
#include "ordlim/grammar.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/rewriting.hpp"

namespace ordlim::convexity {

using cone::Sign;
using cone::SignResult;
using probes::Check;
using probes::ProbeReport;
using probes::Verdict;

const char* to_string(Rule r) {
  switch (r) {
    case Rule::Seed: return "seed";
    case Rule::Root: return "root";
    case Rule::Sandwich: return "sandwich";
    case Rule::RelationRewrite: return "relation-rewrite";
    case Rule::Product: return "product";
    case Rule::Inverse: return "inverse";
  }
  return "?";
}

namespace {

std::optional<Letter> single_syllable(const Word& w) {
  if (w.syllables() != 1) return std::nullopt;
  return w.letters().front();
}

struct BudgetOut {};

class Engine {
 public:
  Engine(const ChainSpec& spec, std::vector<Word> seed, std::vector<Word> targets, const DeduceOptions& opt)
      : spec_(spec),
        opt_(opt),
        tn_(rewriting::TreeNormalizer::for_chain(spec)),
        seed_(std::move(seed)),
        targets_(std::move(targets)) {
    w_ = opt.max_window;
    if (w_ < 0) {
      int top = 0;
      for (const Word& s : seed_) top = std::max(top, s.window());
      for (const Word& t : targets_) top = std::max(top, t.window());
      w_ = top;
    }
    for (std::size_t i = 0; i < seed_.size(); ++i) {
      if (learn_nf(tn_.normalize(seed_[i]), seed_[i], std::nullopt)) known_.back().seed = i;
    }
  }

  Deduction run() {
    Deduction out;
    out.max_window = w_;
    try {
      while (!all_reached()) {
        if (roots() || climb() || quotients() || powers() || assemble()) continue;
        if (!sandwich()) break;
      }
    } catch (const BudgetOut&) {
    }
    out.trace = trace_;
    out.reached.assign(targets_.size(), false);
    out.target_steps.assign(targets_.size(), std::nullopt);
    for (std::size_t t = 0; t < targets_.size(); ++t) {
      const Word nf = tn_.normalize(targets_[t]);
      if (nf.empty()) {
        out.reached[t] = true;
        continue;
      }
      auto it = by_nf_.find(nf);
      if (it == by_nf_.end()) continue;
      out.reached[t] = true;
      out.target_steps[t] = known_[it->second].step;
    }
    out.complete = std::all_of(out.reached.begin(), out.reached.end(), [](bool b) { return b; });
    for (const Known& k : known_) out.frontier.push_back(k.word);
    return out;
  }

 private:
  struct Known {
    Word nf;
    Word word;
    std::optional<std::size_t> step;
    std::size_t seed = 0;
  };

  bool all_reached() const {
    for (const Word& t : targets_) {
      const Word nf = tn_.normalize(t);
      if (!nf.empty() && !by_nf_.count(nf)) return false;
    }
    return true;
  }

  // Unreached targets pull the climb toward their levels.
  std::pair<int, int> target_levels() const {
    int lo = 1 << 30, hi = -(1 << 30);
    for (const Word& t : targets_) {
      const Word nf = tn_.normalize(t);
      if (nf.empty() || by_nf_.count(nf)) continue;
      lo = std::min(lo, t.min_level());
      hi = std::max(hi, t.max_level());
    }
    return {lo, hi};
  }

  std::size_t add_step(Step s) {
    if (trace_.steps.size() >= opt_.step_budget) throw BudgetOut{};
    trace_.steps.push_back(std::move(s));
    return trace_.steps.size() - 1;
  }

  bool learn_nf(Word nf, const Word& word, std::optional<std::size_t> step) {
    if (nf.empty() || by_nf_.count(nf)) return false;
    by_nf_.emplace(nf, known_.size());
    known_.push_back({std::move(nf), word, step, 0});
    return true;
  }

  std::size_t conclude(Step s) {
    Word c = s.conclusion;
    const std::size_t idx = add_step(std::move(s));
    learn_nf(tn_.normalize(c), c, idx);
    return idx;
  }

  std::size_t cite(std::size_t k) {
    Known& kn = known_[k];
    if (!kn.step) {
      Step s;
      s.rule = Rule::Seed;
      s.conclusion = kn.word;
      kn.step = add_step(std::move(s));
    }
    return *kn.step;
  }

  bool knows(const Word& w) const {
    const Word nf = tn_.normalize(w);
    return nf.empty() || by_nf_.count(nf);
  }

  std::size_t inverse_of(std::size_t k) {
    const Word inv = invert(known_[k].word);
    auto it = by_nf_.find(tn_.normalize(inv));
    if (it != by_nf_.end()) return cite(it->second);
    Step s;
    s.rule = Rule::Inverse;
    s.premises = {cite(k)};
    s.conclusion = inv;
    return conclude(std::move(s));
  }

  bool in_window(int level) const { return level >= -w_ && level <= w_ && spec_.level_alive(level); }

  bool roots() {
    for (std::size_t k = 0; k < known_.size(); ++k) {
      for (const Word* w : {&known_[k].word, &known_[k].nf}) {
        auto s = single_syllable(*w);
        if (!s || s->exp == 1 || knows(Word::gen(s->gen))) continue;
        Step st;
        st.premises = {cite(k)};
        st.conclusion = Word::gen(s->gen);
        if (s->exp == -1) {
          st.rule = Rule::Inverse;
        } else {
          st.rule = Rule::Root;
          st.exponent = s->exp;
        }
        conclude(std::move(st));
        return true;
      }
    }
    return false;
  }

  Word product_of(const std::vector<std::size_t>& premises) const {
    Word w;
    for (std::size_t p : premises) w = mul(w, trace_.steps[p].conclusion);
    return w;
  }

  std::size_t power_step(std::size_t prem, std::int64_t n) {
    if (n == 1) return prem;
    Step s;
    s.rule = Rule::Product;
    s.premises.assign(static_cast<std::size_t>(n), prem);
    s.conclusion = product_of(s.premises);
    return conclude(std::move(s));
  }

  // g_from^a = g_to^b with g_from = known k
  void hop(std::size_t k, std::int64_t a, int to, std::int64_t b) {
    const std::size_t p = power_step(cite(k), a);
    Step rw;
    rw.rule = Rule::RelationRewrite;
    rw.premises = {p};
    rw.conclusion = Word::gen(to, b);
    const std::size_t q = conclude(std::move(rw));
    if (b != 1) {
      Step r;
      r.rule = Rule::Root;
      r.premises = {q};
      r.exponent = b;
      r.conclusion = Word::gen(to);
      conclude(std::move(r));
    }
  }

  bool climb() {
    if (!spec_.has_edges()) return false;
    const auto [lo, hi] = target_levels();
    for (std::size_t k = 0; k < known_.size(); ++k) {
      auto s = single_syllable(known_[k].word);
      if (!s || s->exp != 1) s = single_syllable(known_[k].nf);
      if (!s || s->exp != 1) continue;
      const int j = s->gen;
      if (hi > j && in_window(j + 1) && !knows(Word::gen(j + 1))) {
        hop(k, spec_.at(j + 1).k, j + 1, spec_.at(j + 1).l);
        return true;
      }
      if (lo < j && in_window(j - 1) && !knows(Word::gen(j - 1))) {
        hop(k, spec_.at(j).l, j - 1, spec_.at(j).k);
        return true;
      }
    }
    return false;
  }

  bool quotients() {
    const std::size_t n = std::min<std::size_t>(known_.size(), 64);
    for (std::size_t y = 1; y < n; ++y) {
      for (std::size_t x = 0; x < y; ++x) {
        for (int side = 0; side < 2; ++side) {
          const Word q = side == 0 ? mul(invert(known_[x].word), known_[y].word)
                                   : mul(known_[x].word, invert(known_[y].word));
          const Word nf = tn_.normalize(q);
          auto s = single_syllable(nf);
          if (!s || !in_window(s->gen) || knows(Word::gen(s->gen)) || by_nf_.count(nf)) continue;
          Step p;
          p.rule = Rule::Product;
          if (side == 0) {
            p.premises = {inverse_of(x), cite(y)};
          } else {
            p.premises = {cite(x), inverse_of(y)};
          }
          p.conclusion = product_of(p.premises);
          conclude(std::move(p));
          return true;
        }
      }
    }
    return false;
  }

  // targets that are powers of a known generator
  bool powers() {
    for (const Word& t : targets_) {
      if (knows(t)) continue;
      auto s = single_syllable(t);
      if (!s) continue;
      auto it = by_nf_.find(tn_.normalize(Word::gen(s->gen)));
      if (it == by_nf_.end()) continue;
      const std::int64_t e = s->exp < 0 ? -s->exp : s->exp;
      if (e == 1) continue;
      const std::size_t base = s->exp < 0 ? inverse_of(it->second) : cite(it->second);
      Step p;
      p.rule = Rule::Product;
      p.premises.assign(static_cast<std::size_t>(e), base);
      p.conclusion = product_of(p.premises);
      conclude(std::move(p));
      return true;
    }
    return false;
  }

  // targets whose every letter is a known generator, as one product
  bool assemble() {
    bool any = false;
    for (const Word& t : targets_) {
      if (knows(t) || t.syllables() < 2) continue;
      const auto& ls = t.letters();
      if (!std::all_of(ls.begin(), ls.end(), [&](const Letter& l) { return knows(Word::gen(l.gen)); })) continue;
      std::vector<std::size_t> premises;
      for (const Letter& l : ls) {
        const std::size_t k = by_nf_.at(tn_.normalize(Word::gen(l.gen)));
        const std::size_t base = l.exp < 0 ? inverse_of(k) : cite(k);
        premises.insert(premises.end(), static_cast<std::size_t>(l.exp < 0 ? -l.exp : l.exp), base);
      }
      Step p;
      p.rule = Rule::Product;
      p.premises = std::move(premises);
      p.conclusion = product_of(p.premises);
      conclude(std::move(p));
      any = true;
    }
    return any;
  }

  const SignResult& sign_of(const Word& w) {
    const Word nf = tn_.normalize(w);
    auto it = signs_.find(nf);
    if (it == signs_.end()) {
      it = signs_.emplace(nf, cone::sign_at(spec_, w, w.window(), opt_.sign_budget)).first;
    }
    return it->second;
  }

  const std::vector<Word>& pool() {
    if (pool_.empty()) {
      for (int w = w_; w >= 0; --w) {
        for (int i = w; i >= -w; --i) pool_.push_back(cone_generator(spec_, {i, w}));
      }
      for (int j = -w_; j <= w_; ++j) {
        if (spec_.level_alive(j)) pool_.push_back(Word::gen(j));
      }
    }
    return pool_;
  }

  bool sandwich() {
    if (!spec_.has_dehornoy_cone()) return false;
    const std::size_t cap = std::min<std::size_t>(known_.size(), 16);
    for (const Word& cand : pool()) {
      if (knows(cand)) continue;
      const SignResult sc = sign_of(cand);
      if (sc.value != Sign::Positive && sc.value != Sign::Negative) continue;
      const Word g = sc.value == Sign::Positive ? cand : invert(cand);
      const SignResult sg = sc.value == Sign::Positive ? sc : sign_of(g);
      if (sg.value != Sign::Positive) continue;
      for (std::size_t k = 0; k < cap; ++k) {
        const SignResult& sk = sign_of(known_[k].word);
        if (sk.value != Sign::Positive && sk.value != Sign::Negative) continue;
        const Word c = sk.value == Sign::Positive ? known_[k].word : invert(known_[k].word);
        const SignResult sb = sign_of(mul(invert(g), c));
        if (sb.value != Sign::Positive) continue;
        Step s;
        s.rule = Rule::Sandwich;
        s.premises = {sk.value == Sign::Positive ? cite(k) : inverse_of(k)};
        s.conclusion = g;
        s.evidence = {sg, sb};
        const std::size_t idx = conclude(std::move(s));
        if (sc.value == Sign::Negative) {
          Step inv;
          inv.rule = Rule::Inverse;
          inv.premises = {idx};
          inv.conclusion = cand;
          conclude(std::move(inv));
        }
        return true;
      }
    }
    return false;
  }

  const ChainSpec& spec_;
  DeduceOptions opt_;
  rewriting::TreeNormalizer tn_;
  std::vector<Word> seed_, targets_;
  int w_ = 0;
  DeductionTrace trace_;
  std::vector<Known> known_;
  std::unordered_map<Word, std::size_t, WordHash> by_nf_;
  std::unordered_map<Word, SignResult, WordHash> signs_;
  std::vector<Word> pool_;
};

}  // namespace

Deduction deduce_containment(const ChainSpec& spec, const std::vector<Word>& seed,
                             const std::vector<Word>& targets, const DeduceOptions& options) {
  return Engine(spec, seed, targets, options).run();
}

TraceCheck replay(const ChainSpec& spec, const std::vector<Word>& seed, const DeductionTrace& trace) {
  const auto tn = rewriting::TreeNormalizer::for_chain(spec);
  TraceCheck out;
  auto fail = [&](std::size_t i, std::string why) {
    out.valid = false;
    out.failed_step = i;
    out.reason = std::move(why);
    return out;
  };
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const Step& s = trace.steps[i];
    for (std::size_t p : s.premises) {
      if (p >= i) return fail(i, "premise does not precede its use");
    }
    auto premise = [&](std::size_t n) -> const Word& { return trace.steps[s.premises[n]].conclusion; };
    switch (s.rule) {
      case Rule::Seed: {
        const bool ok = std::any_of(seed.begin(), seed.end(), [&](const Word& w) { return tn.equal(w, s.conclusion); });
        if (!ok || !s.premises.empty()) return fail(i, "seed step does not name a seed element");
        break;
      }
      case Rule::Inverse:
        if (s.premises.size() != 1 || invert(premise(0)) != s.conclusion) return fail(i, "not the inverse");
        break;
      case Rule::Product: {
        if (s.premises.empty()) return fail(i, "product without premises");
        Word w;
        for (std::size_t n = 0; n < s.premises.size(); ++n) w = mul(w, premise(n));
        if (w != s.conclusion) return fail(i, "not the product of the premises");
        break;
      }
      case Rule::Root:
        if (s.premises.size() != 1 || s.exponent == 0 || !tn.equal(power(s.conclusion, s.exponent), premise(0))) {
          return fail(i, "premise is not the stated power of the conclusion");
        }
        break;
      case Rule::RelationRewrite:
        if (s.premises.size() != 1 || !tn.equal(premise(0), s.conclusion)) return fail(i, "sides differ in the group");
        break;
      case Rule::Sandwich: {
        if (s.premises.size() != 1 || s.evidence.size() != 2) return fail(i, "sandwich needs one premise and two signs");
        const Word between = mul(invert(s.conclusion), premise(0));
        const SignResult& a = s.evidence[0];
        const SignResult& b = s.evidence[1];
        if (a.value != Sign::Positive || !cone::validate(spec, s.conclusion, a)) {
          return fail(i, "1 < conclusion is not certified");
        }
        if (b.value != Sign::Positive || !cone::validate(spec, between, b)) {
          return fail(i, "conclusion < premise is not certified");
        }
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ConvexApprox gamma_ball(const ChainSpec& spec, const std::vector<Word>& seed, int window, int radius,
                        std::size_t budget, std::size_t sign_budget) {
  if (radius < 1) throw InputError("radius must be >= 1");
  if (window < 0) throw InputError("window must be >= 0");
  const auto tn = rewriting::TreeNormalizer::for_chain(spec);
  ConvexApprox out;
  out.seed = seed;
  out.window = window;
  out.radius = radius;

  std::vector<Word> elems;
  std::unordered_map<Word, std::size_t, WordHash> index;
  for (const Word& w : ball(-window, window, radius)) {
    Word nf = tn.normalize(w);
    if (index.emplace(nf, elems.size()).second) elems.push_back(std::move(nf));
  }
  const std::size_t n = elems.size();
  std::vector<std::optional<std::size_t>> step(n);
  std::vector<char> member(n, 0);
  std::vector<Word> word(n);
  std::deque<std::size_t> queue;
  std::vector<std::size_t> members;
  auto& steps = out.trace.steps;

  auto add = [&](std::size_t b, Step s) {
    word[b] = s.conclusion;
    steps.push_back(std::move(s));
    step[b] = steps.size() - 1;
    member[b] = 1;
    members.push_back(b);
    queue.push_back(b);
  };
  auto lookup = [&](const Word& w) -> std::optional<std::size_t> {
    auto it = index.find(tn.normalize(w));
    if (it == index.end()) return std::nullopt;
    return it->second;
  };

  const std::size_t id = index.at(Word{});
  member[id] = 1;
  members.push_back(id);
  for (const Word& s : seed) {
    auto b = lookup(s);
    if (!b || member[*b]) continue;
    Step st;
    st.rule = Rule::Seed;
    st.conclusion = s;
    add(*b, std::move(st));
  }

  std::vector<SignResult> signs;
  const bool ordered = cone::has_cone(spec);
  if (ordered) {
    signs = cone::sign_batch(spec, elems, window, sign_budget);
    out.work += n;
  }
  std::optional<std::size_t> top;  // largest positive member
  std::vector<std::optional<std::size_t>> checked_against(n);

  auto over = [&] {
    if (out.work > budget) out.truncated = true;
    return out.truncated;
  };

  bool changed = true;
  while (changed && !over()) {
    changed = false;
    while (!queue.empty() && !over()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      if (auto b = lookup(invert(word[x])); b && !member[*b]) {
        Step st;
        st.rule = Rule::Inverse;
        st.premises = {*step[x]};
        st.conclusion = invert(word[x]);
        add(*b, std::move(st));
      }
      const std::vector<std::size_t> snapshot = members;
      for (std::size_t y : snapshot) {
        if (!step[y]) continue;  // identity
        for (int side = 0; side < 2; ++side) {
          ++out.work;
          const std::size_t l = side == 0 ? x : y, r = side == 0 ? y : x;
          const Word prod = mul(word[l], word[r]);
          auto b = lookup(prod);
          if (!b || member[*b]) continue;
          Step st;
          st.rule = Rule::Product;
          st.premises = {*step[l], *step[r]};
          st.conclusion = prod;
          add(*b, std::move(st));
        }
        if (over()) break;
      }
      if (ordered && signs[x].value == Sign::Positive) {
        if (!top) {
          top = x;
        } else {
          ++out.work;
          const SignResult r = cone::sign_at(spec, mul(invert(elems[*top]), elems[x]), window, sign_budget);
          if (r.value == Sign::Positive) top = x;
        }
      }
    }
    if (over()) break;

    for (std::size_t b = 0; b < n && !over(); ++b) {
      if (member[b]) continue;
      for (int e = 2; e <= radius; ++e) {
        ++out.work;
        auto p = lookup(power(elems[b], e));
        if (!p || !member[*p] || !step[*p]) continue;
        Step st;
        st.rule = Rule::Root;
        st.premises = {*step[*p]};
        st.exponent = e;
        st.conclusion = elems[b];
        add(b, std::move(st));
        changed = true;
        break;
      }
    }
    if (!queue.empty()) {
      changed = true;
      continue;
    }
    if (!ordered || !top) continue;
    for (std::size_t b = 0; b < n && !over(); ++b) {
      if (member[b] || signs[b].value != Sign::Positive || checked_against[b] == top) continue;
      checked_against[b] = top;
      ++out.work;
      const Word between = mul(invert(elems[b]), word[*top]);
      const SignResult r = cone::sign_at(spec, between, window, sign_budget);
      if (r.value != Sign::Positive) continue;
      Step st;
      st.rule = Rule::Sandwich;
      st.premises = {*step[*top]};
      st.conclusion = elems[b];
      st.evidence = {signs[b], r};
      add(b, std::move(st));
      changed = true;
    }
  }
  for (std::size_t b : members) out.members.push_back(elems[b]);
  std::sort(out.members.begin(), out.members.end(),
            [](const Word& a, const Word& b) { return shortlex_compare(a, b) == Ordering::Less; });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Check deduction_check(const ChainSpec& spec, std::string name, const std::vector<Word>& seed,
                      const std::vector<Word>& targets, const DeduceOptions& opt) {
  Check c;
  c.name = std::move(name);
  for (const Word& s : seed) c.evidence.push_back({"seed", s, std::nullopt});
  for (const Word& t : targets) c.evidence.push_back({"target", t, std::nullopt});
  const Deduction d = deduce_containment(spec, seed, targets, opt);
  const TraceCheck tc = replay(spec, seed, d.trace);
  if (!tc.valid) {
    c.verdict = Verdict::Fail;
    c.note = "trace step " + std::to_string(tc.failed_step) + " does not replay: " + tc.reason;
  } else if (d.complete) {
    c.verdict = Verdict::Pass;
    c.note = std::to_string(d.trace.steps.size()) + " steps, window " + std::to_string(d.max_window);
  } else {
    c.verdict = Verdict::Inconclusive;
    c.note = "not derived within " + std::to_string(d.trace.steps.size()) + " steps";
  }
  return c;
}

}  // namespace

ProbeReport replay_conditions(const ChainSpec& spec, int m, const DeduceOptions& opt) {
  if (!spec.has_dehornoy_cone()) throw InputError("spec " + spec.key() + " is outside the scope of the conditions");
  if (m < 0) throw InputError("m must be >= 0");
  ProbeReport rep;
  rep.probe = "conditions";
  rep.budgets["steps"] = static_cast<std::int64_t>(opt.step_budget);
  rep.budgets["sign"] = static_cast<std::int64_t>(opt.sign_budget);
  const std::string at = " m=" + std::to_string(m);
  DeduceOptions up = opt, here = opt;
  up.max_window = m + 1;
  here.max_window = m;

  rep.checks.push_back(deduction_check(spec, "C1" + at, {Word::gen(m, spec.at(m + 1).k)}, {Word::gen(m + 1)}, up));
  if (m >= 1) {
    rep.checks.push_back(deduction_check(spec, "C2" + at, {Word::gen(m, spec.at(m).l)}, {Word::gen(m - 1)}, here));
  }
  rep.checks.push_back(
      deduction_check(spec, "C2 mirrored" + at, {Word::gen(-m, spec.at(-m).l)}, {Word::gen(-m - 1)}, up));
  rep.checks.push_back(deduction_check(spec, "C3" + at, {cone_generator(spec, {m, m})},
                                       {Word::gen(m + 1, spec.at(m + 2).k)}, up));
  rep.finalize();
  return rep;
}

ProbeReport conradian_soul_evidence(const ChainSpec& spec, int radius, int horizon, const DeduceOptions& opt,
                                    int window) {
  if (radius < 1) throw InputError("radius must be >= 1");
  if (horizon < 0) throw InputError("horizon must be >= 0");
  const auto tn = rewriting::TreeNormalizer::for_chain(spec);
  ProbeReport rep;
  rep.probe = "soul";
  rep.budgets["radius"] = radius;
  rep.budgets["horizon"] = horizon;
  rep.budgets["steps"] = static_cast<std::int64_t>(opt.step_budget);

  Check a;
  a.name = "(a) non-abelian";
  const int reach = std::max(1, std::min(horizon, window));
  // pairs nearest level 0 first, so (0, 1) leads
  std::vector<std::pair<int, int>> pairs;
  for (int i = -reach; i <= reach; ++i) {
    for (int j = i + 1; j <= reach; ++j) {
      if (spec.level_alive(i) && spec.level_alive(j)) pairs.emplace_back(i, j);
    }
  }
  auto key = [](const std::pair<int, int>& p) {
    return std::make_tuple(std::max(std::abs(p.first), std::abs(p.second)), std::abs(p.first) + std::abs(p.second),
                           -p.first);
  };
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  for (const auto& [i, j] : pairs) {
    const Word gi = Word::gen(i), gj = Word::gen(j);
    const Word comm = mul({invert(gi), invert(gj), gi, gj});
    if (!tn.is_identity(comm)) {
      a.verdict = Verdict::Pass;
      a.evidence = {{"commutator", comm, std::nullopt}};
      a.note = "normal form " + format_word(tn.normalize(comm));
      break;
    }
    if (a.evidence.size() < 4) a.evidence.push_back({"trivial commutator", comm, std::nullopt});
  }
  if (a.verdict != Verdict::Pass) {
    a.verdict = Verdict::Fail;
    a.note = "every generator commutator up to level " + std::to_string(reach) + " is trivial";
  }
  rep.checks.push_back(a);

  if (!spec.has_dehornoy_cone()) {
    rep.note = "spec " + spec.key() + " is outside the scope of the soul argument; (b) not run";
    rep.finalize();
    return rep;
  }

  Check b;
  b.name = "(b) every nontrivial ball element generates everything to the horizon";
  std::vector<Word> targets;
  for (int j = -horizon; j <= horizon; ++j) targets.push_back(Word::gen(j));
  std::unordered_set<Word, WordHash> seen;
  std::size_t tried = 0, derived = 0, longest = 0;
  DeduceOptions o = opt;
  for (const Word& w : ball(-window, window, radius)) {
    Word nf = tn.normalize(w);
    if (nf.empty() || !seen.insert(nf).second) continue;
    ++tried;
    o.max_window = std::max(horizon, w.window() + 1);
    const Deduction d = deduce_containment(spec, {w}, targets, o);
    const TraceCheck tc = replay(spec, {w}, d.trace);
    if (!tc.valid) {
      b.verdict = Verdict::Fail;
      b.evidence.push_back({"trace does not replay", w, std::nullopt});
      continue;
    }
    if (!d.complete) {
      if (b.evidence.size() < 8) b.evidence.push_back({"not derived", w, std::nullopt});
      continue;
    }
    ++derived;
    longest = std::max(longest, d.trace.steps.size());
  }
  if (b.verdict != Verdict::Fail) b.verdict = derived == tried ? Verdict::Pass : Verdict::Inconclusive;
  b.note = std::to_string(derived) + " of " + std::to_string(tried) + " elements reach g(" + std::to_string(-horizon) +
           ").." + "g(" + std::to_string(horizon) + "); longest trace " + std::to_string(longest) + " steps";
  rep.checks.push_back(b);
  rep.finalize();
  return rep;
}

}  // namespace ordlim::convexity
