#include "ordlim/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>
#include <unordered_set>

#include "ordlim/errors.hpp"

namespace ordlim::rewriting {

namespace {

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ResourceExhausted("exponent overflow while normalizing");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ResourceExhausted("exponent overflow while normalizing");
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// TreeNormalizer

TreeNormalizer TreeNormalizer::for_chain(const ChainSpec& spec) {
  TreeNormalizer t;
  t.chain_ = spec;
  t.base_ = 0;
  return t;
}

TreeNormalizer TreeNormalizer::for_tree(std::vector<int> vertices, std::vector<TreeEdge> edges) {
  if (vertices.empty()) throw InputError("tree of groups needs at least one vertex");
  TreeNormalizer t;
  t.vertices_ = std::move(vertices);
  t.edges_ = std::move(edges);
  t.base_ = t.vertices_.front();
  for (std::size_t i = 0; i < t.vertices_.size(); ++i) {
    if (!t.index_.emplace(t.vertices_[i], i).second) {
      throw InputError("duplicate vertex " + std::to_string(t.vertices_[i]));
    }
  }
  const std::size_t n = t.vertices_.size();
  if (t.edges_.size() + 1 != n) {
    throw InputError("relators do not form a tree: " + std::to_string(t.edges_.size()) +
                     " edges on " + std::to_string(n) + " vertices");
  }
  // adjacency with directed hop data
  std::vector<std::vector<Hop>> adj(n);
  for (const TreeEdge& e : t.edges_) {
    if (!t.index_.count(e.u) || !t.index_.count(e.v) || e.u == e.v || e.a == 0 || e.b == 0) {
      throw InputError("malformed tree edge");
    }
    const std::size_t iu = t.index_.at(e.u), iv = t.index_.at(e.v);
    adj[iu].push_back({e.v, std::llabs(e.a), e.a > 0 ? e.b : -e.b});
    adj[iv].push_back({e.u, std::llabs(e.b), e.b > 0 ? e.a : -e.a});
  }
  t.next_.assign(n, std::vector<Hop>(n));
  for (std::size_t target = 0; target < n; ++target) {
    // BFS from target; the hop from v toward target is v's parent edge.
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{target};
    seen[target] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (const Hop& h : adj[v]) {
        const std::size_t w = t.index_.at(h.next);
        if (seen[w]) continue;
        seen[w] = true;
        // hop from w to v
        for (const Hop& back : adj[w]) {
          if (back.next == t.vertices_[v]) t.next_[w][target] = back;
        }
        queue.push_back(w);
      }
    }
    if (std::count(seen.begin(), seen.end(), true) != static_cast<std::ptrdiff_t>(n)) {
      throw InputError("relators do not connect all generators");
    }
  }
  return t;
}

TreeNormalizer TreeNormalizer::for_presentation(const PresState& pres) {
  pres.validate();
  std::vector<TreeEdge> edges;
  for (const Word& r : pres.relators) {
    if (r.syllables() != 2) {
      throw InputError("relator is not of the form g_u^a g_v^b; not a tree of cyclic groups");
    }
    const Letter& x = r.letters()[0];
    const Letter& y = r.letters()[1];
    edges.push_back({x.gen, x.exp, y.gen, -y.exp});
  }
  return for_tree(pres.generators, std::move(edges));
}

bool TreeNormalizer::knows(int v) const {
  if (chain_) return true;
  return index_.count(v) > 0;
}

TreeNormalizer::Hop TreeNormalizer::hop(int from, int to) const {
  if (chain_) {
    if (to > from) {
      const ExponentPair e = chain_->at(from + 1);
      return {from + 1, e.k, e.l};
    }
    const ExponentPair e = chain_->at(from);
    return {from - 1, e.l, e.k};
  }
  return next_[index_.at(from)][index_.at(to)];
}

Word TreeNormalizer::normalize(const Word& w) const {
  if (chain_ && !chain_->has_edges()) return free_reduce(w);

  struct Syllable {
    int vertex;
    std::int64_t rep;
  };
  std::vector<Syllable> stack;
  int cur = base_;
  std::int64_t x = 0;

  auto step_toward = [&](int target) {
    const Hop h = hop(cur, target);
    const std::int64_t rep = floor_mod(x, h.from_exp);
    const std::int64_t carried = checked_mul((x - rep) / h.from_exp, h.to_exp);
    if (rep == 0 && !stack.empty() && stack.back().vertex == h.next) {
      x = checked_add(stack.back().rep, carried);
      stack.pop_back();
    } else {
      stack.push_back({cur, rep});
      x = carried;
    }
    cur = h.next;
  };

  for (const Letter& l : w.letters()) {
    if (chain_ && !chain_->level_alive(l.gen)) continue;
    if (!knows(l.gen)) {
      throw InputError("generator id " + std::to_string(l.gen) + " is not in the tree");
    }
    while (cur != l.gen) step_toward(l.gen);
    x = checked_add(x, l.exp);
  }
  while (cur != base_) step_toward(base_);

  std::vector<Letter> out;
  out.reserve(stack.size() + 1);
  for (const Syllable& s : stack) {
    if (s.rep != 0) out.push_back({s.vertex, s.rep});
  }
  if (x != 0) out.push_back({base_, x});
  return Word::from_letters(out);
}

bool TreeNormalizer::equal(const Word& a, const Word& b) const {
  return normalize(mul(a, invert(b))).empty();
}

// ---------------------------------------------------------------------------
// Knuth-Bendix

const char* to_string(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::Complete: return "complete";
    case CompletionStatus::RuleBudgetExceeded: return "rule-budget-exceeded";
    case CompletionStatus::LengthBudgetExceeded: return "length-budget-exceeded";
  }
  return "?";
}

GeneratorRanking center_out_ranking(const PresState& pres) {
  GeneratorRanking r{pres.generators};
  std::stable_sort(r.lightest_first.begin(), r.lightest_first.end(), [](int a, int b) {
    const int aa = std::abs(a), bb = std::abs(b);
    if (aa != bb) return aa < bb;
    return a < b;
  });
  return r;
}

GeneratorRanking listed_ranking(const PresState& pres) { return {pres.generators}; }

namespace {

using Code = RewriteSystem::Code;

bool shortlex_less_codes(const Code& a, const Code& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Wreath ordering: compare the subsequences of heaviest letters by shortlex,
// then the segments between them recursively.
bool wreath_less(const Code& a, const Code& b) {
  if (a == b) return false;
  int top = -1;
  for (int c : a) top = std::max(top, c / 2);
  for (int c : b) top = std::max(top, c / 2);
  if (top < 0) return false;
  auto split = [top](const Code& w, Code& heavy, std::vector<Code>& segs) {
    segs.emplace_back();
    for (int c : w) {
      if (c / 2 == top) {
        heavy.push_back(c);
        segs.emplace_back();
      } else {
        segs.back().push_back(c);
      }
    }
  };
  Code ha, hb;
  std::vector<Code> sa, sb;
  split(a, ha, sa);
  split(b, hb, sb);
  if (ha != hb) return shortlex_less_codes(ha, hb);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] != sb[i]) return wreath_less(sa[i], sb[i]);
  }
  return false;
}

}  // namespace

Precedence RewriteSystem::precedence() const {
  std::vector<SignedLetter> order;
  for (int g : ranking_.lightest_first) {
    order.push_back({g, false});
    order.push_back({g, true});
  }
  return Precedence::explicit_order(std::move(order));
}

RewriteSystem::Code RewriteSystem::encode(const Word& w) const {
  Code c;
  for (const Letter& l : w.letters()) {
    auto it = rank_of_.find(l.gen);
    if (it == rank_of_.end()) {
      throw InputError("generator id " + std::to_string(l.gen) + " not in rewrite system");
    }
    const int code = 2 * it->second + (l.exp < 0 ? 1 : 0);
    for (std::int64_t i = 0; i < std::llabs(l.exp); ++i) c.push_back(code);
  }
  return c;
}

Word RewriteSystem::decode(const Code& c) const {
  std::vector<Letter> letters;
  letters.reserve(c.size());
  for (int code : c) {
    letters.push_back({ranking_.lightest_first[static_cast<std::size_t>(code / 2)],
                       (code & 1) ? -1 : 1});
  }
  return Word::from_letters(letters);
}

bool RewriteSystem::less(const Code& a, const Code& b) const { return wreath_less(a, b); }

RewriteSystem::Code RewriteSystem::reduce(Code w, std::size_t step_budget) const {
  // Stack machine: move letters from the input to the output, rewriting any
  // rule lhs that appears as a suffix of the output.
  Code out;
  out.reserve(w.size());
  std::reverse(w.begin(), w.end());  // w is now a stack of pending input
  std::size_t steps = 0;
  while (!w.empty()) {
    const int c = w.back();
    w.pop_back();
    if (!out.empty() && (out.back() ^ 1) == c) {
      out.pop_back();
      continue;
    }
    out.push_back(c);
    for (std::size_t idx : by_last_[static_cast<std::size_t>(c)]) {
      const Code& lhs = coded_[idx].first;
      if (lhs.size() > out.size()) continue;
      if (!std::equal(lhs.begin(), lhs.end(), out.end() - static_cast<std::ptrdiff_t>(lhs.size()))) {
        continue;
      }
      if (++steps > step_budget) {
        throw ResourceExhausted("rewrite step budget exceeded");
      }
      out.resize(out.size() - lhs.size());
      const Code& rhs = coded_[idx].second;
      for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) w.push_back(*it);
      // Re-examine the tail of the output against the new input.
      break;
    }
  }
  return out;
}

void RewriteSystem::set_rules(std::vector<std::pair<Code, Code>> rules) {
  coded_ = std::move(rules);
  by_last_.assign(2 * ranking_.lightest_first.size(), {});
  rules_.clear();
  for (std::size_t i = 0; i < coded_.size(); ++i) {
    by_last_[static_cast<std::size_t>(coded_[i].first.back())].push_back(i);
    rules_.push_back({decode(coded_[i].first), decode(coded_[i].second)});
  }
}

Word RewriteSystem::normalize(const Word& w, std::size_t step_budget) const {
  return decode(reduce(encode(w), step_budget));
}

bool RewriteSystem::equal(const Word& a, const Word& b) const {
  if (!complete()) {
    throw Unsupported(std::string("rewrite system is not complete (") + to_string(status_) + ")");
  }
  return reduce(encode(a), 1'000'000) == reduce(encode(b), 1'000'000);
}

Ordering RewriteSystem::compare(const Word& a, const Word& b) const {
  const Code ca = encode(a), cb = encode(b);
  if (ca == cb) return Ordering::Equal;
  return less(ca, cb) ? Ordering::Less : Ordering::Greater;
}

namespace {

// Critical pairs of the rule set, including overlaps with x x^-1 -> 1.
template <typename Visit>
void for_each_critical_pair(const std::vector<std::pair<Code, Code>>& rules, Visit&& visit) {
  for (const auto& [l1, r1] : rules) {
    for (const auto& [l2, r2] : rules) {
      const std::size_t max_k = std::min(l1.size(), l2.size());
      for (std::size_t k = 1; k < max_k + 1; ++k) {
        if (k == l1.size() && k == l2.size()) continue;  // identical lhs handled by inclusion
        if (k >= l2.size() || k >= l1.size()) continue;
        if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(k), l1.end(), l2.begin())) continue;
        Code a = r1;
        a.insert(a.end(), l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
        Code b(l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(k));
        b.insert(b.end(), r2.begin(), r2.end());
        visit(std::move(a), std::move(b));
      }
      if (&l1 != &l2 && l2.size() <= l1.size()) {
        for (std::size_t s = 0; s + l2.size() <= l1.size(); ++s) {
          if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<std::ptrdiff_t>(s))) continue;
          Code b(l1.begin(), l1.begin() + static_cast<std::ptrdiff_t>(s));
          b.insert(b.end(), r2.begin(), r2.end());
          b.insert(b.end(), l1.begin() + static_cast<std::ptrdiff_t>(s + l2.size()), l1.end());
          visit(Code(r1), std::move(b));
        }
      }
    }
    // Free cancellation overlaps: l·c^-1 where l ends with c, c^-1·l where l starts with c.
    {
      Code a = r1;
      a.push_back(l1.back() ^ 1);
      visit(std::move(a), Code(l1.begin(), l1.end() - 1));
    }
    {
      Code a{l1.front() ^ 1};
      a.insert(a.end(), r1.begin(), r1.end());
      visit(std::move(a), Code(l1.begin() + 1, l1.end()));
    }
  }
}

}  // namespace

RewriteSystem complete(const PresState& pres, const CompletionOptions& options,
                       std::optional<GeneratorRanking> ranking) {
  pres.validate();
  RewriteSystem rs;
  rs.pres_ = pres;
  if (ranking) {
    rs.ranking_ = *ranking;
  } else {
    bool chain_like = true;
    for (std::size_t i = 0; i < pres.names.size(); ++i) {
      if (pres.names[i] != "g(" + std::to_string(pres.generators[i]) + ")") chain_like = false;
    }
    rs.ranking_ = chain_like ? center_out_ranking(pres) : listed_ranking(pres);
  }
  for (std::size_t i = 0; i < rs.ranking_.lightest_first.size(); ++i) {
    rs.rank_of_[rs.ranking_.lightest_first[i]] = static_cast<int>(i);
  }
  rs.set_rules({});

  std::deque<std::pair<Code, Code>> pending;
  for (const Word& r : pres.relators) pending.emplace_back(rs.encode(r), Code{});

  const std::size_t reduce_budget = 10'000'000;
  auto fail = [&](CompletionStatus status) {
    rs.status_ = status;
    return rs;
  };

  while (true) {
    while (!pending.empty()) {
      auto [a, b] = std::move(pending.front());
      pending.pop_front();
      a = rs.reduce(std::move(a), reduce_budget);
      b = rs.reduce(std::move(b), reduce_budget);
      if (a == b) continue;
      if (rs.less(a, b)) std::swap(a, b);
      // a -> b is the new rule. Existing rules whose lhs it reduces go back to
      // the queue; right-hand sides are re-normalized below.
      std::vector<std::pair<Code, Code>> kept;
      std::vector<std::pair<Code, Code>> next{{a, b}};
      RewriteSystem probe = rs;
      probe.set_rules(next);
      for (auto& rule : rs.coded_) {
        if (probe.reduce(rule.first, reduce_budget) != rule.first) {
          pending.push_back(std::move(rule));
        } else {
          kept.push_back(std::move(rule));
        }
      }
      kept.push_back({std::move(a), std::move(b)});
      rs.set_rules(std::move(kept));
      std::vector<std::pair<Code, Code>> rhs_reduced = rs.coded_;
      for (auto& rule : rhs_reduced) rule.second = rs.reduce(rule.second, reduce_budget);
      rs.set_rules(std::move(rhs_reduced));

      if (rs.coded_.size() > options.max_rules) return fail(CompletionStatus::RuleBudgetExceeded);
      for (const auto& rule : rs.coded_) {
        if (rule.first.size() > options.max_len) return fail(CompletionStatus::LengthBudgetExceeded);
      }
    }
    bool any = false;
    for_each_critical_pair(rs.coded_, [&](Code x, Code y) {
      x = rs.reduce(std::move(x), reduce_budget);
      y = rs.reduce(std::move(y), reduce_budget);
      if (x != y) {
        pending.emplace_back(std::move(x), std::move(y));
        any = true;
      }
    });
    if (!any) break;
  }
  // Deterministic presentation of the final rule set.
  std::vector<std::pair<Code, Code>> sorted = rs.coded_;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return shortlex_less_codes(x.first, y.first);
  });
  rs.set_rules(std::move(sorted));
  rs.status_ = CompletionStatus::Complete;
  return rs;
}

ConfluenceReport check_confluence(const RewriteSystem& rs) {
  ConfluenceReport report;
  for_each_critical_pair(rs.coded_rules(), [&](Code x, Code y) {
    ++report.pairs_checked;
    if (rs.reduce(std::move(x), 10'000'000) != rs.reduce(std::move(y), 10'000'000)) {
      ++report.unjoinable;
    }
  });
  return report;
}

// ---------------------------------------------------------------------------
// naive_equal

NaiveVerdict naive_equal(const PresState& pres, const Word& a, const Word& b, std::size_t budget) {
  // Unit letters coded as 2*index + inverse.
  std::map<int, int> index;
  for (std::size_t i = 0; i < pres.generators.size(); ++i) {
    index[pres.generators[i]] = static_cast<int>(i);
  }
  auto encode = [&](const Word& w) {
    Code c;
    for (auto [g, s] : unit_letters(w)) {
      auto it = index.find(g);
      if (it == index.end()) throw InputError("word uses a generator outside the presentation");
      c.push_back(2 * it->second + (s < 0 ? 1 : 0));
    }
    return c;
  };
  auto free_red = [](const Code& w) {
    Code out;
    for (int c : w) {
      if (!out.empty() && (out.back() ^ 1) == c) {
        out.pop_back();
      } else {
        out.push_back(c);
      }
    }
    return out;
  };
  auto inverse = [](const Code& w) {
    Code out(w.rbegin(), w.rend());
    for (int& c : out) c ^= 1;
    return out;
  };

  // Pieces (u, v^-1) with u v a cyclic rotation of a relator or its inverse.
  std::set<std::pair<Code, Code>> moves;
  for (const Word& r : pres.relators) {
    for (const Code& rel : {encode(r), inverse(encode(r))}) {
      const std::size_t n = rel.size();
      for (std::size_t rot = 0; rot < n; ++rot) {
        Code rho(rel.begin() + static_cast<std::ptrdiff_t>(rot), rel.end());
        rho.insert(rho.end(), rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(rot));
        for (std::size_t s = 0; s <= n; ++s) {
          Code u(rho.begin(), rho.begin() + static_cast<std::ptrdiff_t>(s));
          Code v(rho.begin() + static_cast<std::ptrdiff_t>(s), rho.end());
          moves.emplace(std::move(u), inverse(v));
        }
      }
    }
  }

  const Code start = free_red(encode(mul(a, invert(b))));
  if (start.empty()) return NaiveVerdict::Equal;
  auto cmp = [](const Code& x, const Code& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x > y;
  };
  std::priority_queue<Code, std::vector<Code>, decltype(cmp)> frontier(cmp);
  std::set<Code> seen{start};
  frontier.push(start);
  std::size_t expanded = 0;
  while (!frontier.empty() && expanded < budget) {
    Code w = frontier.top();
    frontier.pop();
    ++expanded;
    for (const auto& [u, vinv] : moves) {
      if (u.size() > w.size()) continue;
      for (std::size_t pos = 0; pos + u.size() <= w.size(); ++pos) {
        if (!std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
        Code next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        next.insert(next.end(), vinv.begin(), vinv.end());
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + u.size()), w.end());
        next = free_red(next);
        if (next.empty()) return NaiveVerdict::Equal;
        if (seen.insert(next).second) frontier.push(std::move(next));
      }
    }
  }
  return NaiveVerdict::Unknown;
}

}  // namespace ordlim::rewriting
