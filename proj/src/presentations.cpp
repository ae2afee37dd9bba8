#include "ordlim/presentations.hpp"

#include <algorithm>
#include <numeric>

#include "ordlim/errors.hpp"

namespace ordlim {

bool PresState::has_generator(int id) const {
  return std::find(generators.begin(), generators.end(), id) != generators.end();
}

const std::string& PresState::name_of(int id) const {
  auto it = std::find(generators.begin(), generators.end(), id);
  if (it == generators.end()) throw InputError("unknown generator id " + std::to_string(id));
  return names[static_cast<std::size_t>(it - generators.begin())];
}

void PresState::validate() const {
  if (generators.size() != names.size()) throw InputError("generator/name count mismatch");
  for (const Word& r : relators) {
    for (const Letter& l : r.letters()) {
      if (!has_generator(l.gen)) {
        throw InputError("relator mentions unlisted generator id " + std::to_string(l.gen));
      }
    }
  }
}

PresState chain_presentation(const ChainSpec& spec, int m) {
  if (m < 0) throw InputError("window m must be >= 0");
  PresState p;
  for (int n = -m; n <= m; ++n) {
    if (!spec.level_alive(n)) continue;
    p.generators.push_back(n);
    p.names.push_back("g(" + std::to_string(n) + ")");
  }
  if (!spec.has_edges()) return p;
  for (int j = -m + 1; j <= m; ++j) {
    if (!spec.level_alive(j - 1) || !spec.level_alive(j)) continue;
    const ExponentPair e = spec.at(j);
    p.relators.push_back(Word{{j - 1, e.k}, {j, -e.l}});
  }
  return p;
}

Word cone_generator(const ChainSpec& spec, ConeGenId id) {
  if (id.m < 0 || id.i < -id.m || id.i > id.m) {
    throw InputError("cone generator a(" + std::to_string(id.i) + "," + std::to_string(id.m) +
                     ") out of range");
  }
  if (!spec.has_dehornoy_cone() && !spec.is_tower()) {
    throw Unsupported("spec " + spec.key() + " carries no cone");
  }
  std::vector<Letter> letters;
  for (int j = -id.m; j < id.i; ++j) {
    letters.push_back({j, -(spec.at(j + 1).k - 1)});
  }
  letters.push_back({id.i, 1});
  return Word::from_letters(letters);
}

std::vector<ConeGenId> cone_generator_ids(int m) {
  std::vector<ConeGenId> ids;
  for (int i = -m; i <= m; ++i) ids.push_back({i, m});
  return ids;
}

bool TietzeTrace::has_exponent_one_relation() const {
  return std::llabs(final_relation.lhs_exp) == 1 || std::llabs(final_relation.rhs_exp) == 1;
}

namespace {

struct NamedGen {
  std::string name;
  Word expr;  // in terms of x (id 0) and y (id 1)
};

}  // namespace

TietzeTrace euclid_normalize(std::int64_t k, std::int64_t l) {
  if (k < 2 || l < 2) throw InputError("euclid_normalize needs k, l >= 2");
  TietzeTrace trace;
  trace.k = k;
  trace.l = l;
  const std::int64_t d = std::gcd(k, l);
  std::int64_t r1 = k / d;
  std::int64_t r2 = l / d;
  if (d > 1) trace.obstruction = GcdObstruction{d, r1, r2};

  // Relation big^p = small^q with p >= q.
  NamedGen x{"x", Word::gen(0)};
  NamedGen y{"y", Word::gen(1)};
  NamedGen big = x, small = y;
  std::int64_t p = r1, q = r2;
  if (r1 < r2) {
    trace.swapped = true;
    std::swap(big, small);
    std::swap(p, q);
  }

  int step_no = 0;
  while (q > 0 && p > q) {
    ++step_no;
    const std::int64_t t = p / q;
    const std::int64_t r = p % q;
    NamedGen introduced{small.name.substr(0, 1) + std::to_string(step_no),
                        mul(small.expr, power(big.expr, -t))};
    TietzeStep step;
    step.resolution = {p, t, q, r};
    step.substitution = {small.name, introduced.name, big.name, t, introduced.expr};
    trace.steps.push_back(std::move(step));
    // introduced^q = big^r
    NamedGen old_big = big;
    big = introduced;
    small = old_big;
    p = q;
    q = r;
  }
  trace.final_relation = {big.name, p, small.name, q};
  return trace;
}

AbelianReplay replay_abelian(const TietzeTrace& trace) {
  AbelianReplay out;
  // Abelian coordinates over the original basis (x, y).
  using Vec = std::pair<std::int64_t, std::int64_t>;
  auto coords = [](const Word& w) {
    Vec v{0, 0};
    for (const Letter& l : w.letters()) (l.gen == 0 ? v.first : v.second) += l.exp;
    return v;
  };

  std::int64_t r1 = trace.k, r2 = trace.l;
  if (trace.obstruction) {
    r1 = trace.obstruction->reduced_k;
    r2 = trace.obstruction->reduced_l;
  }
  const Vec relation{r1, -r2};

  // Current generators by name, as coordinate vectors.
  std::vector<std::pair<std::string, Vec>> current{{"x", {1, 0}}, {"y", {0, 1}}};
  auto find = [&](const std::string& name) -> std::pair<std::string, Vec>& {
    for (auto& c : current) {
      if (c.first == name) return c;
    }
    throw InputError("trace refers to unknown generator " + name);
  };

  for (const TietzeStep& step : trace.steps) {
    const Substitution& s = step.substitution;
    auto& replaced = find(s.replaced);
    const Vec other = find(s.other).second;
    const Vec def = coords(s.definition);
    const Vec expected{replaced.second.first - s.quotient * other.first,
                       replaced.second.second - s.quotient * other.second};
    if (def != expected) out.consistent = false;
    const Resolution& r = step.resolution;
    if (r.dividend != r.quotient * r.divisor + r.remainder || r.remainder < 0 ||
        r.remainder >= r.divisor) {
      out.consistent = false;
    }
    replaced = {s.introduced, def};
    // Basis change matrix has rows (current gens); unimodular iff |det| = 1.
    const std::int64_t det = current[0].second.first * current[1].second.second -
                             current[0].second.second * current[1].second.first;
    if (det != 1 && det != -1) out.steps_unimodular = false;
  }

  // Express the relation in the current basis: c0 * v0 + c1 * v1 = relation.
  const Vec v0 = current[0].second, v1 = current[1].second;
  const std::int64_t det = v0.first * v1.second - v0.second * v1.first;
  if (det != 1 && det != -1) {
    out.steps_unimodular = false;
    out.consistent = false;
    return out;
  }
  const std::int64_t c0 = (relation.first * v1.second - relation.second * v1.first) / det;
  const std::int64_t c1 = (v0.first * relation.second - v0.second * relation.first) / det;

  // Order the coefficients as (final lhs, final rhs).
  const auto& fr = trace.final_relation;
  std::int64_t a = 0, b = 0;
  if (current[0].first == fr.lhs && current[1].first == fr.rhs) {
    a = c0;
    b = c1;
  } else if (current[1].first == fr.lhs && current[0].first == fr.rhs) {
    a = c1;
    b = c0;
  } else {
    out.consistent = false;
  }
  out.final_a = a;
  out.final_b = b;
  // lhs^p = rhs^q corresponds to the vector (p, -q) up to sign.
  const bool matches = (a == fr.lhs_exp && b == -fr.rhs_exp) || (a == -fr.lhs_exp && b == fr.rhs_exp);
  if (!matches) out.consistent = false;
  out.generators_left = (std::llabs(a) == 1 || std::llabs(b) == 1) ? 1 : 2;
  return out;
}

}  // namespace ordlim
