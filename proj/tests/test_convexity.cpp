#include <algorithm>

#include "doctest.h"
#include "ordlim/convexity.hpp"
#include "ordlim/errors.hpp"
#include "ordlim/grammar.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/rewriting.hpp"

using namespace ordlim;
using namespace ordlim::convexity;
using probes::Verdict;

namespace {

const ChainSpec c23 = ChainSpec::constant(2, 3);
const ChainSpec c22 = ChainSpec::constant(2, 2);

bool contains(const std::vector<Word>& v, const Word& w) { return std::find(v.begin(), v.end(), w) != v.end(); }

std::vector<Rule> rules(const DeductionTrace& t) {
  std::vector<Rule> out;
  for (const Step& s : t.steps) out.push_back(s.rule);
  return out;
}

}  // namespace

TEST_CASE("gamma ball of the whole cyclic window") {
  const rewriting::TreeNormalizer tn = rewriting::TreeNormalizer::for_chain(c23);
  for (int r = 1; r <= 4; ++r) {
    const ConvexApprox g = gamma_ball(c23, {Word::gen(0)}, 0, r, 100000);
    CHECK(g.members.size() == static_cast<std::size_t>(2 * r + 1));
    for (int j = -r; j <= r; ++j) CHECK(contains(g.members, tn.normalize(Word::gen(0, j))));
  }
}

TEST_CASE("gamma ball of the minimal element holds only its powers") {
  const rewriting::TreeNormalizer tn = rewriting::TreeNormalizer::for_chain(c23);
  const Word a11 = cone_generator(c23, {1, 1});
  const ConvexApprox g = gamma_ball(c23, {a11}, 1, 6, 100000);
  CHECK_FALSE(g.truncated);
  CHECK(g.members.size() == 5);
  for (int j = -2; j <= 2; ++j) CHECK(contains(g.members, tn.normalize(power(a11, j))));
}

TEST_CASE("gamma ball takes roots") {
  const ConvexApprox g = gamma_ball(c23, {Word::gen(0, 3)}, 1, 6, 100000);
  CHECK(contains(g.members, Word::gen(0)));
  CHECK(replay(c23, {Word::gen(0, 3)}, g.trace).valid);
}

TEST_CASE("gamma ball is monotone in the radius") {
  for (const std::vector<Word>& seed : {std::vector<Word>{Word::gen(0, 2)}, std::vector<Word>{Word::gen(1, 3)}}) {
    std::vector<Word> prev;
    for (int r = 1; r <= 5; ++r) {
      const ConvexApprox g = gamma_ball(c23, seed, 1, r, 100000);
      for (const Word& w : prev) CHECK(contains(g.members, w));
      prev = g.members;
    }
  }
}

TEST_CASE("gamma ball members are derivable") {
  const std::vector<Word> seed{Word::gen(0, 3)};
  const ConvexApprox g = gamma_ball(c23, seed, 1, 4, 100000);
  std::vector<Word> targets;
  for (const Word& w : g.members) {
    if (!w.empty()) targets.push_back(w);
  }
  DeduceOptions o;
  o.max_window = 1;
  const Deduction d = deduce_containment(c23, seed, targets, o);
  CHECK(d.complete);
  CHECK(replay(c23, seed, d.trace).valid);
}

TEST_CASE("deduction climbs one level") {
  for (const ChainSpec& spec : {c23, c22}) {
    for (int m = 0; m <= 2; ++m) {
      const std::vector<Word> seed{Word::gen(m, spec.at(m + 1).k)};
      const Deduction d = deduce_containment(spec, seed, {Word::gen(m + 1)});
      REQUIRE(d.complete);
      CHECK(replay(spec, seed, d.trace).valid);
      const auto rs = rules(d.trace);
      CHECK(std::count(rs.begin(), rs.end(), Rule::Root) >= 1);
      CHECK(std::count(rs.begin(), rs.end(), Rule::RelationRewrite) >= 1);
      REQUIRE(d.target_steps[0]);
      CHECK(d.trace.steps[*d.target_steps[0]].conclusion == Word::gen(m + 1));
    }
  }
}

TEST_CASE("deduction with the targets in the seed is empty") {
  const Deduction d = deduce_containment(c23, {Word::gen(0), Word::gen(1)}, {Word::gen(1)});
  CHECK(d.complete);
  CHECK(d.trace.steps.empty());
  CHECK_FALSE(d.target_steps[0]);
}

TEST_CASE("deduction from the minimal element reaches the next level") {
  for (int m = 0; m <= 2; ++m) {
    const std::vector<Word> seed{cone_generator(c23, {m, m})};
    DeduceOptions o;
    o.max_window = m + 1;
    const Deduction d = deduce_containment(c23, seed, {Word::gen(m + 1)}, o);
    REQUIRE(d.complete);
    CHECK(replay(c23, seed, d.trace).valid);
    const auto rs = rules(d.trace);
    if (m >= 1) CHECK(std::count(rs.begin(), rs.end(), Rule::Sandwich) >= 1);
  }
}

TEST_CASE("replay rejects a tampered trace") {
  const std::vector<Word> seed{Word::gen(0, 2)};
  const Deduction d = deduce_containment(c23, seed, {Word::gen(1)});
  REQUIRE(d.complete);
  REQUIRE_FALSE(d.trace.steps.empty());
  DeductionTrace bad = d.trace;
  bad.steps.back().conclusion = Word::gen(2);
  CHECK_FALSE(replay(c23, seed, bad).valid);
  DeductionTrace forward = d.trace;
  forward.steps.front().premises.push_back(forward.steps.size());
  CHECK_FALSE(replay(c23, seed, forward).valid);
}

TEST_CASE("conditions replay") {
  for (int m = 0; m <= 3; ++m) {
    CHECK(replay_conditions(c23, m).overall() == Verdict::Pass);
    CHECK(replay_conditions(c22, m).overall() == Verdict::Pass);
  }
  CHECK_THROWS_AS(replay_conditions(ChainSpec::cyclic_tower(2), 1), InputError);
}

TEST_CASE("conradian soul evidence") {
  const probes::ProbeReport r = conradian_soul_evidence(c23, 3, 3);
  CHECK(r.overall() == Verdict::Pass);
  REQUIRE(r.checks.size() == 2);
  const probes::Check& a = r.checks[0];
  CHECK(a.name == "(a) non-abelian");
  REQUIRE(a.evidence.size() == 1);
  CHECK(format_word(a.evidence[0].word) == "g(0)^-1 g(1)^-1 g(0) g(1)");

  const probes::ProbeReport t = conradian_soul_evidence(ChainSpec::cyclic_tower(2), 2, 2);
  REQUIRE(t.checks.size() == 1);
  CHECK(t.checks[0].verdict == Verdict::Fail);
  CHECK_FALSE(t.note.empty());
}
