#include <random>

#include "doctest.h"
#include "ordlim/errors.hpp"
#include "ordlim/grammar.hpp"
#include "ordlim/ito.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/probes.hpp"
#include "support.hpp"

using namespace ordlim;
using namespace ordlim::probes;
using cone::Sign;

namespace {

const ChainSpec c23 = ChainSpec::constant(2, 3);
const ChainSpec c22 = ChainSpec::constant(2, 2);
const ChainSpec c32 = ChainSpec::constant(3, 2);
constexpr std::size_t kBudget = 20000;

Word a(int i, int m) { return cone_generator(c23, {i, m}); }

bool all_pass(const ProbeReport& r) {
  for (const Check& c : r.checks) {
    if (c.verdict != Verdict::Pass) return false;
  }
  return !r.checks.empty();
}

}  // namespace

TEST_CASE("dehornoy props") {
  CHECK(all_pass(verify_dehornoy_props(c23, 1, kBudget)));
  CHECK(all_pass(verify_dehornoy_props(c22, 2, kBudget)));
  const ProbeReport r0 = verify_dehornoy_props(c23, 0, kBudget);
  CHECK(r0.overall() == Verdict::Pass);
  for (const ChainSpec& spec : {c23, c32, c22}) {
    for (int m = 0; m <= 2; ++m) {
      const ProbeReport r = verify_dehornoy_props(spec, m, kBudget);
      CHECK(r.overall() == Verdict::Pass);
      for (const Check& c : r.checks) {
        for (const Evidence& e : c.evidence) {
          if (e.sign && e.sign->value != Sign::Zero) CHECK_FALSE(e.sign->certificate.empty());
        }
      }
    }
  }
  CHECK_THROWS_AS(verify_dehornoy_props(ChainSpec::cyclic_tower(2), 1, kBudget), Unsupported);
  CHECK_THROWS_AS(verify_dehornoy_props(c23, -1, kBudget), InputError);
}

TEST_CASE("props report is sorted by name") {
  const ProbeReport r = verify_dehornoy_props(c23, 2, kBudget);
  for (std::size_t i = 1; i < r.checks.size(); ++i) CHECK(r.checks[i - 1].name <= r.checks[i].name);
}

TEST_CASE("minimal positive element") {
  CHECK(minimal_positive_probe(c23, 0, 6, kBudget).overall() == Verdict::Pass);
  const ProbeReport r1 = minimal_positive_probe(c23, 1, 6, kBudget);
  CHECK(r1.overall() == Verdict::Pass);
  CHECK(r1.checks.size() == 2);
  CHECK(minimal_positive_probe(c22, 1, 5, kBudget).overall() == Verdict::Pass);
  CHECK_THROWS_AS(minimal_positive_probe(c23, 1, 0, kBudget), InputError);
}

TEST_CASE("density") {
  const ProbeReport r = density_probe(c23, 2, kBudget);
  CHECK(all_pass(r));
  CHECK(r.checks.size() == 2);
  CHECK(all_pass(density_probe(c22, 1, kBudget)));
  CHECK(density_probe(c23, 0, kBudget).overall() == Verdict::Pass);
}

TEST_CASE("conradian probe") {
  const ChainSpec t2 = ChainSpec::cyclic_tower(2);
  const Signer tower = chain_signer(t2, kBudget);
  const ProbeReport rt = conradian_probe(tower, {{Word::gen(0), Word::gen(2)}, {Word::gen(3), Word::gen(-1)}}, 5);
  CHECK(all_pass(rt));
  for (const Check& c : rt.checks) CHECK(c.note == "n = 1");

  const Signer s = chain_signer(c23, kBudget);
  const ProbeReport rp = conradian_probe(s, {{Word::gen(0), Word::gen(0, 2)}, {Word::gen(0, 3), Word::gen(0)}}, 5);
  for (const Check& c : rp.checks) CHECK(c.note == "n = 1");

  const ProbeReport rn = conradian_probe(s, {{parse_word("g(-1) g(0)^-1"), parse_word("g(-1)^-1 g(0)")}}, 20);
  REQUIRE(rn.checks.size() == 1);
  CHECK(rn.checks[0].verdict == Verdict::Inconclusive);

  CHECK_THROWS_AS(conradian_probe(s, {{Word::gen(0, -1), Word::gen(0)}}, 3), InputError);
}

TEST_CASE("cofinal probe") {
  const Signer s = chain_signer(c23, kBudget);
  const ProbeReport r = cofinal_probe(s, Word::gen(0), {Word::gen(0, 2), Word::gen(0, -3), Word::gen(0, 5)}, 10);
  REQUIRE(r.checks.size() == 3);
  CHECK(r.checks[0].note == "M = 3");
  CHECK(r.checks[1].note == "M = 4");
  CHECK(r.checks[2].note == "M = 6");

  const ito::OrderedGroupHandle t = ito::make_torus_handle(2, 3);
  const Word x = Word::gen(0), y = Word::gen(1);
  CHECK(all_pass(cofinal_probe(t.signer(), t.central(), {x, mul(invert(x), y)}, 10)));

  CHECK_THROWS_AS(cofinal_probe(s, Word{}, {Word::gen(0)}, 3), InputError);
}

TEST_CASE("right invariance probe") {
  const ChainSpec t2 = ChainSpec::cyclic_tower(2);
  CHECK(all_pass(right_invariance_probe(chain_signer(t2, kBudget), Word::gen(1),
                                        {{Word::gen(0), Word::gen(2)}, {Word::gen(3, -1), Word::gen(-1)}})));
  const ito::OrderedGroupHandle t = ito::make_torus_handle(2, 3);
  const auto pairs = ito::sample_pairs(t, 12);
  CHECK(all_pass(right_invariance_probe(t.signer(), t.central(), pairs)));
  // y is not central in the trefoil group; the verdicts are recorded as found
  const ProbeReport ry = right_invariance_probe(t.signer(), Word::gen(1), pairs);
  CHECK(ry.checks.size() == pairs.size());
  CHECK(ry.overall() == Verdict::Fail);
}

TEST_CASE("rational evaluation of the tower") {
  const ChainSpec t2 = ChainSpec::cyclic_tower(2);
  CHECK(zl_evaluate(t2, Word::gen(0)) == Rational::make(1, 1));
  CHECK(zl_evaluate(t2, Word::gen(1, 2)) == Rational::make(1, 1));
  CHECK(zl_evaluate(t2, Word{{2, 1}, {0, -1}}) == Rational::make(-3, 4));
  CHECK(zl_evaluate(t2, Word{{2, 1}, {0, -1}}).str() == "-3/4");
  CHECK_THROWS_AS(zl_evaluate(c23, Word::gen(0)), InputError);

  std::mt19937_64 rng(5);
  for (std::int64_t l : {2, 3}) {
    const ChainSpec t = ChainSpec::cyclic_tower(l);
    for (int trial = 0; trial < 100; ++trial) {
      const Word u = testsupport::random_word(rng, -3, 3, 4);
      const Word v = testsupport::random_word(rng, -3, 3, 4);
      CHECK(zl_evaluate(t, mul(u, v)) == zl_evaluate(t, u) + zl_evaluate(t, v));
      CHECK(zl_evaluate(t, invert(u)) == -zl_evaluate(t, u));
      // the tower's cone agrees with the evaluation and with the HNN restriction
      const Sign ev = tower_sign(t, u, TowerOrder::StandardUp);
      const HnnSign h = hnn_sign(t, {Element::of(u), 0}, HnnVariant::TPositive, kBudget);
      CHECK(h.value == ev);
      CHECK(tower_sign(t, u, TowerOrder::StandardDown) == cone::negate(ev));
    }
  }
}

TEST_CASE("hnn orderings") {
  const HnnElement t{Element::of(Word{}), 1};
  CHECK(hnn_sign(c23, t, HnnVariant::TPositive, kBudget).value == Sign::Positive);
  CHECK(hnn_sign(c23, t, HnnVariant::TNegative, kBudget).value == Sign::Negative);
  for (HnnVariant v : {HnnVariant::TPositive, HnnVariant::TNegative}) {
    const HnnSign h = hnn_sign(c23, {Element::of(Word::gen(0)), 0}, v, kBudget);
    CHECK(h.value == Sign::Positive);
    CHECK(h.basis == "cone");
  }
  CHECK_THROWS_AS(hnn_sign(ChainSpec::table({{0, {2, 3}}}, {2, 2}), t, HnnVariant::TPositive, kBudget), Unsupported);
}

TEST_CASE("hnn trichotomy and convexity of the base") {
  std::vector<HnnElement> pool;
  const auto words = ball(-1, 1, 2);
  for (std::int64_t te = -3; te <= 3 && pool.size() < 200; ++te) {
    for (const Word& w : words) {
      if (pool.size() >= 200) break;
      pool.push_back({Element::of(w), te});
    }
  }
  REQUIRE(pool.size() == 200);
  for (HnnVariant v : {HnnVariant::TPositive, HnnVariant::TNegative}) {
    for (const HnnElement& x : pool) {
      const HnnSign s = hnn_sign(c23, x, v, kBudget);
      const HnnSign si = hnn_sign(c23, hnn_inverse(c23, x), v, kBudget);
      REQUIRE(s.value != Sign::Unknown);
      CHECK(si.value == cone::negate(s.value));
      if (x.t_exp != 0 && s.value == Sign::Positive) {
        // a positive element outside the base exceeds every base element
        for (const Word& g : words) {
          const HnnSign d = hnn_sign(c23, hnn_mul(c23, {Element::of(invert(g)), 0}, x), v, kBudget);
          CHECK(d.value == Sign::Positive);
        }
      }
    }
  }
}

TEST_CASE("witness search") {
  const std::vector<Word> F{a(-1, 1), a(0, 1), a(1, 1)};
  const WitnessResult w = nonisolation_witness(c23, F, {});
  REQUIRE(w.found);
  CHECK(format_word(w.conjugator) == "g(-2)");
  CHECK(format_word(w.discriminator) == "g(-2) g(-1)^-1");
  CHECK(w.conjugators_tried == 1);
  CHECK(w.discriminators_tried == 13);
  CHECK(verify_witness(c23, w, kBudget));
  CHECK(w.disc_sign.value != w.disc_conjugate_sign.value);
  for (const auto& [s, cs] : w.agreement_signs) {
    CHECK(s.value == Sign::Positive);
    CHECK(cs.value == Sign::Positive);
  }

  WitnessOptions narrow;
  narrow.conj_window = 1;
  narrow.disc_window = 1;
  narrow.conj_radius = 3;
  narrow.disc_radius = 3;
  CHECK_FALSE(nonisolation_witness(c23, F, narrow).found);

  CHECK_FALSE(nonisolation_witness(ChainSpec::cyclic_tower(2), {Word::gen(0)}, {}).found);
  CHECK_THROWS_AS(nonisolation_witness(c23, {Word::gen(0, -1)}, {}), InputError);

  const WitnessResult e = nonisolation_witness(c23, {}, {});
  REQUIRE(e.found);
  CHECK_FALSE(e.conjugator.empty());
}
