#include <algorithm>
#include <random>

#include "doctest.h"
#include "ordlim/chaingroup.hpp"
#include "ordlim/cone.hpp"
#include "ordlim/errors.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/rewriting.hpp"
#include "support.hpp"

using namespace ordlim;
using namespace ordlim::cone;

namespace {

const ChainSpec c23 = ChainSpec::constant(2, 3);
const ChainSpec c22 = ChainSpec::constant(2, 2);
constexpr std::size_t kBudget = 20000;

Word a(const ChainSpec& spec, int i, int m) { return cone_generator(spec, {i, m}); }

}  // namespace

TEST_CASE("enumeration examples") {
  const auto p0 = enumerate_cone(c23, 0, 10);
  REQUIRE(p0.size() == 10);
  for (std::size_t i = 0; i < p0.size(); ++i) CHECK(p0[i].nf == Word::gen(0, static_cast<std::int64_t>(i + 1)));

  const rewriting::TreeNormalizer tn = rewriting::TreeNormalizer::for_chain(c23);
  const auto p1 = enumerate_cone(c23, 1, 3000);
  const Word a11sq = tn.normalize(mul(a(c23, 1, 1), a(c23, 1, 1)));
  auto hit = std::find_if(p1.begin(), p1.end(), [&](const ConeEntry& e) { return e.nf == a11sq; });
  REQUIRE(hit != p1.end());
  CHECK(hit->certificate.factors == std::vector<ConeGenId>{{1, 1}, {1, 1}});

  const Word g1sq = tn.normalize(Word::gen(1, 2));
  hit = std::find_if(p1.begin(), p1.end(), [&](const ConeEntry& e) { return e.nf == g1sq; });
  REQUIRE(hit != p1.end());
  CHECK(hit - p1.begin() == 2577);
  CHECK(hit->certificate.factors.size() == 8);
  CHECK(tn.equal(certificate_word(c23, hit->certificate), g1sq));
  CHECK(tn.equal(mul(invert(a(c23, 1, 1)), a(c23, 0, 1)), g1sq));

  // nondecreasing factor count
  for (std::size_t i = 1; i < p1.size(); ++i) {
    CHECK(p1[i - 1].certificate.factors.size() <= p1[i].certificate.factors.size());
  }
}

TEST_CASE("sign examples") {
  const SignResult r0 = sign(c23, Element::of(Word::gen(0)), kBudget);
  CHECK(r0.value == Sign::Positive);
  REQUIRE(r0.certificate);
  CHECK(r0.certificate->factors == std::vector<ConeGenId>{{0, 0}});
  CHECK(sign(c23, Element::of(Word{}), kBudget).value == Sign::Zero);
  CHECK(sign_at(c23, Word::gen(-1), 1, kBudget).value == Sign::Positive);
  CHECK(sign_at(c23, Word{{0, 2}, {1, -3}}, 1, kBudget).value == Sign::Zero);

  const SignResult r = sign(c23, Element::of(Word{{-1, -1}, {0, 1}}), kBudget);
  CHECK(r.value == Sign::Positive);
  REQUIRE(r.certificate);
  CHECK(r.certificate->factors == std::vector<ConeGenId>{{0, 1}});
}

TEST_CASE("compare examples") {
  auto cmp = [](const Word& x, const Word& y) {
    return compare(c23, Element::of(x), Element::of(y), kBudget).order;
  };
  CHECK(cmp(a(c23, 1, 1), a(c23, 0, 1)) == Ordering::Less);
  CHECK(cmp(Word::gen(-1), Word::gen(0)) == Ordering::Less);
  CHECK(cmp(Word::gen(0), Word::gen(-1)) == Ordering::Greater);
  const Word w{{0, 1}, {1, -2}, {-1, 1}};
  CHECK(cmp(w, w) == Ordering::Equal);
}

TEST_CASE("conjugate sign examples") {
  const Element e = Element::of(a(c23, 1, 1));
  CHECK(conjugate_sign(c23, Element::of(Word{}), e, kBudget).value == sign(c23, e, kBudget).value);
  CHECK(conjugate_sign(c23, Element::of(Word::gen(0)), Element::of(Word::gen(0, 3)), kBudget).value ==
        Sign::Positive);
  const SignResult r = conjugate_sign(c23, Element::of(Word::gen(1)), e, kBudget);
  CHECK(r.value == Sign::Negative);
  CHECK(validate(c23, mul({Word::gen(1, -1), a(c23, 1, 1), Word::gen(1)}), r));
}

TEST_CASE("sign rejects unsupported specs") {
  CHECK_THROWS_AS(sign(ChainSpec::free_product(), Element::of(Word::gen(0)), 10), Unsupported);
}

TEST_CASE("certificates validate and antisymmetry holds on balls") {
  for (const ChainSpec& spec : {c23, c22}) {
    for (int m = 0; m <= 1; ++m) {
      for (const Word& w : ball(-m, m, 4)) {
        const SignResult r = sign_at(spec, w, m, kBudget);
        const SignResult ri = sign_at(spec, invert(w), m, kBudget);
        CHECK(r.value != Sign::Unknown);
        CHECK(ri.value == negate(r.value));
        CHECK(validate(spec, w, r));
        CHECK(validate(spec, invert(w), ri));
      }
    }
  }
}

TEST_CASE("semigroup closure over the first 200 entries") {
  const rewriting::TreeNormalizer tn = rewriting::TreeNormalizer::for_chain(c23);
  for (int m = 0; m <= 1; ++m) {
    const auto entries = enumerate_cone(c23, m, 200);
    for (std::size_t i = 0; i < entries.size(); i += 7) {
      for (std::size_t j = 0; j < entries.size(); j += 5) {
        ConeCertificate cat = entries[i].certificate;
        cat.factors.insert(cat.factors.end(), entries[j].certificate.factors.begin(),
                           entries[j].certificate.factors.end());
        CHECK(tn.equal(certificate_word(c23, cat), mul(entries[i].nf, entries[j].nf)));
        const SignResult r = sign_at(c23, mul(entries[i].nf, entries[j].nf), m, kBudget);
        CHECK(r.value == Sign::Positive);
      }
    }
  }
}

TEST_CASE("left invariance is structural") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Word x = testsupport::random_word(rng, -1, 1, 3, 2);
    const Word y = testsupport::random_word(rng, -1, 1, 3, 2);
    const Word g = testsupport::random_word(rng, -1, 1, 3, 2);
    CHECK(mul(invert(mul(g, x)), mul(g, y)) == mul(invert(x), y));
    const auto c1 = compare(c23, Element::of(x), Element::of(y), kBudget);
    const auto c2 = compare(c23, Element::of(mul(g, x)), Element::of(mul(g, y)), kBudget);
    CHECK(c1.order == c2.order);
  }
}

TEST_CASE("locality: window m and m+1 agree") {
  for (int m = 0; m <= 1; ++m) {
    for (const Word& w : ball(-m, m, 5)) {
      const SignResult r1 = sign_at(c23, w, m, kBudget);
      const SignResult r2 = sign_at(c23, w, m + 1, kBudget);
      if (r1.value == Sign::Unknown || r2.value == Sign::Unknown) continue;
      CHECK(r1.value == r2.value);
    }
  }
}

TEST_CASE("shift compatibility of cone generators") {
  for (const ChainSpec& spec : {c23, c22}) {
    for (int m = 0; m <= 2; ++m) {
      for (int i = -m; i <= m; ++i) {
        for (int d : {-1, 1}) {
          const Element e = shift(spec, Element::of(a(spec, i, m)), d);
          const SignResult r = sign(spec, e, kBudget);
          CHECK(r.value == Sign::Positive);
          CHECK(validate(spec, e.word, r));
        }
      }
    }
  }
}

TEST_CASE("serial and parallel batches agree") {
  const auto words = ball(-1, 1, 4);
  const auto s = sign_batch(c23, words, 1, kBudget, Exec::Serial);
  const auto p = sign_batch(c23, words, 1, kBudget, Exec::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].value == p[i].value);
    CHECK(s[i].certificate.has_value() == p[i].certificate.has_value());
    if (s[i].certificate) CHECK(s[i].certificate->factors == p[i].certificate->factors);
  }
}

TEST_CASE("plain enumeration agrees with the combined strategy") {
  for (const Word& w : ball(-1, 1, 3)) {
    const SignResult c = sign_at(c22, w, 1, kBudget);
    const SignResult e = sign_at(c22, w, 1, kBudget, Strategy::EnumerationOnly);
    if (e.value == Sign::Unknown) continue;
    CHECK(c.value == e.value);
    CHECK(validate(c22, w, e));
  }
}

TEST_CASE("generator quotients") {
  for (const ChainSpec& spec : {c23, c22, ChainSpec::periodic({{2, 3}, {3, 2}})}) {
    const rewriting::TreeNormalizer tn = rewriting::TreeNormalizer::for_chain(spec);
    for (int m = 1; m <= 2; ++m) {
      for (int i = -m; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
          const auto q = generator_quotient(spec, i, j, m);
          REQUIRE(q);
          CHECK(tn.equal(certificate_word(spec, *q), mul(invert(a(spec, j, m)), a(spec, i, m))));
        }
      }
    }
  }
  CHECK_THROWS_AS(generator_quotient(c23, 1, 0, 1), InputError);
}

TEST_CASE("tower cone") {
  const ChainSpec t2 = ChainSpec::cyclic_tower(2);
  CHECK(sign(t2, Element::of(Word::gen(3)), kBudget).value == Sign::Positive);
  CHECK(sign(t2, Element::of(Word{{0, 1}, {1, -3}}), kBudget).value == Sign::Negative);
  CHECK(sign(t2, Element::of(Word{{0, 1}, {1, -2}}), kBudget).value == Sign::Zero);
}
