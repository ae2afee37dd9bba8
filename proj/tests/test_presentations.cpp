#include <numeric>

#include "doctest.h"
#include "ordlim/errors.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/rewriting.hpp"

using namespace ordlim;
using rewriting::TreeNormalizer;

namespace {

// Division steps of the remainder sequence on (a, b); the trivial pair (1, 1)
// needs none.
int euclid_steps(std::int64_t a, std::int64_t b) {
  if (a < b) std::swap(a, b);
  if (b == 0 || a == b) return 0;
  return 1 + euclid_steps(b, a % b);
}

}  // namespace

TEST_CASE("chain presentations") {
  const auto c23 = ChainSpec::constant(2, 3);
  const PresState p0 = chain_presentation(c23, 0);
  CHECK(p0.generators == std::vector<int>{0});
  CHECK(p0.relators.empty());

  const PresState p1 = chain_presentation(c23, 1);
  CHECK(p1.generators == std::vector<int>{-1, 0, 1});
  REQUIRE(p1.relators.size() == 2);
  CHECK(p1.relators[0] == Word{{-1, 2}, {0, -3}});
  CHECK(p1.relators[1] == Word{{0, 2}, {1, -3}});
  CHECK(p1.name_of(-1) == "g(-1)");

  const PresState p2 = chain_presentation(ChainSpec::constant(2, 2), 2);
  REQUIRE(p2.relators.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) {
    const int lvl = static_cast<int>(j) - 1;
    CHECK(p2.relators[j] == Word{{lvl - 1, 2}, {lvl, -2}});
  }
  for (int m = 0; m < 5; ++m) {
    const PresState p = chain_presentation(ChainSpec::periodic({{2, 3}, {3, 5}}), m);
    CHECK(p.generators.size() == static_cast<std::size_t>(2 * m + 1));
    CHECK(p.relators.size() == static_cast<std::size_t>(2 * m));
  }
  CHECK_THROWS_AS(chain_presentation(c23, -1), InputError);
  CHECK_THROWS_AS(ChainSpec::constant(1, 3), InputError);
}

TEST_CASE("cone generator words") {
  const auto c23 = ChainSpec::constant(2, 3);
  CHECK(cone_generator(c23, {-1, 1}) == Word::gen(-1));
  CHECK(cone_generator(c23, {0, 1}) == Word{{-1, -1}, {0, 1}});
  CHECK(cone_generator(c23, {1, 1}) == Word{{-1, -1}, {0, -1}, {1, 1}});
  CHECK(cone_generator(ChainSpec::constant(3, 2), {1, 1}) == Word{{-1, -2}, {0, -2}, {1, 1}});
  CHECK(cone_generator(c23, {0, 0}) == Word::gen(0));
  CHECK_THROWS_AS(cone_generator(c23, {2, 1}), InputError);
  CHECK_THROWS_AS(cone_generator(ChainSpec::free_product(), {0, 0}), Unsupported);
  CHECK(cone_generator_ids(2).size() == 5);
}

TEST_CASE("cone generator identities hold in the chain group") {
  for (const auto& spec : {ChainSpec::constant(2, 3), ChainSpec::constant(3, 2),
                           ChainSpec::constant(2, 2), ChainSpec::periodic({{2, 3}, {4, 3}})}) {
    const TreeNormalizer tn = TreeNormalizer::for_chain(spec);
    for (int m = 0; m <= 3; ++m) {
      for (int i = -m; i < m; ++i) {
        // a_{i,m} = a_{i+1,m} g_{i+1}^{l_{i+1}-1}
        const Word lhs = cone_generator(spec, {i, m});
        const Word rhs = mul(cone_generator(spec, {i + 1, m}), Word::gen(i + 1, spec.at(i + 1).l - 1));
        CHECK(tn.equal(lhs, rhs));
        // the proof's exponent l+1 does not give the same element
        const Word wrong = mul(cone_generator(spec, {i + 1, m}), Word::gen(i + 1, spec.at(i + 1).l + 1));
        CHECK_FALSE(tn.equal(lhs, wrong));
      }
    }
    for (int m = 0; m <= 2; ++m) {
      for (int i = -m; i <= m; ++i) {
        // a_{i,m} = g_{-m-1}^{k_{-m}-1} a_{i,m+1}
        const Word lhs = cone_generator(spec, {i, m});
        const Word rhs = mul(Word::gen(-m - 1, spec.at(-m).k - 1), cone_generator(spec, {i, m + 1}));
        CHECK(tn.equal(lhs, rhs));
      }
    }
  }
}

TEST_CASE("euclid examples") {
  const TietzeTrace t46 = euclid_normalize(4, 6);
  REQUIRE(t46.obstruction);
  CHECK(t46.obstruction->d == 2);
  CHECK(t46.obstruction->reduced_k == 2);
  CHECK(t46.obstruction->reduced_l == 3);
  REQUIRE(t46.steps.size() == 2);
  CHECK(t46.steps[0].resolution.dividend == 3);
  CHECK(t46.steps[0].resolution.quotient == 1);
  CHECK(t46.steps[0].resolution.divisor == 2);
  CHECK(t46.steps[0].resolution.remainder == 1);
  CHECK(t46.steps[1].resolution.dividend == 2);
  CHECK(t46.steps[1].resolution.quotient == 2);
  CHECK(t46.steps[1].resolution.divisor == 1);
  CHECK(t46.steps[1].resolution.remainder == 0);
  CHECK(t46.has_exponent_one_relation());
  CHECK(t46.swapped);

  const TietzeTrace t23 = euclid_normalize(2, 3);
  CHECK_FALSE(t23.obstruction);
  CHECK(t23.steps.size() == 2);
  CHECK(t23.has_exponent_one_relation());

  const TietzeTrace t33 = euclid_normalize(3, 3);
  REQUIRE(t33.obstruction);
  CHECK(t33.obstruction->d == 3);
  CHECK(t33.steps.empty());
  CHECK(t33.has_exponent_one_relation());
  CHECK_THROWS_AS(euclid_normalize(1, 3), InputError);
}

TEST_CASE("euclid traces over a grid") {
  for (std::int64_t k = 2; k <= 9; ++k) {
    for (std::int64_t l = 2; l <= 9; ++l) {
      const TietzeTrace t = euclid_normalize(k, l);
      const std::int64_t d = std::gcd(k, l);
      CHECK(static_cast<int>(t.steps.size()) == euclid_steps(k / d, l / d));
      CHECK(t.has_exponent_one_relation());
      CHECK(t.obstruction.has_value() == (d > 1));
      for (const TietzeStep& s : t.steps) {
        CHECK(s.substitution.replaced != s.substitution.other);
        const auto& r = s.resolution;
        CHECK(r.dividend == r.quotient * r.divisor + r.remainder);
        CHECK(r.remainder < r.divisor);
      }
      for (std::size_t i = 1; i < t.steps.size(); ++i) {
        CHECK(t.steps[i].resolution.dividend == t.steps[i - 1].resolution.divisor);
        CHECK(t.steps[i].resolution.divisor == t.steps[i - 1].resolution.remainder);
      }
      const AbelianReplay rep = replay_abelian(t);
      CHECK(rep.consistent);
      CHECK(rep.steps_unimodular);
      CHECK(rep.generators_left == 1);
    }
  }
}
