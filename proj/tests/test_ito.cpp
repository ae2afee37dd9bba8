#include "doctest.h"
#include "ordlim/errors.hpp"
#include "ordlim/grammar.hpp"
#include "ordlim/ito.hpp"
#include "ordlim/rewriting.hpp"

using namespace ordlim;
using namespace ordlim::ito;
using cone::Sign;
using probes::Verdict;

namespace {

bool all_pass(const probes::ProbeReport& r) {
  for (const probes::Check& c : r.checks) {
    if (c.verdict != Verdict::Pass) return false;
  }
  return !r.checks.empty();
}

}  // namespace

TEST_CASE("z handles") {
  const OrderedGroupHandle z2 = make_z_handle(2);
  CHECK(z2.central() == Word::gen(0, 2));
  CHECK(z2.sign(mul(Word::gen(0, -1), z2.central()), 100).value == Sign::Positive);
  CHECK(make_z_handle(3).central() == Word::gen(0, 3));
  CHECK_THROWS_AS(make_z_handle(1), InputError);
  CHECK_FALSE(z2.cyclic_central());
  CHECK(make_cyclic_central_handle().cyclic_central());
  for (const probes::Check& c : z2.validation()) CHECK(c.verdict == Verdict::Pass);
}

TEST_CASE("torus handle") {
  const OrderedGroupHandle t = make_torus_handle(2, 3);
  const Word x = Word::gen(0), y = Word::gen(1);
  CHECK(t.sign(mul(invert(x), t.central()), 20000).value == Sign::Positive);
  CHECK(t.sign(mul(invert(mul(invert(x), y)), t.central()), 20000).value == Sign::Positive);
  CHECK(t.validation().size() == 7);
  for (const probes::Check& c : t.validation()) CHECK(c.verdict == Verdict::Pass);
  CHECK_THROWS_AS(make_torus_handle(1, 3), InputError);
}

TEST_CASE("a handle with a non-central element is rejected") {
  PresState p{{0, 1}, {"x", "y"}, {Word{{0, 2}, {1, -3}}}};
  CHECK_THROWS_AS(OrderedGroupHandle::make("bad", p, {Word::gen(0)}, Word::gen(1)), InputError);
}

TEST_CASE("trefoil from two cyclic handles") {
  const AmalgamHandle X = amalgamate(make_z_handle(2), make_z_handle(3));
  const PresState& p = X.handle.presentation();
  CHECK(p.generators.size() == 2);
  REQUIRE(p.relators.size() == 1);
  const rewriting::TreeNormalizer tn = rewriting::TreeNormalizer::for_presentation(p);
  const Word g = Word::gen(0), h = X.embed_h(Word::gen(0));
  CHECK(tn.equal(p.relators[0], mul(Word::gen(0, 2), power(h, -3))));
  const auto& gens = X.handle.generators();
  REQUIRE(gens.size() == 2);
  CHECK(tn.equal(gens[0], mul(g, power(h, -2))));
  CHECK(tn.equal(gens[1], h));
  CHECK(tn.equal(X.handle.central(), X.embed_h(X.h.central())));
  CHECK(all_pass(verify_ito_chain(X, 20000)));
}

TEST_CASE("trefoil with a cyclic handle") {
  const AmalgamHandle X = amalgamate(make_torus_handle(2, 3), make_z_handle(2));
  const rewriting::TreeNormalizer tn = rewriting::TreeNormalizer::for_presentation(X.handle.presentation());
  CHECK(tn.equal(Word::gen(0, 2), X.embed_h(Word::gen(0, 2))));
  CHECK(all_pass(verify_ito_chain(X, 20000)));
  const probes::ProbeReport c6 = factorization_probe(X, 20000);
  CHECK(all_pass(c6));
  CHECK(c6.checks.size() == 2);
}

TEST_CASE("two trefoils") {
  const OrderedGroupHandle t = make_torus_handle(2, 3);
  const AmalgamHandle X = amalgamate(t, t);
  CHECK(X.handle.presentation().names.size() == 4);
  CHECK(all_pass(verify_ito_chain(X, 200000)));
  const probes::ProbeReport c6 = factorization_probe(X, 20000);
  CHECK(all_pass(c6));
  CHECK(c6.checks.size() == 3);
  // the displayed factorization is not a group identity
  CHECK(c6.note.find("does not hold") != std::string::npos);
}

TEST_CASE("chain iteration") {
  const HandleFamily one = [](int n) {
    if (n == 0) return make_z_handle(2);
    if (n == 1) return make_z_handle(3);
    return make_cyclic_central_handle();
  };
  const ChainBuild b0 = iterate_chain(one, 0);
  CHECK(b0.top.name() == "Z(2)");
  CHECK(b0.minimal.size() == 1);

  const ChainBuild b1 = iterate_chain(one, 1);
  CHECK(all_pass(b1.report));
  REQUIRE(b1.minimal.size() == 2);
  const auto s = b1.top.signer(20000);
  CHECK(s(mul(invert(b1.minimal[1]), b1.minimal[0])).value == Sign::Positive);

  const ChainBuild flat = iterate_chain([](int) { return make_cyclic_central_handle(); }, 1);
  CHECK(all_pass(flat.report));
  REQUIRE(flat.minimal.size() == 2);
  CHECK(flat.top.equal(flat.minimal[0], flat.minimal[1]));

  const ChainBuild b2 = iterate_chain([](int n) { return make_z_handle(2 + (n < 0 ? -n : n) % 2); }, 2);
  CHECK(all_pass(b2.report));
  REQUIRE(b2.minimal.size() == 3);
  const auto s2 = b2.top.signer(20000);
  CHECK(s2(mul(invert(b2.minimal[1]), b2.minimal[0])).value == Sign::Positive);
  CHECK(s2(mul(invert(b2.minimal[2]), b2.minimal[1])).value == Sign::Positive);
}
