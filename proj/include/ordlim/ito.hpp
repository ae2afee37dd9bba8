#pragma once

// Amalgams X = G *_{z_G = z_H} H of ordered groups with central cofinal
// elements, the induced cone <x_1, ..., x_m, h_1, ..., h_n>+ with
// x_i = g_i z_H^-1 h_1, and the two-amalgamations-per-level chain built from
// a family of such groups.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ordlim/cone.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/probes.hpp"
#include "ordlim/rewriting.hpp"
#include "ordlim/words.hpp"

namespace ordlim::ito {

struct HandleOptions {
  /// Enumeration budget for the validation compares and the default signer.
  std::size_t sign_budget = 20000;
};

/// A finitely presented group (a tree of cyclic groups) with a finitely
/// generated positive cone and a central element z. Construction runs the
/// centrality, positivity, ordering and cofinality checks and throws if one fails.
/// With allow_central_generator the ordering and cofinality checks accept equality
/// (groups that are <z> itself, and amalgams with such a factor).
class OrderedGroupHandle {
 public:
  /// shortcuts: extra positive words, each given as a sequence of generator
  /// indices, searched alongside the generators. Certificates are always
  /// reported over the generators.
  static OrderedGroupHandle make(std::string name, PresState pres, std::vector<Word> generators, Word central,
                                 const HandleOptions& options = {}, bool allow_central_generator = false,
                                 std::vector<std::vector<int>> shortcuts = {});

  const std::string& name() const { return s_->name; }
  const PresState& presentation() const { return s_->pres; }
  /// Cone generators, ascending.
  const std::vector<Word>& generators() const { return s_->gens; }
  const Word& central() const { return s_->z; }
  const std::vector<probes::Check>& validation() const { return s_->checks; }
  std::size_t sign_budget() const { return s_->budget; }
  /// True when the group is <z> itself (the only generator equals z).
  bool cyclic_central() const;
  /// Shortcut expansions passed to make(), as generator index sequences.
  std::vector<std::vector<int>> shortcuts() const;

  Word normalize(const Word& w) const { return s_->tn->normalize(w); }
  bool equal(const Word& a, const Word& b) const { return s_->tn->equal(a, b); }
  cone::GenericSign sign(const Word& w, std::size_t budget) const;
  /// Certificates name generators c1, c2, ... in ascending order.
  probes::Signer signer(std::size_t budget) const;
  probes::Signer signer() const { return signer(s_->budget); }

 private:
  struct State {
    std::string name;
    PresState pres;
    std::vector<Word> gens;
    Word z;
    std::shared_ptr<rewriting::TreeNormalizer> tn;
    std::shared_ptr<cone::ConeTable> table;
    std::vector<std::vector<int>> expansion;  // table generator -> generator indices
    std::vector<probes::Check> checks;
    std::size_t budget = 0;
  };
  std::shared_ptr<State> s_;
};

/// Z = <g> with cone <g>+ and z = g^N, N >= 2.
OrderedGroupHandle make_z_handle(std::int64_t N, const HandleOptions& options = {});
/// Z = <g> with z = g: the degenerate factor that leaves the minimal element fixed.
OrderedGroupHandle make_cyclic_central_handle(const HandleOptions& options = {});
/// <x, y | x^p = y^q> with cone <x^-(p-1) y, x>+ (ascending) and z = x^p.
OrderedGroupHandle make_torus_handle(std::int64_t p, std::int64_t q, const HandleOptions& options = {});

struct AmalgamHandle {
  OrderedGroupHandle handle;
  OrderedGroupHandle g;
  OrderedGroupHandle h;
  /// H's generator ids are shifted by this amount inside X; G's are unchanged.
  int h_offset = 0;
  /// The right-invariance sample report for z_H, run before amalgamating.
  probes::ProbeReport inv_h;

  Word embed_g(const Word& w) const { return w; }
  Word embed_h(const Word& w) const { return shift_levels(w, h_offset); }
  std::size_t x_count() const { return g.generators().size(); }
};

/// Throws InputError when right invariance of z_H fails on the sample.
AmalgamHandle amalgamate(const OrderedGroupHandle& G, const OrderedGroupHandle& H, const HandleOptions& options = {});

/// Deterministic sample pairs over a handle's generators, their inverses and
/// pairwise products.
std::vector<std::pair<Word, Word>> sample_pairs(const OrderedGroupHandle& h, std::size_t limit);

probes::ProbeReport verify_ito_chain(const AmalgamHandle& X, std::size_t budget);

/// Positivity of the three factors (h1^-1 z), (g1^-1 g2), (z h2 z^-1) in X.
/// The note records the sign of x1^-1 x2 z^-1 and whether it equals the
/// product of the factors; factors needing a missing g2 or h2 are skipped.
probes::ProbeReport factorization_probe(const AmalgamHandle& X, std::size_t budget);

using HandleFamily = std::function<OrderedGroupHandle(int)>;

struct ChainBuild {
  OrderedGroupHandle top;
  /// Minimal elements p_0, ..., p_m, written in top's generator ids.
  std::vector<Word> minimal;
  probes::ProbeReport report;
};

/// G_(0) = F(0); G'_(j) = G_(j) * F(j+1); G_(j+1) = F(-j-1) * G'_(j).
ChainBuild iterate_chain(const HandleFamily& family, int m, const HandleOptions& options = {});

}  // namespace ordlim::ito
