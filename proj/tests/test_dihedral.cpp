#include "doctest.h"
#include "dihedral/dihedral.hpp"

using namespace dih;

namespace {

// Z --1--> Z in degrees 1 → 0: acyclic, contracted by s = 1: C_0 → C_1.
CoefficientComplex acyclic_pair(Ring ring) {
  return CoefficientComplex{0, {1, 1}, {SparseMatrix(ring, 0, 1), SparseMatrix::identity(ring, 1)}};
}

// h_() = (-1)^n ⊗ s on level n, a homotopy from the identity to zero.
DFHomotopy contraction(const DFModulePtr& x, int order) {
  const Ring& ring = x->carrier->ring();
  auto id = std::make_shared<DFMorphism>(identity_df(x));
  auto zero = std::make_shared<DFMorphism>(DFMorphism{x, x, ComponentFamily(x->carrier, x->carrier, 0)});
  DFHomotopy h{id, zero, ComponentFamily(x->carrier, x->carrier, 1)};
  int tuples = order;
  for (int n = 0; n <= x->top(); ++n, tuples *= order) {
    GradedMap c(x->carrier, x->carrier, 0, 1);
    c.set_block(n, 0, SparseMatrix::identity(ring, tuples).scaled(Scalar::of(n % 2 ? -1 : 1, ring)));
    h.comps.set(n, {}, c);
  }
  return h;
}

}  // namespace

TEST_CASE("strict dihedral modules from finite groups verify") {
  const Ring z = Ring::integers();
  for (const FiniteGroup& g : {FiniteGroup::cyclic(1), FiniteGroup::cyclic(3), FiniteGroup::dihedral(3)}) {
    const auto x = group_bar_module(g, trivial_coefficients(z), z, 3);
    const Report rep = verify_df_module(*x);
    CHECK_MESSAGE(rep.ok(), rep.to_text());
    CHECK(rep.checks > 0);
  }
  const auto y = group_bar_module(FiniteGroup::cyclic(2), acyclic_pair(Ring::prime_field(5)), Ring::prime_field(5), 4);
  CHECK(verify_df_module(*y).ok());
}

TEST_CASE("for k = 1 and i = 0 the t relation is the cyclic identity") {
  const Ring q = Ring::rationals();
  const auto x = group_bar_module(FiniteGroup::dihedral(2), trivial_coefficients(q), q, 3);
  for (int n = 1; n <= 3; ++n) {
    const GradedMap lhs = compose(x->faces.get_or_zero(n, {0}), x->t.map.restricted_to_level(n));
    CHECK(lhs == x->faces.get_or_zero(n, {n}));
  }
}

TEST_CASE("corrupting r is reported") {
  const Ring z = Ring::integers();
  auto x = std::make_shared<DFModule>(*group_bar_module(FiniteGroup::cyclic(3), trivial_coefficients(z), z, 3));
  // Swap two columns of r_2: r stays invertible but loses compatibility.
  SparseMatrix r2 = x->r.map.block_or_zero(2, 0);
  auto dense = r2.to_dense();
  for (auto& row : dense) std::swap(row[1], row[2]);
  MatrixBuilder b(z, r2.rows(), r2.cols());
  for (int i = 0; i < r2.rows(); ++i)
    for (int j = 0; j < r2.cols(); ++j) b.add(i, j, dense[i][j]);
  x->r.map.set_block(2, 0, b.build());
  const Report rep = verify_df_module(*x);
  CHECK(!rep.ok());
  CHECK(rep.count("r-faces") > 0);
  CHECK(rep.count("t-faces") == 0);
  CHECK(rep.count("faces") == 0);
  for (const auto& v : rep.violations)
    if (v.relation == "r-faces") CHECK((v.level == 2 || v.level == 3));
}

TEST_CASE("identity and strict morphisms") {
  const Ring z = Ring::integers();
  const FiniteGroup c6 = FiniteGroup::cyclic(6), c3 = FiniteGroup::cyclic(3);
  const auto x = group_bar_module(c6, trivial_coefficients(z), z, 2);
  const auto y = group_bar_module(c3, trivial_coefficients(z), z, 2);
  const DFMorphism id = identity_df(x);
  CHECK(verify_df_morphism(id).ok());

  const DFMorphism f = group_bar_morphism(x, y, c6, c3, {0, 1, 2, 0, 1, 2});
  CHECK(verify_df_morphism(f).ok());
  CHECK(verify_df_morphism(f, true).ok());
  CHECK(same_components(compose_df(identity_df(y), f).comps, f.comps));
  CHECK(same_components(compose_df(f, id).comps, f.comps));

  // Not a homomorphism (1+1 ↦ 1 ≠ 1+1), so faces are not preserved.
  const DFMorphism bad = group_bar_morphism(x, y, c6, c3, {0, 1, 1, 0, 1, 2});
  const Report rep = verify_df_morphism(bad);
  CHECK(!rep.ok());
  CHECK(rep.count("morph") > 0);
  CHECK_THROWS_AS(compose_df(f, f), DFError);
}

TEST_CASE("associativity of strict composites") {
  const Ring z = Ring::integers();
  const FiniteGroup c4 = FiniteGroup::cyclic(4), c2 = FiniteGroup::cyclic(2), c1 = FiniteGroup::cyclic(1);
  const auto a = group_bar_module(c4, trivial_coefficients(z), z, 2);
  const auto b = group_bar_module(c2, trivial_coefficients(z), z, 2);
  const auto c = group_bar_module(c1, trivial_coefficients(z), z, 2);
  const DFMorphism f = group_bar_morphism(a, b, c4, c2, {0, 1, 0, 1});
  const DFMorphism g = group_bar_morphism(b, b, c2, c2, {0, 1});
  const DFMorphism h = group_bar_morphism(b, c, c2, c1, {0, 0});
  CHECK(same_components(compose_df(compose_df(h, g), f).comps, compose_df(h, compose_df(g, f)).comps));
  CHECK(verify_df_morphism(compose_df(h, compose_df(g, f))).ok());
}

TEST_CASE("homotopies on an acyclic coefficient complex") {
  const Ring f5 = Ring::prime_field(5);
  const auto x = group_bar_module(FiniteGroup::cyclic(2), acyclic_pair(f5), f5, 3);
  REQUIRE(verify_df_module(*x).ok());
  const DFHomotopy h = contraction(x, 2);
  CHECK(verify_df_morphism(*h.g).ok());
  const Report rep = verify_df_homotopy(h);
  CHECK_MESSAGE(rep.ok(), rep.to_text());

  const DFHomotopy zero = zero_homotopy(h.f);
  CHECK(verify_df_homotopy(zero).ok());
  CHECK(homotopy_negate(zero).comps.entries().empty());

  const DFHomotopy back = homotopy_negate(h);
  CHECK(back.f == h.g);
  CHECK(verify_df_homotopy(back).ok());
  const DFHomotopy loop = homotopy_add(h, back);
  CHECK(loop.f == h.f);
  CHECK(loop.g == h.f);
  CHECK(verify_df_homotopy(loop).ok());
  CHECK_THROWS_AS(homotopy_add(h, h), DFError);

  // Dropping h_() at level 2 breaks the k = 0 relation exactly there.
  DFHomotopy broken = h;
  broken.comps.set(2, {}, GradedMap(x->carrier, x->carrier, 0, 1));
  const Report br = verify_df_homotopy(broken);
  bool at_tuple = false;
  for (const auto& v : br.violations)
    if (v.relation == "homotopy" && v.level == 2 && v.tuple.empty()) at_tuple = true;
  CHECK(at_tuple);
}
