#include "doctest.h"
#include "support.hpp"

using namespace dih;
using namespace fixture;

namespace {

const Ring F7 = Ring::prime_field(7);

MultiOp single(int arity, int degree, const Tuple& key, int out, const Scalar& c) {
  MultiOp op{arity, degree, {}};
  op.table[key] = Vec{{out, c}};
  return op;
}

std::shared_ptr<const AInftyMorphism> projection(const AlgebraPtr& a) {
  // f_0 keeps the unit and kills u, v.
  auto p = std::make_shared<AInftyMorphism>(AInftyMorphism{a, a, {}, 3});
  p->comps[0] = single(1, 0, {0}, 0, Scalar::one(a->ring));
  return p;
}

}  // namespace

TEST_CASE("fixture algebras satisfy the relations and the star conditions") {
  for (const AlgebraPtr& a : {ext(F7, 2), upper(F7, 2), dga_uv(F7, 1, 2), dga_uv(F7, -1, 2), ground(F7, 2)}) {
    const Report rel = verify_ainfty(*a);
    CHECK_MESSAGE(rel.ok(), rel.to_text());
    CHECK(rel.checks > 0);
    const Report inv = verify_involution(*a);
    CHECK_MESSAGE(inv.ok(), inv.to_text());
  }
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    const AlgebraPtr a = random_dga(rng, F7, 2);
    CHECK(verify_ainfty(*a).ok());
    CHECK(verify_involution(*a).ok());
  }
  CHECK(verify_ainfty(*dual_numbers(F7, 2)).ok());
  CHECK(verify_involution(*dual_numbers(F7, 2)).ok());
  // The integers work the same way.
  CHECK(verify_ainfty(*upper(Ring::integers(), 2)).ok());
}

TEST_CASE("a corrupted product is reported at n = 0") {
  AlgebraBuilder b(F7, 2);
  b.gen("a", 0).gen("b", 0).gen("c", 0);
  b.op(0, {"a", "a"}, "a").op(0, {"a", "b"}, "b", 2).op(0, {"b", "c"}, "b").op(0, {"c", "c"}, "c");
  b.star("a", "c").star("c", "a");
  const AlgebraPtr bad = b.build();
  const Report rep = verify_ainfty(*bad);
  REQUIRE_FALSE(rep.ok());
  for (const auto& v : rep.violations) {
    CHECK(v.relation == "ainfty");
    CHECK(v.level == 0);
  }
  // (aa)b = 2b but a(ab) = 4b: only the key a⊗a⊗b fails.
  CHECK(rep.count("ainfty") == 1);
  // The scaled product also breaks the star condition: (ab)* = 2b but b*a* = b.
  CHECK(verify_involution(*bad).count("star-pi") == 2);
}

TEST_CASE("odd squares and the reversal sign") {
  // e* = e forces (e·e)* = -e·e, matching y* = -y.
  AlgebraBuilder b(F7, 1);
  b.gen("1", 0).gen("e", 1).gen("y", 2).unit_products("1").op(0, {"e", "e"}, "y");
  CHECK(verify_involution(*b.build()).count("star-pi") == 1);
  b.star("y", "y", -1);
  CHECK(verify_involution(*b.build()).ok());
}

TEST_CASE("sign helpers") {
  CHECK(eps_j({0, 0}) == 0);
  CHECK(eps_j({0, 1}) == 1);
  CHECK(eps_j({1, 1}) == 2);
  CHECK(eps_j({2, 1, 1}) == 3 * 2 + 2 * 1);
  CHECK(compositions(2, 3).size() == 6);
  CHECK(compositions(0, 4).size() == 1);
  CHECK(compositions(3, 1) == std::vector<std::vector<int>>{{3}});
  const AlgebraPtr e = ext(F7);
  // (a-2)(a-1)/2 + Σ|a_i||a_j| for e⊗y⊗e: 1 + (2 + 1 + 2).
  CHECK(reversal_exponent(*e, {1, 2, 1}) == 6);
  CHECK(reversal_exponent(*e, {1, 1}) == 1);
  CHECK(reversal_exponent(*e, {0, 0, 0, 0}) == 3);
}

TEST_CASE("tensor application uses the Koszul sign") {
  const AlgebraPtr e = ext(F7);
  const MultiOp d1 = single(1, 1, {0}, 1, Scalar::one(F7));  // degree-one map 1 ↦ e
  // (1 ⊗ d1)(e ⊗ 1) = -(e ⊗ e): d1 passes e.
  const TensorVec v = apply_tensor(*e, {nullptr, &d1}, {1, 0});
  REQUIRE(v.size() == 1);
  CHECK(v.begin()->first == Tuple{1, 1});
  CHECK(v.begin()->second == Scalar::of(-1, F7));
  CHECK(apply_tensor(*e, {&d1, nullptr}, {0, 1}).begin()->second == Scalar::one(F7));
  CHECK(tensor_differential(*dga_uv(F7), {1, 1}).size() == 2);
}

TEST_CASE("composition formulas in low arity") {
  std::mt19937 rng(11);
  const AlgebraPtr a = ext(F7, 3);
  const MultiOp phi = rand_sym(rng, *a, *a, 2, 1);
  const Transfer t1 = transfer_along(a, phi, 3);
  const MultiOp psi = rand_sym(rng, *t1.algebra, *t1.algebra, 2, 1);
  const Transfer t2 = transfer_along(t1.algebra, psi, 3);
  const AInftyMorphism gf = compose_ainfty(*t2.morphism, *t1.morphism);
  // (gf)_0 = g_0 f_0 = id and (gf)_1 = g_0 f_1 + g_1(f_0 ⊗ f_0) = φ + ψ.
  CHECK(gf.at(0)->table == identity_ainfty(a).at(0)->table);
  MultiOp sum = phi;
  for (const auto& [k, v] : psi.table)
    for (const auto& [b, c] : v) add_to(sum.table[k], b, c);
  std::erase_if(sum.table, [](const auto& kv) { return kv.second.empty(); });
  REQUIRE(gf.at(1));
  CHECK(gf.at(1)->table == sum.table);
  CHECK(verify_ainfty_morphism(gf).ok());
  // Composing with identities changes nothing.
  const AInftyMorphism left = compose_ainfty(identity_ainfty(t1.algebra), *t1.morphism);
  for (int n = 0; n <= 2; ++n) CHECK((left.at(n) ? left.at(n)->table : std::map<Tuple, Vec>{}) ==
                                     (t1.morphism->at(n) ? t1.morphism->at(n)->table : std::map<Tuple, Vec>{}));
}

TEST_CASE("projection onto the unit and its homotopy from the identity") {
  const AlgebraPtr a = bare_uv(F7, 3);
  const auto id = std::make_shared<AInftyMorphism>(identity_ainfty(a));
  const auto p = projection(a);
  CHECK(verify_ainfty_morphism(*p).ok());
  // h_0: v ↦ u, so d h_0 + h_0 d = id - p.
  AInftyHomotopy h{id, p, {}, 3};
  h.comps[0] = single(1, 1, {2}, 1, Scalar::one(F7));
  const Report ok = verify_ainfty_homotopy(h);
  CHECK_MESSAGE(ok.ok(), ok.to_text());

  h.comps[0] = single(1, 1, {2}, 1, Scalar::of(2, F7));
  const Report bad = verify_ainfty_homotopy(h);
  REQUIRE_FALSE(bad.ok());
  for (const auto& v : bad.violations) {
    CHECK(v.relation == "homotopy");
    CHECK(v.level == -1);
  }
  CHECK(bad.count("homotopy") == 2);  // inputs u and v
}

TEST_CASE("transfer and endpoint solving produce verified data") {
  std::mt19937 rng(5);
  for (const AlgebraPtr& a : {ext(F7, 4), dga_uv(F7, 1, 4), upper(F7, 4)}) {
    const MultiOp phi = rand_sym(rng, *a, *a, 2, 1);
    CHECK(verify_star_op(*a, *a, phi, "phi").ok());
    const Transfer t = transfer_along(a, phi, 4);
    const Report alg = verify_ainfty(*t.algebra);
    CHECK_MESSAGE(alg.ok(), alg.to_text());
    CHECK(verify_involution(*t.algebra).ok());
    const Report mor = verify_ainfty_morphism(*t.morphism);
    CHECK_MESSAGE(mor.ok(), mor.to_text());

    std::map<int, MultiOp> hc{{0, rand_sym(rng, *a, *t.algebra, 1, 1)}, {1, rand_sym(rng, *a, *t.algebra, 2, 2)}};
    const auto g = solve_endpoint(t.morphism, hc, 4);
    CHECK(verify_ainfty_morphism(*g).ok());
    const AInftyHomotopy h{t.morphism, g, hc, 4};
    const Report hom = verify_ainfty_homotopy(h);
    CHECK_MESSAGE(hom.ok(), hom.to_text());
  }
}

TEST_CASE("validation rejects malformed algebras") {
  AlgebraBuilder b(F7, 0);
  b.gen("x", 0).gen("y", 1);
  b.a.d[0] = Vec{{1, Scalar::one(F7)}};  // raises degree
  CHECK_THROWS_AS(b.build(), AlgebraError);
  AlgebraBuilder c(F7, 0);
  c.gen("x", 0).op(1, {"x", "x", "x"}, "x");
  CHECK_THROWS_AS(c.build(), AlgebraError);  // π_1 beyond the bound, and of the wrong degree
}

TEST_CASE("degree-zero star conditions") {
  const AlgebraPtr u = upper(F7);
  CHECK(reversal_exponent(*u, {0, 0, 0}) == 1);  // π_1 on degree-0 inputs is antisymmetric
  CHECK(reversal_exponent(*u, {0, 0}) == 0);
  // With the identity involution the condition is commutativity.
  AlgebraBuilder comm(F7, 1);
  comm.gen("1", 0).gen("x", 0).unit_products("1").op(0, {"x", "x"}, "x");
  CHECK(verify_involution(*comm.build()).ok());
  AlgebraBuilder noncomm(F7, 1);
  noncomm.gen("a", 0).gen("b", 0).gen("c", 0);
  noncomm.op(0, {"a", "a"}, "a").op(0, {"a", "b"}, "b").op(0, {"b", "c"}, "b").op(0, {"c", "c"}, "c");
  CHECK(verify_involution(*noncomm.build()).count("star-pi") == 4);
}

TEST_CASE("strict morphisms compose as plain maps") {
  const AlgebraPtr a = upper(F7, 2);
  // Swap a and c twice: the composite is the identity.
  AInftyMorphism swap{a, a, {}, 3};
  swap.comps[0] = MultiOp{1, 0, {{{0}, Vec{{2, Scalar::one(F7)}}}, {{1}, Vec{{1, Scalar::one(F7)}}}, {{2}, Vec{{0, Scalar::one(F7)}}}}};
  const AInftyMorphism twice = compose_ainfty(swap, swap);
  CHECK(twice.comps.size() == 1);
  CHECK(twice.at(0)->table == identity_ainfty(a).at(0)->table);
}
