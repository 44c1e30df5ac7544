#include <cctype>
#include <set>

#include "doctest.h"
#include "formal_parse.hpp"
#include "sface/sface.hpp"

using namespace dih;
using namespace fixture;

namespace {

// Δ[1] as a strict simplicial module: basis 0^a 1^(n+1-a) at level n.
ModulePtr interval(Ring ring, int top) {
  auto x = std::make_shared<BigradedModule>(ring, Window{top, 0, 0});
  for (int n = 0; n <= top; ++n) x->set_dim(n, 0, n + 2);
  return x;
}

SparseMatrix interval_face(Ring ring, int n, int i) {
  MatrixBuilder b(ring, n + 1, n + 2);
  for (int a = 0; a <= n + 1; ++a) b.add(i < a ? a - 1 : a, a, Scalar::one(ring));
  return b.build();
}

FaceFamily interval_faces(const ModulePtr& x) {
  FaceFamily faces(x, x, -1);
  const int top = x->window().max_simplicial;
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) {
      GradedMap m(x, x, -1, 0);
      m.set_block(n, 0, interval_face(x->ring(), n, i));
      faces.set(n, {i}, m);
    }
  return faces;
}

}  // namespace

TEST_CASE("hat_tuple") {
  CHECK(hat_tuple({1, 0}, {2, 5}) == Tuple{4, 2});
  CHECK(hat_tuple({2, 0, 1}, {0, 1, 4}) == Tuple{2, 0, 1});
  CHECK(hat_tuple({0, 1, 2}, {3, 5, 9}) == Tuple{3, 5, 9});
}

TEST_CASE("face relation for k up to 3") {
  CHECK(expand_face_relation(0).empty());
  CHECK(expand_face_relation(1).empty());
  CHECK(expand_face_relation(2) == parse_expr("+d(j-1)d(i) -d(i)d(j)", 2));
  CHECK(expand_face_relation(2).render({"i", "j"}) == "+∂(j−1)∘∂(i) −∂(i)∘∂(j)");
  CHECK(expand_face_relation(3) ==
        parse_expr("-d(i1)d(i2,i3) -d(i1,i2)d(i3) -d(i3-2)d(i1,i2) -d(i2-1,i3-1)d(i1)"
                   " +d(i2-1)d(i1,i3) +d(i1,i3-1)d(i2)",
                   3));
}

TEST_CASE("morphism relation for k up to 3") {
  CHECK(expand_morphism_relation(0).empty());
  CHECK(expand_morphism_relation(1) == parse_expr("+f()d(i) -d(i)f()", 1));
  CHECK(expand_morphism_relation(2) ==
        parse_expr("-d(i,j)f() +f()d(i,j) -d(i)f(j) +d(j-1)f(i) +f(i)d(j) -f(j-1)d(i)", 2));
  CHECK(expand_morphism_relation(3) ==
        parse_expr("-d(I)f() +f()d(I)"
                   " -d(i1)f(i2,i3) -d(i1,i2)f(i3) -d(i3-2)f(i1,i2) -d(i2-1,i3-1)f(i1)"
                   " +d(i2-1)f(i1,i3) +d(i1,i3-1)f(i2)"
                   " +f(i1)d(i2,i3) +f(i1,i2)d(i3) +f(i3-2)d(i1,i2) +f(i2-1,i3-1)d(i1)"
                   " -f(i2-1)d(i1,i3) -f(i1,i3-1)d(i2)",
                   3));
}

TEST_CASE("composition for k up to 3") {
  CHECK(expand_composition(0) == parse_expr("+g()f()", 0));
  CHECK(expand_composition(0).render() == "+g()∘f()");
  CHECK(expand_composition(1) == parse_expr("+g()f(i) +g(i)f()", 1));
  CHECK(expand_composition(2) == parse_expr("+g()f(i,j) +g(i,j)f() +g(i)f(j) -g(j-1)f(i)", 2));
  CHECK(expand_composition(3) ==
        parse_expr("+g()f(I) +g(I)f() +g(i1)f(i2,i3) +g(i1,i2)f(i3) +g(i3-2)f(i1,i2)"
                   " +g(i2-1,i3-1)f(i1) -g(i2-1)f(i1,i3) -g(i1,i3-1)f(i2)",
                   3));
  // One term per subset sent left, and none cancel.
  for (int k = 0; k <= 6; ++k) CHECK(expand_composition(k).terms().size() == (1u << k));
}

TEST_CASE("homotopy relation for k up to 3") {
  CHECK(expand_homotopy_relation(0) == parse_expr("+f() -g()", 0));
  CHECK(expand_homotopy_relation(0).render() == "+f() −g()");
  CHECK(expand_homotopy_relation(1) == parse_expr("+f(i) -g(i) -d(i)h() -h()d(i)", 1));
  CHECK(expand_homotopy_relation(2) ==
        parse_expr("+f(i,j) -g(i,j) -d(i,j)h() -h()d(i,j) -d(i)h(j) +d(j-1)h(i) -h(i)d(j) +h(j-1)d(i)", 2));
  // The ∂-left group carries h; it mirrors the morphism relation term by term.
  CHECK(expand_homotopy_relation(3) ==
        parse_expr("+f(I) -g(I) -d(I)h() -h()d(I)"
                   " -d(i1)h(i2,i3) -d(i1,i2)h(i3) -d(i3-2)h(i1,i2) -d(i2-1,i3-1)h(i1)"
                   " +d(i2-1)h(i1,i3) +d(i1,i3-1)h(i2)"
                   " -h(i1)d(i2,i3) -h(i1,i2)d(i3) -h(i3-2)d(i1,i2) -h(i2-1,i3-1)d(i1)"
                   " +h(i2-1)d(i1,i3) +h(i1,i3-1)d(i2)",
                   3));
}

TEST_CASE("subset partitions agree with the permutation definition") {
  const std::vector<Tuple> samples = {{0}, {0, 1}, {1, 4}, {0, 1, 2}, {0, 2, 5}, {1, 2, 3, 7}, {0, 1, 3, 4, 6}};
  for (const Tuple& t : samples) {
    const int k = static_cast<int>(t.size());
    std::multiset<std::tuple<Tuple, Tuple, int>> fast, slow;
    for (const auto& p : partitions(k, 0, k)) {
      FormalExpression e;
      e.add({1, {SymbolKind::Face, p.left}, Factor{SymbolKind::Face, p.right}});
      const FormalExpression inst = e.instantiate(t);
      const auto& c = inst.terms().front();
      Tuple l, r;
      for (const auto& ix : c.left.tuple) l.push_back(ix.offset);
      for (const auto& ix : c.right->tuple) r.push_back(ix.offset);
      fast.insert({l, r, p.parity % 2});
    }
    for (const auto& p : partitions_bruteforce(t, 0, k)) slow.insert({p.left, p.right, p.parity % 2});
    CHECK(fast == slow);
  }
}

TEST_CASE("concrete expansions validate their tuple") {
  CHECK_THROWS_AS(expand_face_relation(Tuple{2, 1}), BindingError);
  CHECK_THROWS_AS(expand_face_relation(Tuple{-1, 1}), BindingError);
  const auto e = expand_face_relation(Tuple{0, 3});
  CHECK(e.is_concrete());
  CHECK(e.render() == "+∂(2)∘∂(0) −∂(0)∘∂(3)");
}

TEST_CASE("verify_finfty on a strict simplicial module") {
  const Ring z = Ring::integers();
  auto x = interval(z, 4);
  const GradedMap d(x, x, 0, -1);
  FaceFamily faces = interval_faces(x);
  const Report ok = verify_finfty(d, faces);
  CHECK(ok.ok());
  CHECK(ok.checks > 0);

  // The zero family is an F-differential for any d with d² = 0.
  CHECK(verify_finfty(d, FaceFamily(x, x, -1)).ok());

  // A wrong ∂_0 at level 2 is the left factor of ∂_0∂_0 in d(∂_{(0,1)}) at level 3.
  GradedMap bad(x, x, -1, 0);
  bad.set_block(2, 0, interval_face(z, 2, 1));
  faces.set(2, {0}, bad);
  const Report broken = verify_finfty(d, faces);
  CHECK(!broken.ok());
  bool found = false;
  for (const auto& v : broken.violations)
    if (v.level == 3 && v.tuple == Tuple{0, 1}) found = true;
  CHECK(found);
}

TEST_CASE("evaluation checks symbol bindings") {
  const Ring z = Ring::integers();
  auto x = interval(z, 3);
  const FaceFamily faces = interval_faces(x);
  Bindings b{&faces, &faces, nullptr, nullptr, nullptr};
  const auto comp = expand_composition(Tuple{0, 1});
  CHECK_THROWS_AS(evaluate_expression(comp, b, 3, GradedMap(x, x, -2, 0)), BindingError);
  // ∂_1∂_0 and ∂_0∂_2 agree on Δ[1], so the face relation vanishes.
  const GradedMap v = evaluate_expression(expand_face_relation(Tuple{0, 2}), b, 3, GradedMap(x, x, -2, 0));
  CHECK(v.is_zero());
}
