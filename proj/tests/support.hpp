#pragma once

// Fixture algebras and random generators shared by the tensor, complexes and
// acceptance tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ainfty/ainfty.hpp"
#include "dihedral/dihedral.hpp"

namespace fixture {

using namespace dih;

// Small builder keyed by generator names.
struct AlgebraBuilder {
  AInftyAlgebra a;

  explicit AlgebraBuilder(Ring ring, int arity_bound = 0) {
    a.ring = ring;
    a.arity_bound = arity_bound;
  }
  int id(const std::string& name) const {
    return static_cast<int>(std::find(a.names.begin(), a.names.end(), name) - a.names.begin());
  }
  AlgebraBuilder& gen(const std::string& name, int degree) {
    a.names.push_back(name);
    a.degree.push_back(degree);
    a.d.emplace_back();
    a.star.push_back(Vec{{a.size() - 1, Scalar::one(a.ring)}});
    return *this;
  }
  AlgebraBuilder& diff(const std::string& x, const std::string& y, long long c = 1) {
    a.d[id(x)] = Vec{{id(y), Scalar::of(c, a.ring)}};
    return *this;
  }
  AlgebraBuilder& star(const std::string& x, const std::string& y, long long c = 1) {
    a.star[id(x)] = Vec{{id(y), Scalar::of(c, a.ring)}};
    return *this;
  }
  AlgebraBuilder& op(int n, const std::vector<std::string>& in, const std::string& out, long long c = 1) {
    MultiOp& m = a.ops[n];
    m.arity = n + 2;
    m.degree = n;
    Tuple key;
    for (const auto& s : in) key.push_back(id(s));
    add_to(m.table[key], id(out), Scalar::of(c, a.ring));
    return *this;
  }
  AlgebraBuilder& unit_products(const std::string& unit) {
    for (const auto& g : std::vector<std::string>(a.names)) {
      op(0, {unit, g}, g);
      if (g != unit) op(0, {g, unit}, g);
    }
    return *this;
  }
  AlgebraPtr build() const {
    a.validate();
    return std::make_shared<AInftyAlgebra>(a);
  }
};

// 1, e, y in degrees 0, 1, 2; e·e = y; y* = -y.
inline AlgebraPtr ext(Ring ring, int bound = 0) {
  return AlgebraBuilder(ring, bound).gen("1", 0).gen("e", 1).gen("y", 2).unit_products("1").op(0, {"e", "e"}, "y").star(
      "y", "y", -1).build();
}

// Upper triangular 2x2 matrices: a = e11, b = e12, c = e22, with a* = c.
inline AlgebraPtr upper(Ring ring, int bound = 0) {
  return AlgebraBuilder(ring, bound)
      .gen("a", 0)
      .gen("b", 0)
      .gen("c", 0)
      .op(0, {"a", "a"}, "a")
      .op(0, {"a", "b"}, "b")
      .op(0, {"b", "c"}, "b")
      .op(0, {"c", "c"}, "c")
      .star("a", "c")
      .star("c", "a")
      .build();
}

// Unital DG algebra 1, u, v with du = v; the involution scales u and v by alpha.
inline AlgebraPtr dga_uv(Ring ring, long long alpha = 1, int bound = 0) {
  return AlgebraBuilder(ring, bound)
      .gen("1", 0)
      .gen("u", 1)
      .gen("v", 0)
      .diff("u", "v")
      .unit_products("1")
      .star("u", "u", alpha)
      .star("v", "v", alpha)
      .build();
}

inline AlgebraPtr ground(Ring ring, int bound = 0) {
  return AlgebraBuilder(ring, bound).gen("1", 0).op(0, {"1", "1"}, "1").build();
}

// K[x]/x² with the identity involution.
inline AlgebraPtr dual_numbers(Ring ring, int bound = 0) {
  return AlgebraBuilder(ring, bound).gen("1", 0).gen("x", 0).unit_products("1").build();
}

// Random unital DG algebra on 1, u, v (degrees 0, 1, 0) with du = c·v and
// star scaling u, v by α. Leibniz forces v·v = λv and u·v = v·u = λu; star
// compatibility forces α = 1 when λ ≠ 0.
inline AlgebraPtr random_dga(std::mt19937& rng, Ring ring, int bound = 0) {
  const long long p = ring.modulus() ? ring.modulus() : 5;
  std::uniform_int_distribution<long long> coef(1, p - 1);
  const long long c = coef(rng), lambda = rng() % 2 ? coef(rng) : 0;
  const long long alpha = lambda == 0 && rng() % 2 ? -1 : 1;
  AlgebraBuilder b(ring, bound);
  b.gen("1", 0).gen("u", 1).gen("v", 0).diff("u", "v", c).unit_products("1").star("u", "u", alpha).star("v", "v", alpha);
  if (lambda) b.op(0, {"v", "v"}, "v", lambda).op(0, {"u", "v"}, "u", lambda).op(0, {"v", "u"}, "u", lambda);
  return b.build();
}

// The acyclic pair u → v beside a unit, with no products at all.
inline AlgebraPtr bare_uv(Ring ring, int bound = 0) {
  return AlgebraBuilder(ring, bound).gen("1", 0).gen("u", 1).gen("v", 0).diff("u", "v").build();
}

// Random multilinear map A^{⊗arity} → B of the given degree, each admissible
// output hit with probability `density`.
inline MultiOp rand_op(std::mt19937& rng, const AInftyAlgebra& A, const AInftyAlgebra& B, int arity, int degree,
                       double density = 0.5) {
  MultiOp op{arity, degree, {}};
  std::uniform_real_distribution<double> coin(0, 1);
  const long long p = A.ring.modulus() ? A.ring.modulus() : 5;
  std::uniform_int_distribution<long long> coef(1, p - 1);
  for (const Tuple& key : A.tuples(arity)) {
    Vec v;
    for (int b = 0; b < B.size(); ++b)
      if (B.degree[b] == A.degree_of(key) + degree && coin(rng) < density) add_to(v, b, Scalar::of(coef(rng), A.ring));
    if (!v.empty()) op.table[key] = v;
  }
  return op;
}

inline MultiOp rand_sym(std::mt19937& rng, const AInftyAlgebra& A, const AInftyAlgebra& B, int arity, int degree) {
  return symmetrize(A, B, rand_op(rng, A, B, arity, degree));
}

// K alone, no products.
inline AlgebraPtr bare_unit(Ring ring, int bound = 0) { return AlgebraBuilder(ring, bound).gen("1", 0).build(); }

// Strict f_0: bare_uv → bare_unit keeping 1 and killing u, v.
inline std::shared_ptr<const AInftyMorphism> unit_projection(const AlgebraPtr& a, const AlgebraPtr& k, int bound) {
  auto p = std::make_shared<AInftyMorphism>(AInftyMorphism{a, k, {}, bound});
  MultiOp f0{1, 0, {}};
  f0.table[{0}] = Vec{{0, Scalar::one(a->ring)}};
  p->comps[0] = f0;
  return p;
}

// Z --1--> Z in degrees 1 → 0, contracted by s = 1: C_0 → C_1.
inline CoefficientComplex acyclic_pair(Ring ring) {
  return CoefficientComplex{0, {1, 1}, {SparseMatrix(ring, 0, 1), SparseMatrix::identity(ring, 1)}};
}

// h_() = (-1)^n ⊗ s on level n of a group bar module over acyclic_pair: a
// homotopy from the identity to zero.
inline DFHomotopy contraction(const DFModulePtr& x, int order) {
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

// Generators x0..x11 with |xi| = i, no structure; only used to carry
// arbitrary multilinear maps.
inline AlgebraPtr graded_alphabet(Ring ring) {
  AlgebraBuilder b(ring, 20);
  for (int i = 0; i < 12; ++i) b.gen("x" + std::to_string(i), i);
  return b.build();
}

// Random degree-n map on inputs drawn from {x0, x1}.
inline MultiOp low_input_op(std::mt19937& rng, const AInftyAlgebra& a, int n) {
  MultiOp op{n + 1, n, {}};
  std::uniform_int_distribution<int> c(1, 6);
  Tuple key(n + 1, 0);
  for (int mask = 0; mask < (1 << (n + 1)); ++mask) {
    for (int i = 0; i <= n; ++i) key[i] = (mask >> i) & 1;
    op.table[key] = Vec{{a.degree_of(key) + n, Scalar::of(c(rng), a.ring)}};
  }
  return op;
}

inline Tuple random_key(std::mt19937& rng, int len) {
  Tuple key(len);
  for (int& x : key) x = static_cast<int>(rng() % 2);
  return key;
}

}  // namespace fixture
