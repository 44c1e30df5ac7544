#include "dihedral/dihedral.hpp"

#include <algorithm>

namespace dih {

namespace {

Tuple shifted_down(const Tuple& t) {
  Tuple out;
  for (int i : t) out.push_back(i - 1);
  return out;
}

// (i_2 - 1, ..., i_k - 1, n): the wraparound partner of a tuple with i_1 = 0.
Tuple wrapped(const Tuple& t, int n) {
  Tuple out;
  for (std::size_t a = 1; a < t.size(); ++a) out.push_back(t[a] - 1);
  out.push_back(n);
  return out;
}

Tuple mirrored(const Tuple& t, int n) {
  Tuple out;
  for (auto it = t.rbegin(); it != t.rend(); ++it) out.push_back(n - *it);
  return out;
}

int sign_exp(int e) { return (e % 2 == 0) ? 1 : -1; }

// Checks the t and r exchange laws for one component family with
// family(n, I) ∘ op_source = op_target ∘ family(n, ·).
void exchange_checks(Report& rep, const std::string& tag, const ComponentFamily& fam, const DFModule& src,
                     const DFModule& tgt, bool with_r, int k_min) {
  const Ring& ring = src.carrier->ring();
  for (int n = 0; n <= src.top(); ++n) {
    const GradedMap tn = src.t.map.restricted_to_level(n);
    const GradedMap rn = src.r.map.restricted_to_level(n);
    for (int k = k_min; k <= n; ++k)
      for (const Tuple& I : increasing_tuples(n, k)) {
        const GradedMap comp = fam.get_or_zero(n, I);
        const GradedMap lhs_t = compose(comp, tn);
        GradedMap rhs_t;
        if (k == 0 || I[0] > 0)
          rhs_t = compose(tgt.t.map, fam.get_or_zero(n, k == 0 ? I : shifted_down(I)));
        else
          rhs_t = fam.get_or_zero(n, wrapped(I, n)).scaled(Scalar::of(sign_exp(k - 1), ring));
        compare_into(rep, "t-" + tag, n, I, lhs_t, rhs_t);
        if (!with_r) continue;
        const GradedMap lhs_r = compose(comp, rn);
        const GradedMap rhs_r =
            compose(tgt.r.map, fam.get_or_zero(n, mirrored(I, n))).scaled(Scalar::of(sign_exp(k * (k - 1) / 2), ring));
        compare_into(rep, "r-" + tag, n, I, lhs_r, rhs_r);
      }
  }
}

void block_checks(Report& rep, const std::string& tag, const GradedMap& a, const GradedMap& b) {
  for (int n = 0; n <= a.source()->window().max_simplicial; ++n) {
    ++rep.checks;
    for (const auto& bd : differing_blocks(a.restricted_to_level(n), b.restricted_to_level(n)))
      rep.fail(tag, n, {}, "m=" + std::to_string(bd.m));
  }
}

void require_same_window(const DFModule& a, const DFModule& b) {
  if (a.top() != b.top() || !(a.carrier->ring() == b.carrier->ring()))
    throw DFError("modules differ in ring or simplicial truncation");
}

}  // namespace

Report verify_df_module(const DFModule& x) {
  Report rep;
  rep.subject = "D-infinity-F module";
  const GradedMap dd = compose(x.d, x.d);
  block_checks(rep, "d2", dd, GradedMap(x.carrier, x.carrier, 0, -2));
  rep.merge(check_operator_family(x.t));
  rep.merge(check_operator_family(x.r));
  rep.merge(check_rt_relation(x.t, x.r));
  block_checks(rep, "dt", compose(x.d, x.t.map), compose(x.t.map, x.d));
  block_checks(rep, "dr", compose(x.d, x.r.map), compose(x.r.map, x.d));
  rep.merge(verify_finfty(x.d, x.faces));
  exchange_checks(rep, "faces", x.faces, x, x, true, 1);
  return rep;
}

Report verify_df_morphism(const DFMorphism& f, bool cyclic_only) {
  Report rep;
  rep.subject = "D-infinity-F morphism";
  const DFModule& X = *f.source;
  const DFModule& Y = *f.target;
  require_same_window(X, Y);
  Bindings b;
  b.face_left = &Y.faces;
  b.face_right = &X.faces;
  b.f = &f.comps;
  const Scalar one = Scalar::one(X.carrier->ring());
  for (int n = 0; n <= X.top(); ++n) {
    const GradedMap dn = X.d.restricted_to_level(n);
    for (int k = 0; k <= n; ++k) {
      const FormalExpression sym = expand_morphism_relation(k);
      for (const Tuple& I : increasing_tuples(n, k)) {
        const GradedMap comp = f.comps.get_or_zero(n, I);
        const GradedMap lhs = add(compose(Y.d, comp), compose(comp, dn), one, -one);
        const GradedMap rhs =
            evaluate_expression(sym.instantiate(I), b, n, GradedMap(X.carrier, Y.carrier, -k, k - 1));
        compare_into(rep, "morph", n, I, lhs, rhs);
      }
    }
  }
  exchange_checks(rep, "morph", f.comps, X, Y, !cyclic_only, 0);
  return rep;
}

Report verify_df_homotopy(const DFHomotopy& h) {
  Report rep;
  rep.subject = "D-infinity-F homotopy";
  const DFModule& X = *h.f->source;
  const DFModule& Y = *h.f->target;
  if (h.g->source != h.f->source || h.g->target != h.f->target) throw DFError("homotopy endpoints differ in modules");
  Bindings b;
  b.face_left = &Y.faces;
  b.face_right = &X.faces;
  b.f = &h.f->comps;
  b.g = &h.g->comps;
  b.h = &h.comps;
  const Scalar one = Scalar::one(X.carrier->ring());
  for (int n = 0; n <= X.top(); ++n) {
    const GradedMap dn = X.d.restricted_to_level(n);
    for (int k = 0; k <= n; ++k) {
      const FormalExpression sym = expand_homotopy_relation(k);
      for (const Tuple& I : increasing_tuples(n, k)) {
        const GradedMap comp = h.comps.get_or_zero(n, I);
        const GradedMap lhs = add(compose(Y.d, comp), compose(comp, dn), one, one);
        const GradedMap rhs = evaluate_expression(sym.instantiate(I), b, n, GradedMap(X.carrier, Y.carrier, -k, k));
        compare_into(rep, "homotopy", n, I, lhs, rhs);
      }
    }
  }
  exchange_checks(rep, "homotopy", h.comps, X, Y, true, 0);
  return rep;
}

DFMorphism identity_df(const DFModulePtr& x) {
  DFMorphism id{x, x, ComponentFamily(x->carrier, x->carrier, 0)};
  const GradedMap all = GradedMap::identity(x->carrier);
  for (int n = 0; n <= x->top(); ++n) id.comps.set(n, {}, all.restricted_to_level(n));
  return id;
}

DFMorphism compose_df(const DFMorphism& g, const DFMorphism& f) {
  if (f.target != g.source) throw DFError("compose_df: target of f is not the source of g");
  DFMorphism out{f.source, g.target, ComponentFamily(f.source->carrier, g.target->carrier, 0)};
  Bindings b;
  b.f = &f.comps;
  b.g = &g.comps;
  for (int n = 0; n <= f.source->top(); ++n)
    for (int k = 0; k <= n; ++k) {
      const FormalExpression sym = expand_composition(k);
      for (const Tuple& I : increasing_tuples(n, k))
        out.comps.set(n, I,
                      evaluate_expression(sym.instantiate(I), b, n,
                                          GradedMap(f.source->carrier, g.target->carrier, -k, k)));
    }
  return out;
}

bool same_components(const ComponentFamily& a, const ComponentFamily& b) {
  // Families never store zero maps, so stored entries determine equality.
  return a.shift() == b.shift() && a.entries() == b.entries();
}

DFHomotopy zero_homotopy(const std::shared_ptr<const DFMorphism>& f) {
  return DFHomotopy{f, f, ComponentFamily(f->source->carrier, f->target->carrier, 1)};
}

DFHomotopy homotopy_negate(const DFHomotopy& h) {
  DFHomotopy out{h.g, h.f, ComponentFamily(h.comps.source(), h.comps.target(), 1)};
  const Scalar minus = -Scalar::one(h.comps.source()->ring());
  for (const auto& [key, m] : h.comps.entries()) out.comps.set(key.first, key.second, m.scaled(minus));
  return out;
}

DFHomotopy homotopy_add(const DFHomotopy& h, const DFHomotopy& H) {
  if (h.g != H.f && !(h.g->source == H.f->source && h.g->target == H.f->target &&
                      same_components(h.g->comps, H.f->comps)))
    throw DFError("homotopy_add: the end of the first homotopy is not the start of the second");
  DFHomotopy out{h.f, H.g, h.comps};
  const Scalar one = Scalar::one(h.comps.source()->ring());
  for (const auto& [key, m] : H.comps.entries()) {
    const GradedMap* cur = out.comps.get(key.first, key.second);
    out.comps.set(key.first, key.second, cur ? add(*cur, m, one, one) : m);
  }
  return out;
}

int FiniteGroup::identity() const {
  for (int e = 0; e < size(); ++e) {
    bool ok = true;
    for (int g = 0; g < size() && ok; ++g) ok = mul[e][g] == g && mul[g][e] == g;
    if (ok) return e;
  }
  throw DFError("multiplication table has no identity");
}

int FiniteGroup::inverse(int g) const {
  const int e = identity();
  for (int h = 0; h < size(); ++h)
    if (mul[g][h] == e) return h;
  throw DFError("element without inverse");
}

FiniteGroup FiniteGroup::cyclic(int order) {
  FiniteGroup g;
  g.mul.assign(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) g.mul[a][b] = (a + b) % order;
  return g;
}

FiniteGroup FiniteGroup::dihedral(int sides) {
  // Element (s, k) = s^s ρ^k is stored as s * sides + k.
  FiniteGroup g;
  const int order = 2 * sides;
  g.mul.assign(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int sa = a / sides, ka = a % sides, sb = b / sides, kb = b % sides;
      const int k = ((sb ? -ka : ka) + kb + 2 * sides) % sides;
      g.mul[a][b] = ((sa + sb) % 2) * sides + k;
    }
  return g;
}

CoefficientComplex trivial_coefficients(Ring ring) {
  return CoefficientComplex{0, {1}, {SparseMatrix(ring, 0, 1)}};
}

namespace {

int power(int base, int e) {
  int p = 1;
  for (int i = 0; i < e; ++i) p *= base;
  return p;
}

// Lexicographic index of a tuple of group elements.
int encode(const std::vector<int>& g, int order) {
  int idx = 0;
  for (int v : g) idx = idx * order + v;
  return idx;
}

std::vector<int> decode(int idx, int len, int order) {
  std::vector<int> g(len);
  for (int i = len - 1; i >= 0; --i) {
    g[i] = idx % order;
    idx /= order;
  }
  return g;
}

// Block at (n, m) of the map g-tuple ↦ image ⊗ 1 on coefficients.
template <class F>
SparseMatrix tensor_with_identity(Ring ring, int src_len, int tgt_len, int src_order, int tgt_order, int cdim,
                                  F&& image) {
  const int cols = power(src_order, src_len) * cdim;
  MatrixBuilder b(ring, power(tgt_order, tgt_len) * cdim, cols);
  for (int idx = 0; idx < power(src_order, src_len); ++idx) {
    const int to = encode(image(decode(idx, src_len, src_order)), tgt_order);
    for (int c = 0; c < cdim; ++c) b.add(to * cdim + c, idx * cdim + c, Scalar::one(ring));
  }
  return b.build();
}

}  // namespace

DFModulePtr group_bar_module(const FiniteGroup& G, const CoefficientComplex& c, Ring ring, int top) {
  const int order = G.size();
  const int lo = c.lo, hi = c.lo + static_cast<int>(c.dims.size()) - 1;
  auto x = std::make_shared<BigradedModule>(ring, Window{top, lo, hi});
  for (int n = 0; n <= top; ++n)
    for (int m = lo; m <= hi; ++m) x->set_dim(n, m, power(order, n + 1) * c.dims[m - lo]);
  auto mod = std::make_shared<DFModule>();
  mod->carrier = x;
  mod->d = GradedMap(x, x, 0, -1);
  mod->faces = FaceFamily(x, x, -1);
  mod->t = {OperatorFamily::Kind::CyclicT, GradedMap(x, x, 0, 0)};
  mod->r = {OperatorFamily::Kind::DihedralR, GradedMap(x, x, 0, 0)};

  for (int n = 0; n <= top; ++n) {
    const int tuples = power(order, n + 1);
    for (int m = lo; m <= hi; ++m) {
      const int cdim = c.dims[m - lo];
      if (m > lo) {
        // (-1)^n ⊗ d_C
        MatrixBuilder b(ring, tuples * c.dims[m - 1 - lo], tuples * cdim);
        const SparseMatrix& dc = c.boundaries[m - lo];
        for (int i = 0; i < tuples; ++i)
          for (const auto& t : dc.triplets())
            b.add(i * c.dims[m - 1 - lo] + t.row, i * cdim + t.col, n % 2 ? -t.val : t.val);
        mod->d.set_block(n, m, b.build());
      }
      mod->t.map.set_block(n, m, tensor_with_identity(ring, n + 1, n + 1, order, order, cdim, [&](std::vector<int> g) {
        std::rotate(g.rbegin(), g.rbegin() + 1, g.rend());
        return g;
      }));
      mod->r.map.set_block(n, m, tensor_with_identity(ring, n + 1, n + 1, order, order, cdim, [&](std::vector<int> g) {
        std::vector<int> out{G.inverse(g[0])};
        for (int i = n; i >= 1; --i) out.push_back(G.inverse(g[i]));
        return out;
      }));
    }
    if (n == 0) continue;
    for (int i = 0; i <= n; ++i) {
      GradedMap face(x, x, -1, 0);
      for (int m = lo; m <= hi; ++m)
        face.set_block(n, m, tensor_with_identity(ring, n + 1, n, order, order, c.dims[m - lo], [&](std::vector<int> g) {
          if (i < n) {
            g[i] = G.mul[g[i]][g[i + 1]];
            g.erase(g.begin() + i + 1);
          } else {
            g[0] = G.mul[g[n]][g[0]];
            g.pop_back();
          }
          return g;
        }));
      mod->faces.set(n, {i}, face);
    }
  }
  return mod;
}

DFMorphism group_bar_morphism(const DFModulePtr& x, const DFModulePtr& y, const FiniteGroup& gx,
                              const FiniteGroup& gy, const std::vector<int>& phi) {
  require_same_window(*x, *y);
  DFMorphism f{x, y, ComponentFamily(x->carrier, y->carrier, 0)};
  const Ring& ring = x->carrier->ring();
  for (int n = 0; n <= x->top(); ++n) {
    GradedMap comp(x->carrier, y->carrier, 0, 0);
    for (int m : x->carrier->degrees_at(n)) {
      const int cdim = x->carrier->dim(n, m) / power(gx.size(), n + 1);
      comp.set_block(n, m, tensor_with_identity(ring, n + 1, n + 1, gx.size(), gy.size(), cdim, [&](std::vector<int> g) {
        for (int& v : g) v = phi[v];
        return g;
      }));
    }
    f.comps.set(n, {}, comp);
  }
  return f;
}

}  // namespace dih
