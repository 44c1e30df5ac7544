#include "tensor/tensor.hpp"

#include <algorithm>

namespace dih {

namespace {

int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

TensorVec scaled(const TensorVec& v, const Scalar& c) {
  TensorVec out;
  for (const auto& [k, x] : v) add_to(out, k, x * c);
  return out;
}

void add_into(TensorVec& acc, const TensorVec& v, const Scalar& c) {
  for (const auto& [k, x] : v) add_to(acc, k, x * c);
}

// Applies an elementwise map linearly.
TensorVec apply_linear(const TensorVec& x, const ElementMap& fn) {
  TensorVec out;
  for (const auto& [k, c] : x) add_into(out, fn(k), c);
  return out;
}

std::vector<Tuple> runs_of(const Tuple& t) {
  std::vector<Tuple> out;
  for (int i : t) {
    if (!out.empty() && out.back().back() == i - 1)
      out.back().push_back(i);
    else
      out.push_back({i});
  }
  return out;
}

TensorVec rotate_q(const AInftyAlgebra& a, const Tuple& key, int q) {
  TensorVec x{{key, Scalar::one(a.ring)}};
  for (int i = 0; i < q; ++i) x = apply_linear(x, [&](const Tuple& k) { return tensor_t(a, k); });
  return x;
}

}  // namespace

TupleShape classify_tuple(const Tuple& t, int n) {
  TupleShape sh;
  if (t.empty()) return sh;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || t[i] > n || (i && t[i] <= t[i - 1]))
      throw WindowError("tuple " + tuple_string(t) + " is not an increasing subset of 0.." + std::to_string(n));
  sh.runs = runs_of(t);
  const int k = static_cast<int>(t.size());
  if (t.back() < n) {
    sh.kind = TupleShape::Kind::Interior;
    sh.face = sh.runs.size() == 1 ? TupleShape::FaceCase::Block : TupleShape::FaceCase::Annihilated;
    const int s = static_cast<int>(sh.runs.size());
    sh.ks.push_back(sh.runs[0][0]);
    for (int i = 1; i < s; ++i) sh.ks.push_back(sh.runs[i][0] - sh.runs[i - 1].back() - 2);
    int used = k + s;
    for (int v : sh.ks) used += v;
    sh.ks.push_back(n + 1 - used);
    int tail = 0;
    for (int i = s - 1; i >= 0; --i) {
      const int ni = static_cast<int>(sh.runs[i].size());
      sh.ns.insert(sh.ns.begin(), ni);
      sh.gamma += ni * tail;
      tail += ni;
    }
    return sh;
  }
  sh.kind = TupleShape::Kind::Wraparound;
  sh.q = static_cast<int>(sh.runs.back().size());
  int pre = 0;
  auto mid_begin = sh.runs.begin();
  if (sh.runs.size() > 1 && sh.runs.front().front() == 0) {
    pre = static_cast<int>(sh.runs.front().size());
    ++mid_begin;
  }
  sh.middle.assign(mid_begin, sh.runs.end() - 1);
  sh.z = pre + sh.q;
  for (int i = 0; i < sh.z; ++i) sh.rebased.push_back(i);
  for (const Tuple& r : sh.middle)
    for (int i : r) sh.rebased.push_back(i + sh.q);
  sh.face = sh.middle.empty() ? TupleShape::FaceCase::RotatedBlock : TupleShape::FaceCase::Annihilated;
  return sh;
}

Tuple tuple_from_shape(const TupleShape& sh, int n) {
  Tuple out;
  if (sh.kind == TupleShape::Kind::Interior) {
    int start = sh.ks[0];
    for (std::size_t i = 0; i < sh.ns.size(); ++i) {
      for (int a = 0; a < sh.ns[i]; ++a) out.push_back(start + a);
      if (i + 1 < sh.ns.size()) start = out.back() + 2 + sh.ks[i + 1];
    }
  } else if (sh.kind == TupleShape::Kind::Wraparound) {
    for (int i = 0; i < sh.z - sh.q; ++i) out.push_back(i);
    for (const Tuple& r : sh.middle) out.insert(out.end(), r.begin(), r.end());
    for (int i = n - sh.q + 1; i <= n; ++i) out.push_back(i);
  }
  return out;
}

int TensorModule::index_of(const Tuple& key) const {
  auto it = position.find(key);
  if (it == position.end()) throw WindowError("tensor outside the module window");
  return it->second;
}

TensorVec tensor_t(const AInftyAlgebra& a, const Tuple& key) {
  const int last = a.degree[key.back()];
  const int rest = a.degree_of(key) - last;
  Tuple out{key.back()};
  out.insert(out.end(), key.begin(), key.end() - 1);
  return {{out, Scalar::of(parity_sign(static_cast<long>(last) * rest), a.ring)}};
}

TensorVec tensor_r(const AInftyAlgebra& a, const Tuple& key) {
  long e = 0;
  for (std::size_t i = 1; i < key.size(); ++i)
    for (std::size_t j = i + 1; j < key.size(); ++j) e += a.degree[key[i]] * a.degree[key[j]];
  Tuple order{key[0]};
  order.insert(order.end(), key.rbegin(), key.rend() - 1);
  return scaled(star_tensor(a, order), Scalar::of(parity_sign(e), a.ring));
}

TensorVec tensor_face(const AInftyAlgebra& a, int n, const Tuple& I, const Tuple& key) {
  const int k = static_cast<int>(I.size());
  const TupleShape sh = classify_tuple(I, n);
  if (sh.face == TupleShape::FaceCase::Annihilated || k == 0) return {};
  if (k - 1 > a.arity_bound) throw WindowError("face needs π beyond the arity bound");
  const int p = a.degree_of(key);
  if (sh.face == TupleShape::FaceCase::Block) {
    const MultiOp* op = a.pi(k - 1);
    if (!op) return {};
    const int j = I[0];
    std::vector<const MultiOp*> ops(j, nullptr);
    ops.push_back(op);
    ops.resize(n + 1 - k, nullptr);
    return scaled(apply_tensor(a, ops, key), Scalar::of(parity_sign(static_cast<long>(k) * (p - 1)), a.ring));
  }
  Tuple head;
  for (int i = 0; i < k; ++i) head.push_back(i);
  const TensorVec rotated = rotate_q(a, key, sh.q);
  TensorVec out = apply_linear(rotated, [&](const Tuple& x) { return tensor_face(a, n, head, x); });
  return scaled(out, Scalar::of(parity_sign(static_cast<long>(sh.q) * (k - 1)), a.ring));
}

GradedMap assemble(const TensorModule& src, const TensorModule& tgt, int n, int dn, int dm, const ElementMap& fn) {
  GradedMap out(src.df->carrier, tgt.df->carrier, dn, dm);
  const Ring& ring = src.df->carrier->ring();
  for (int m : src.df->carrier->degrees_at(n)) {
    if (!tgt.df->carrier->window().contains(n + dn, m + dm)) continue;
    const auto& cols = src.basis.at({n, m});
    MatrixBuilder b(ring, tgt.df->carrier->dim(n + dn, m + dm), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [k2, c] : fn(cols[j])) b.add(tgt.index_of(k2), static_cast<int>(j), c);
    out.set_block(n, m, b.build());
  }
  return out;
}

TensorModulePtr build_tensor_df(const AlgebraPtr& ap, int top, int max_total) {
  const AInftyAlgebra& a = *ap;
  a.validate();
  if (a.min_degree() < 0) throw WindowError("algebra has negative degrees");
  const int reach = max_total >= 0 ? std::min(top, max_total) : top;
  if (reach - 1 > a.arity_bound)
    throw WindowError("window needs π_" + std::to_string(reach - 1) + " but operations are only known up to π_" +
                      std::to_string(a.arity_bound));
  auto tm = std::make_shared<TensorModule>();
  tm->algebra = ap;
  Window w{top, 0, std::max(0, (top + 1) * a.max_degree()), max_total};
  w.validate();
  auto x = std::make_shared<BigradedModule>(a.ring, w);
  for (int n = 0; n <= top; ++n) {
    if (max_total >= 0 && n > max_total) break;
    for (const Tuple& key : a.tuples(n + 1)) {
      const int m = a.degree_of(key);
      if (!w.contains(n, m)) continue;
      auto& cell = tm->basis[{n, m}];
      tm->position[key] = static_cast<int>(cell.size());
      cell.push_back(key);
    }
  }
  for (const auto& [bd, keys] : tm->basis) x->set_dim(bd.n, bd.m, static_cast<int>(keys.size()));

  auto mod = std::make_shared<DFModule>();
  mod->carrier = x;
  tm->df = mod;  // assemble reads the carrier through here
  mod->d = GradedMap(x, x, 0, -1);
  mod->faces = FaceFamily(x, x, -1);
  mod->t = {OperatorFamily::Kind::CyclicT, GradedMap(x, x, 0, 0)};
  mod->r = {OperatorFamily::Kind::DihedralR, GradedMap(x, x, 0, 0)};
  auto merge = [](GradedMap& into, const GradedMap& part) {
    for (const auto& [bd, b] : part.blocks()) into.set_block(bd.n, bd.m, b);
  };
  for (int n = 0; n <= top; ++n) {
    merge(mod->d, assemble(*tm, *tm, n, 0, -1, [&](const Tuple& k) { return tensor_differential(a, k); }));
    merge(mod->t.map, assemble(*tm, *tm, n, 0, 0, [&](const Tuple& k) { return tensor_t(a, k); }));
    merge(mod->r.map, assemble(*tm, *tm, n, 0, 0, [&](const Tuple& k) { return tensor_r(a, k); }));
    if (x->degrees_at(n).empty()) continue;
    for (int k = 1; k <= n; ++k)
      for (const Tuple& I : increasing_tuples(n, k)) {
        if (classify_tuple(I, n).face == TupleShape::FaceCase::Annihilated) continue;
        mod->faces.set(n, I, assemble(*tm, *tm, n, -k, k - 1, [&](const Tuple& key) {
          return tensor_face(a, n, I, key);
        }));
      }
  }
  return tm;
}

namespace {

const MultiOp* comp(const std::map<int, MultiOp>& m, int n) {
  auto it = m.find(n);
  return it == m.end() ? nullptr : &it->second;
}

// Appends `count` copies of op; returns false when op is missing (zero).
bool push(std::vector<const MultiOp*>& ops, const MultiOp* op, int count = 1) {
  if (count <= 0) return true;
  if (!op) return false;
  ops.insert(ops.end(), count, op);
  return true;
}

struct Interleaving {
  int sign = 1;
  std::vector<const MultiOp*> ops;
};

TensorVec sum_interleavings(const AInftyAlgebra& a, const std::vector<Interleaving>& terms, const Tuple& key,
                            long outer_exp) {
  TensorVec out;
  for (const auto& t : terms) add_into(out, apply_tensor(a, t.ops, key), Scalar::of(t.sign, a.ring));
  return scaled(out, Scalar::of(parity_sign(outer_exp), a.ring));
}

template <class Inner>
TensorVec wraparound(const AInftyAlgebra& a, const TupleShape& sh, int k, const Tuple& key, Inner&& inner) {
  const TensorVec rotated = rotate_q(a, key, sh.q);
  TensorVec out = apply_linear(rotated, inner);
  return scaled(out, Scalar::of(parity_sign(static_cast<long>(sh.q) * (k - 1)), a.ring));
}

}  // namespace

TensorVec induced_morphism_apply(const AInftyMorphism& f, int n, const Tuple& I, const Tuple& key) {
  const AInftyAlgebra& a = *f.source;
  const int k = static_cast<int>(I.size());
  if (n > f.bound) throw WindowError("M(f) needs f beyond its bound");
  const MultiOp* f0 = f.at(0);
  if (k == 0) {
    std::vector<const MultiOp*> ops;
    if (!push(ops, f0, n + 1)) return {};
    return apply_tensor(a, ops, key);
  }
  const TupleShape sh = classify_tuple(I, n);
  if (sh.kind == TupleShape::Kind::Wraparound)
    return wraparound(a, sh, k, key, [&](const Tuple& x) { return induced_morphism_apply(f, n, sh.rebased, x); });
  Interleaving term;
  for (std::size_t i = 0; i < sh.ns.size(); ++i)
    if (!push(term.ops, f0, sh.ks[i]) || !push(term.ops, f.at(sh.ns[i]))) return {};
  if (!push(term.ops, f0, sh.ks.back())) return {};
  return sum_interleavings(a, {term}, key, static_cast<long>(k) * (a.degree_of(key) - 1) + sh.gamma);
}

TensorVec induced_homotopy_apply(const AInftyHomotopy& h, int n, const Tuple& I, const Tuple& key) {
  const AInftyAlgebra& a = *h.f->source;
  const int k = static_cast<int>(I.size());
  auto F = [&](int m) { return h.f->at(m); };
  auto G = [&](int m) { return h.g->at(m); };
  auto H = [&](int m) { return comp(h.comps, m); };
  std::vector<Interleaving> terms;
  if (k == 0) {
    for (int i = 1; i <= n + 1; ++i) {
      Interleaving t;
      if (push(t.ops, G(0), i - 1) && push(t.ops, H(0)) && push(t.ops, F(0), n - i + 1)) terms.push_back(t);
    }
    return sum_interleavings(a, terms, key, 0);
  }
  const TupleShape sh = classify_tuple(I, n);
  if (sh.kind == TupleShape::Kind::Wraparound)
    return wraparound(a, sh, k, key, [&](const Tuple& x) { return induced_homotopy_apply(h, n, sh.rebased, x); });
  const int s = static_cast<int>(sh.ns.size());
  const auto& ks = sh.ks;
  const auto& ns = sh.ns;
  // g-blocks before position i (1-based), f-blocks from run `from` on.
  auto g_prefix = [&](Interleaving& t, int i) {
    for (int b = 1; b < i; ++b)
      if (!push(t.ops, G(0), ks[b - 1]) || !push(t.ops, G(ns[b - 1]))) return false;
    return true;
  };
  auto f_suffix = [&](Interleaving& t, int from) {
    for (int b = from; b <= s; ++b)
      if (!push(t.ops, F(0), ks[b - 1]) || !push(t.ops, F(ns[b - 1]))) return false;
    return push(t.ops, F(0), ks[s]);
  };
  int before = 0;
  for (int i = 1; i <= s; ++i) {
    // h replaces the i-th run.
    Interleaving t;
    t.sign = parity_sign(before);
    if (g_prefix(t, i) && push(t.ops, G(0), ks[i - 1]) && push(t.ops, H(ns[i - 1])) && f_suffix(t, i + 1))
      terms.push_back(t);
    before += ns[i - 1];
  }
  before = 0;
  for (int i = 1; i <= s + 1; ++i) {
    // h_0 replaces the j-th f_0 of the i-th gap.
    for (int j = 1; j <= ks[i - 1]; ++j) {
      Interleaving t;
      t.sign = parity_sign(before);
      bool ok = g_prefix(t, i) && push(t.ops, G(0), j - 1) && push(t.ops, H(0)) && push(t.ops, F(0), ks[i - 1] - j);
      if (ok && i <= s) ok = push(t.ops, F(ns[i - 1])) && f_suffix(t, i + 1);
      if (ok) terms.push_back(t);
    }
    if (i <= s) before += ns[i - 1];
  }
  return sum_interleavings(a, terms, key, static_cast<long>(k) * (a.degree_of(key) - 1) + sh.gamma);
}

DFMorphism induce_df_morphism(const AInftyMorphism& f, const TensorModulePtr& src, const TensorModulePtr& tgt) {
  if (src->algebra != f.source || tgt->algebra != f.target) throw DFError("tensor modules do not match the morphism");
  DFMorphism out{src->df, tgt->df, ComponentFamily(src->df->carrier, tgt->df->carrier, 0)};
  for (int n = 0; n <= src->df->top(); ++n) {
    if (src->df->carrier->degrees_at(n).empty()) continue;
    for (int k = 0; k <= n; ++k)
      for (const Tuple& I : increasing_tuples(n, k))
        out.comps.set(n, I, assemble(*src, *tgt, n, -k, k, [&](const Tuple& key) {
          return induced_morphism_apply(f, n, I, key);
        }));
  }
  return out;
}

DFHomotopy induce_df_homotopy(const AInftyHomotopy& h, const TensorModulePtr& src, const TensorModulePtr& tgt) {
  auto mf = std::make_shared<DFMorphism>(induce_df_morphism(*h.f, src, tgt));
  auto mg = std::make_shared<DFMorphism>(induce_df_morphism(*h.g, src, tgt));
  DFHomotopy out{mf, mg, ComponentFamily(src->df->carrier, tgt->df->carrier, 1)};
  for (int n = 0; n <= src->df->top(); ++n) {
    if (src->df->carrier->degrees_at(n).empty()) continue;
    for (int k = 0; k <= n; ++k)
      for (const Tuple& I : increasing_tuples(n, k))
        out.comps.set(n, I, assemble(*src, *tgt, n, -k, k + 1, [&](const Tuple& key) {
          return induced_homotopy_apply(h, n, I, key);
        }));
  }
  return out;
}

Report functoriality_check(const AInftyMorphism& f, const AInftyMorphism& g, const TensorModulePtr& a,
                           const TensorModulePtr& b, const TensorModulePtr& c) {
  Report rep;
  rep.subject = "M(gf) = M(g)M(f)";
  const DFMorphism lhs = induce_df_morphism(compose_ainfty(g, f), a, c);
  const DFMorphism rhs = compose_df(induce_df_morphism(g, b, c), induce_df_morphism(f, a, b));
  for (int n = 0; n <= a->df->top(); ++n)
    for (int k = 0; k <= n; ++k)
      for (const Tuple& I : increasing_tuples(n, k))
        compare_into(rep, "functor", n, I, lhs.comps.get_or_zero(n, I), rhs.comps.get_or_zero(n, I));
  return rep;
}

}  // namespace dih
