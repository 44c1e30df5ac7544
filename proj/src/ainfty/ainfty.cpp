#include "ainfty/ainfty.hpp"

#include <algorithm>
#include <functional>

namespace dih {

namespace {

int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

Scalar sgn(long e, const Ring& ring) { return Scalar::of(parity_sign(e), ring); }

Vec scaled(const Vec& v, const Scalar& c) {
  Vec out;
  for (const auto& [k, x] : v) add_to(out, k, x * c);
  return out;
}

void add_into(Vec& acc, const Vec& v, const Scalar& c) {
  for (const auto& [k, x] : v) add_to(acc, k, x * c);
}

std::string vec_string(const AInftyAlgebra& a, const Vec& v) {
  std::string s;
  for (const auto& [k, c] : v) s += (s.empty() ? "" : " + ") + c.to_string() + "·" + a.names[k];
  return s.empty() ? "0" : s;
}

std::string key_string(const AInftyAlgebra& a, const Tuple& key) {
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) s += (i ? "⊗" : "") + a.names[key[i]];
  return s;
}

// op_m(1^{t-1} ⊗ inner ⊗ 1^{m-t+width}) summed with the standard sign, where
// `width` is the number of identities needed to fill the key.
void add_inner_terms(Vec& acc, const AInftyAlgebra& a, const MultiOp* outer, int m, int n, int outer_arity,
                     const Tuple& key, int sign_shift) {
  const MultiOp* inner = a.pi(n - m);
  if (!outer || !inner || inner->is_zero() || outer->is_zero()) return;
  for (int t = 1; t <= outer_arity; ++t) {
    std::vector<const MultiOp*> ops(t - 1, nullptr);
    ops.push_back(inner);
    ops.resize(outer_arity, nullptr);
    const Vec v = apply_op(*outer, apply_tensor(a, ops, key));
    add_into(acc, v, sgn(static_cast<long>(t) * (n - m + 1) + n + sign_shift, a.ring));
  }
}

Vec d_after(const AInftyAlgebra& b, const Vec& v) { return apply_vec_map(b.d, v); }

Vec op_after_d(const AInftyAlgebra& a, const MultiOp& op, const Tuple& key) {
  return apply_op(op, tensor_differential(a, key));
}

int default_bound_algebra(const AInftyAlgebra& a) { return a.arity_bound - 1; }

}  // namespace

void add_to(Vec& v, int key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = v.try_emplace(key, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) v.erase(it);
}

void add_to(TensorVec& v, const Tuple& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = v.try_emplace(key, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) v.erase(it);
}

const Vec* MultiOp::at(const Tuple& key) const {
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

int AInftyAlgebra::degree_of(const Tuple& key) const {
  int s = 0;
  for (int g : key) s += degree[g];
  return s;
}

const MultiOp* AInftyAlgebra::pi(int n) const {
  auto it = ops.find(n);
  return it == ops.end() ? nullptr : &it->second;
}

int AInftyAlgebra::max_degree() const { return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end()); }
int AInftyAlgebra::min_degree() const { return degree.empty() ? 0 : *std::min_element(degree.begin(), degree.end()); }

std::vector<Tuple> AInftyAlgebra::tuples(int len) const {
  std::vector<Tuple> out;
  if (len < 0) return out;
  Tuple cur(len, 0);
  if (size() == 0) return len == 0 ? std::vector<Tuple>{Tuple{}} : out;
  for (;;) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[i] == size() - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

void AInftyAlgebra::validate() const {
  const int g = size();
  if (static_cast<int>(degree.size()) != g || static_cast<int>(d.size()) != g || static_cast<int>(star.size()) != g)
    throw AlgebraError("generator, degree, differential and involution lists differ in length");
  for (int a = 0; a < g; ++a) {
    if (degree[a] < 0) throw AlgebraError("generator " + names[a] + " has negative degree");
    for (const auto& [b, c] : d[a])
      if (b < 0 || b >= g || degree[b] != degree[a] - 1)
        throw AlgebraError("differential of " + names[a] + " does not lower degree by one");
    for (const auto& [b, c] : star[a])
      if (b < 0 || b >= g || degree[b] != degree[a])
        throw AlgebraError("involution of " + names[a] + " does not preserve degree");
  }
  for (const auto& [n, op] : ops) {
    if (n < 0 || n > arity_bound) throw AlgebraError("operation index " + std::to_string(n) + " beyond the arity bound");
    if (op.arity != n + 2 || op.degree != n) throw AlgebraError("operation " + std::to_string(n) + " has the wrong shape");
    for (const auto& [key, v] : op.table) {
      if (static_cast<int>(key.size()) != op.arity) throw AlgebraError("operation entry with the wrong arity");
      for (int x : key)
        if (x < 0 || x >= g) throw AlgebraError("operation entry names an unknown generator");
      for (const auto& [b, c] : v)
        if (b < 0 || b >= g || degree[b] != degree_of(key) + n)
          throw AlgebraError("operation " + std::to_string(n) + " entry " + key_string(*this, key) +
                             " has an output of the wrong degree");
    }
  }
}

const MultiOp* AInftyMorphism::at(int n) const {
  auto it = comps.find(n);
  return it == comps.end() ? nullptr : &it->second;
}

const MultiOp* AInftyHomotopy::at(int n) const {
  auto it = comps.find(n);
  return it == comps.end() ? nullptr : &it->second;
}

TensorVec apply_tensor(const AInftyAlgebra& src, const std::vector<const MultiOp*>& ops, const Tuple& key) {
  TensorVec res{{Tuple{}, Scalar::one(src.ring)}};
  std::size_t pos = 0;
  int passed = 0;
  for (const MultiOp* op : ops) {
    const int ar = op ? op->arity : 1;
    if (pos + ar > key.size()) throw AlgebraError("tensor of operations does not match the input length");
    const Tuple blk(key.begin() + pos, key.begin() + pos + ar);
    Vec out;
    if (op) {
      const Vec* v = op->at(blk);
      if (!v) return {};
      out = *v;
    } else {
      out[blk[0]] = Scalar::one(src.ring);
    }
    const Scalar s = sgn(static_cast<long>(op ? op->degree : 0) * passed, src.ring);
    TensorVec next;
    for (const auto& [k, c] : res)
      for (const auto& [b, cb] : out) {
        Tuple nk = k;
        nk.push_back(b);
        add_to(next, nk, c * cb * s);
      }
    res = std::move(next);
    if (res.empty()) return res;
    passed += src.degree_of(blk);
    pos += ar;
  }
  if (pos != key.size()) throw AlgebraError("tensor of operations does not consume the whole input");
  return res;
}

Vec apply_op(const MultiOp& op, const TensorVec& x) {
  Vec out;
  for (const auto& [k, c] : x)
    if (const Vec* v = op.at(k)) add_into(out, *v, c);
  return out;
}

Vec apply_vec_map(const std::vector<Vec>& m, const Vec& x) {
  Vec out;
  for (const auto& [k, c] : x) add_into(out, m[k], c);
  return out;
}

TensorVec tensor_differential(const AInftyAlgebra& a, const Tuple& key) {
  TensorVec out;
  int pre = 0;
  for (std::size_t i = 0; i < key.size(); ++i) {
    for (const auto& [b, c] : a.d[key[i]]) {
      Tuple nk = key;
      nk[i] = b;
      add_to(out, nk, c * sgn(pre, a.ring));
    }
    pre += a.degree[key[i]];
  }
  return out;
}

TensorVec star_tensor(const AInftyAlgebra& a, const Tuple& key) {
  TensorVec res{{Tuple{}, Scalar::one(a.ring)}};
  for (int g : key) {
    TensorVec next;
    for (const auto& [k, c] : res)
      for (const auto& [b, cb] : a.star[g]) {
        Tuple nk = k;
        nk.push_back(b);
        add_to(next, nk, c * cb);
      }
    res = std::move(next);
  }
  return res;
}

int eps_j(const std::vector<int>& ns) {
  int s = 0, tail = 0;
  for (int i = static_cast<int>(ns.size()) - 1; i >= 0; --i) {
    s += (ns[i] + 1) * tail;
    tail += ns[i];
  }
  return s;
}

std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts <= 0 || total < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int slots) {
    if (slots == 1) {
      cur.push_back(left);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int a = 0; a <= left; ++a) {
      cur.push_back(a);
      rec(left - a, slots - 1);
      cur.pop_back();
    }
  };
  rec(total, parts);
  return out;
}

int reversal_exponent(const AInftyAlgebra& a, const Tuple& key) {
  const int ar = static_cast<int>(key.size());
  int s = (ar - 2) * (ar - 1) / 2;
  for (int i = 0; i < ar; ++i)
    for (int j = i + 1; j < ar; ++j) s += a.degree[key[i]] * a.degree[key[j]];
  return s;
}

Report verify_ainfty(const AInftyAlgebra& a, int up_to) {
  if (up_to == -2) up_to = default_bound_algebra(a);
  Report rep;
  rep.subject = "A-infinity relations, n = -1.." + std::to_string(up_to);
  const Scalar one = Scalar::one(a.ring);
  for (int n = -1; n <= up_to; ++n) {
    const MultiOp* p1 = a.pi(n + 1);
    for (const Tuple& key : a.tuples(n + 3)) {
      ++rep.checks;
      Vec lhs;
      if (p1) {
        const Vec* v = p1->at(key);
        if (v) lhs = d_after(a, *v);
        add_into(lhs, op_after_d(a, *p1, key), sgn(n, a.ring));
      }
      Vec rhs;
      for (int m = 0; m <= n; ++m) add_inner_terms(rhs, a, a.pi(m), m, n, m + 2, key, 1);
      add_into(lhs, rhs, -one);
      if (!lhs.empty()) rep.fail("ainfty", n, {}, key_string(a, key) + ": defect " + vec_string(a, lhs));
    }
  }
  return rep;
}

Report verify_star_op(const AInftyAlgebra& src, const AInftyAlgebra& tgt, const MultiOp& op, const std::string& tag) {
  Report rep;
  for (const Tuple& key : src.tuples(op.arity)) {
    ++rep.checks;
    Vec lhs;
    if (const Vec* v = op.at(key)) lhs = apply_vec_map(tgt.star, *v);
    Vec rhs = apply_op(op, star_tensor(src, Tuple(key.rbegin(), key.rend())));
    rhs = scaled(rhs, sgn(reversal_exponent(src, key), src.ring));
    add_into(lhs, rhs, -Scalar::one(src.ring));
    if (!lhs.empty()) rep.fail(tag, op.arity, {}, key_string(src, key));
  }
  return rep;
}

Report verify_involution(const AInftyAlgebra& a) {
  Report rep;
  rep.subject = "involution";
  const Scalar one = Scalar::one(a.ring);
  for (int g = 0; g < a.size(); ++g) {
    ++rep.checks;
    Vec twice = apply_vec_map(a.star, a.star[g]);
    add_to(twice, g, -one);
    if (!twice.empty()) rep.fail("star-order", -1, {}, a.names[g]);
    Vec dstar = apply_vec_map(a.d, a.star[g]);
    add_into(dstar, apply_vec_map(a.star, a.d[g]), -one);
    if (!dstar.empty()) rep.fail("star-d", -1, {}, a.names[g]);
  }
  for (const auto& [n, op] : a.ops) {
    Report r = verify_star_op(a, a, op, "star-pi");
    for (auto& v : r.violations) v.level = n;
    rep.merge(r);
  }
  return rep;
}

Report verify_ainfty_morphism(const AInftyMorphism& f, int up_to) {
  const AInftyAlgebra& A = *f.source;
  const AInftyAlgebra& B = *f.target;
  if (up_to == -2) up_to = std::min({f.bound - 1, A.arity_bound, B.arity_bound});
  Report rep;
  rep.subject = "A-infinity morphism, n = -1.." + std::to_string(up_to);
  const Scalar one = Scalar::one(A.ring);
  for (int n = -1; n <= up_to; ++n) {
    const MultiOp* f1 = f.at(n + 1);
    for (const Tuple& key : A.tuples(n + 2)) {
      ++rep.checks;
      Vec lhs;
      if (f1) {
        if (const Vec* v = f1->at(key)) lhs = d_after(B, *v);
        add_into(lhs, op_after_d(A, *f1, key), sgn(n, A.ring));
      }
      Vec rhs;
      for (int m = 0; m <= n; ++m) {
        add_inner_terms(rhs, A, f.at(m), m, n, m + 1, key, 1);
        const MultiOp* pm = B.pi(m);
        if (!pm) continue;
        for (const auto& ns : compositions(n - m, m + 2)) {
          std::vector<const MultiOp*> ops;
          for (int x : ns) ops.push_back(f.at(x));
          if (std::find(ops.begin(), ops.end(), nullptr) != ops.end()) continue;
          add_into(rhs, apply_op(*pm, apply_tensor(A, ops, key)), -sgn(eps_j(ns), A.ring));
        }
      }
      add_into(lhs, rhs, -one);
      if (!lhs.empty()) rep.fail("morphism", n, {}, key_string(A, key) + ": defect " + vec_string(B, lhs));
    }
  }
  for (const auto& [n, op] : f.comps) {
    Report r = verify_star_op(A, B, op, "star-morphism");
    for (auto& v : r.violations) v.level = n;
    rep.merge(r);
  }
  return rep;
}

Report verify_ainfty_homotopy(const AInftyHomotopy& h, int up_to) {
  const AInftyMorphism& f = *h.f;
  const AInftyMorphism& g = *h.g;
  const AInftyAlgebra& A = *f.source;
  const AInftyAlgebra& B = *f.target;
  if (g.source != f.source || g.target != f.target) throw AlgebraError("homotopy endpoints differ in algebras");
  if (up_to == -2) up_to = std::min({h.bound - 1, f.bound - 1, g.bound - 1, A.arity_bound, B.arity_bound});
  Report rep;
  rep.subject = "A-infinity homotopy, n = -1.." + std::to_string(up_to);
  const Scalar one = Scalar::one(A.ring);
  for (int n = -1; n <= up_to; ++n) {
    const MultiOp* h1 = h.at(n + 1);
    for (const Tuple& key : A.tuples(n + 2)) {
      ++rep.checks;
      Vec lhs;
      if (h1) {
        if (const Vec* v = h1->at(key)) lhs = d_after(B, *v);
        add_into(lhs, op_after_d(A, *h1, key), sgn(n + 1, A.ring));
      }
      Vec rhs;
      if (const MultiOp* fn = f.at(n + 1))
        if (const Vec* v = fn->at(key)) add_into(rhs, *v, one);
      if (const MultiOp* gn = g.at(n + 1))
        if (const Vec* v = gn->at(key)) add_into(rhs, *v, -one);
      for (int m = 0; m <= n; ++m) {
        add_inner_terms(rhs, A, h.at(m), m, n, m + 1, key, 0);
        const MultiOp* pm = B.pi(m);
        if (!pm) continue;
        for (const auto& ns : compositions(n - m, m + 2)) {
          const int base = m + eps_j(ns);
          int before = 0;
          for (int i = 0; i < m + 2; ++i) {
            std::vector<const MultiOp*> ops;
            for (int a = 0; a < i; ++a) ops.push_back(g.at(ns[a]));
            ops.push_back(h.at(ns[i]));
            for (int a = i + 1; a < m + 2; ++a) ops.push_back(f.at(ns[a]));
            if (std::find(ops.begin(), ops.end(), nullptr) == ops.end())
              add_into(rhs, apply_op(*pm, apply_tensor(A, ops, key)), sgn(base + before, A.ring));
            before += ns[i];
          }
        }
      }
      add_into(lhs, rhs, -one);
      if (!lhs.empty()) rep.fail("homotopy", n, {}, key_string(A, key) + ": defect " + vec_string(B, lhs));
    }
  }
  for (const auto& [n, op] : h.comps) {
    Report r = verify_star_op(A, B, op, "star-homotopy");
    for (auto& v : r.violations) v.level = n;
    rep.merge(r);
  }
  return rep;
}

AInftyMorphism identity_ainfty(const AlgebraPtr& a) {
  AInftyMorphism id{a, a, {}, a->arity_bound + 1};
  MultiOp f0{1, 0, {}};
  for (int g = 0; g < a->size(); ++g) f0.table[{g}] = Vec{{g, Scalar::one(a->ring)}};
  id.comps[0] = std::move(f0);
  return id;
}

AInftyMorphism compose_ainfty(const AInftyMorphism& g, const AInftyMorphism& f) {
  if (f.target != g.source) throw AlgebraError("compose_ainfty: target of f is not the source of g");
  const AInftyAlgebra& A = *f.source;
  AInftyMorphism out{f.source, g.target, {}, std::min(f.bound, g.bound)};
  for (int N1 = 0; N1 <= out.bound; ++N1) {
    const int n = N1 - 1;
    MultiOp op{N1 + 1, N1, {}};
    for (const Tuple& key : A.tuples(N1 + 1)) {
      Vec v;
      for (int m = -1; m <= n; ++m) {
        const MultiOp* gm = g.at(m + 1);
        if (!gm) continue;
        for (const auto& ns : compositions(n - m, m + 2)) {
          std::vector<const MultiOp*> ops;
          for (int x : ns) ops.push_back(f.at(x));
          if (std::find(ops.begin(), ops.end(), nullptr) != ops.end()) continue;
          add_into(v, apply_op(*gm, apply_tensor(A, ops, key)), sgn(eps_j(ns), A.ring));
        }
      }
      if (!v.empty()) op.table[key] = std::move(v);
    }
    if (!op.is_zero()) out.comps[N1] = std::move(op);
  }
  return out;
}

Transfer transfer_along(const AlgebraPtr& ap, const MultiOp& phi, int bound) {
  const AInftyAlgebra& A = *ap;
  if (phi.arity != 2 || phi.degree != 1) throw AlgebraError("transfer needs a binary operation of degree 1");
  if (A.arity_bound < bound) throw AlgebraError("source operations are not known up to the requested bound");
  auto B = std::make_shared<AInftyAlgebra>(A);
  B->ops.clear();
  B->arity_bound = bound;
  auto f = std::make_shared<AInftyMorphism>(AInftyMorphism{ap, B, {}, bound + 1});
  f->comps[0] = identity_ainfty(ap).comps.at(0);
  if (!phi.is_zero()) f->comps[1] = phi;
  const Scalar one = Scalar::one(A.ring);
  for (int n = 0; n <= bound; ++n) {
    MultiOp op{n + 2, n, {}};
    for (const Tuple& key : A.tuples(n + 2)) {
      Vec val;
      for (int m = 0; m <= n; ++m) add_inner_terms(val, A, f->at(m), m, n, m + 1, key, 1);
      if (const MultiOp* f1 = f->at(n + 1)) {
        if (const Vec* v = f1->at(key)) add_into(val, d_after(*B, *v), -one);
        add_into(val, op_after_d(A, *f1, key), -sgn(n, A.ring));
      }
      for (int m = 0; m < n; ++m) {
        const MultiOp* pm = B->pi(m);
        if (!pm) continue;
        for (const auto& ns : compositions(n - m, m + 2)) {
          std::vector<const MultiOp*> ops;
          for (int x : ns) ops.push_back(f->at(x));
          if (std::find(ops.begin(), ops.end(), nullptr) != ops.end()) continue;
          add_into(val, apply_op(*pm, apply_tensor(A, ops, key)), -sgn(eps_j(ns), A.ring));
        }
      }
      if (!val.empty()) op.table[key] = std::move(val);
    }
    if (!op.is_zero()) B->ops[n] = std::move(op);
  }
  return {B, f};
}

std::shared_ptr<const AInftyMorphism> solve_endpoint(const std::shared_ptr<const AInftyMorphism>& fp,
                                                     const std::map<int, MultiOp>& h, int bound) {
  const AInftyMorphism& f = *fp;
  const AInftyAlgebra& A = *f.source;
  const AInftyAlgebra& B = *f.target;
  auto g = std::make_shared<AInftyMorphism>(AInftyMorphism{f.source, f.target, {}, bound});
  auto hat = [&](int n) -> const MultiOp* {
    auto it = h.find(n);
    return it == h.end() ? nullptr : &it->second;
  };
  const Scalar one = Scalar::one(A.ring);
  for (int N1 = 0; N1 <= bound; ++N1) {
    const int n = N1 - 1;
    MultiOp op{N1 + 1, N1, {}};
    for (const Tuple& key : A.tuples(N1 + 1)) {
      Vec val;
      if (const MultiOp* fn = f.at(N1))
        if (const Vec* v = fn->at(key)) add_into(val, *v, one);
      if (const MultiOp* h1 = hat(N1)) {
        if (const Vec* v = h1->at(key)) add_into(val, d_after(B, *v), -one);
        add_into(val, op_after_d(A, *h1, key), -sgn(n + 1, A.ring));
      }
      for (int m = 0; m <= n; ++m) {
        add_inner_terms(val, A, hat(m), m, n, m + 1, key, 0);
        const MultiOp* pm = B.pi(m);
        if (!pm) continue;
        for (const auto& ns : compositions(n - m, m + 2)) {
          const int base = m + eps_j(ns);
          int before = 0;
          for (int i = 0; i < m + 2; ++i) {
            std::vector<const MultiOp*> ops;
            for (int a = 0; a < i; ++a) ops.push_back(g->at(ns[a]));
            ops.push_back(hat(ns[i]));
            for (int a = i + 1; a < m + 2; ++a) ops.push_back(f.at(ns[a]));
            if (std::find(ops.begin(), ops.end(), nullptr) == ops.end())
              add_into(val, apply_op(*pm, apply_tensor(A, ops, key)), sgn(base + before, A.ring));
            before += ns[i];
          }
        }
      }
      if (!val.empty()) op.table[key] = std::move(val);
    }
    if (!op.is_zero()) g->comps[N1] = std::move(op);
  }
  return g;
}

MultiOp symmetrize(const AInftyAlgebra& src, const AInftyAlgebra& tgt, const MultiOp& op) {
  MultiOp out{op.arity, op.degree, {}};
  for (const Tuple& key : src.tuples(op.arity)) {
    Vec v;
    if (const Vec* x = op.at(key)) v = *x;
    const Vec mirrored = apply_op(op, star_tensor(src, Tuple(key.rbegin(), key.rend())));
    add_into(v, apply_vec_map(tgt.star, mirrored), sgn(reversal_exponent(src, key), src.ring));
    if (!v.empty()) out.table[key] = std::move(v);
  }
  return out;
}

}  // namespace dih
