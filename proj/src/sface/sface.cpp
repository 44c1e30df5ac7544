#include "sface/sface.hpp"

#include <algorithm>
#include <numeric>

namespace dih {

namespace {

const char* kMinus = "−";

int parity_of(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++inv;
  return inv & 1;
}

bool strictly_increasing(const Tuple& t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] <= t[i - 1]) return false;
  return true;
}

Tuple concrete(const SymTuple& s, const Tuple& values) {
  Tuple out;
  out.reserve(s.size());
  for (const auto& e : s) out.push_back(e.var < 0 ? e.offset : values.at(e.var) + e.offset);
  return out;
}

Tuple as_tuple(const SymTuple& s) {
  Tuple out;
  for (const auto& e : s) {
    if (e.var >= 0) throw BindingError("expression is symbolic; instantiate it first");
    out.push_back(e.offset);
  }
  return out;
}

std::string render_index(const IndexExpr& e, const std::vector<std::string>& names) {
  if (e.var < 0) return e.offset < 0 ? kMinus + std::to_string(-e.offset) : std::to_string(e.offset);
  std::string base = e.var < static_cast<int>(names.size()) ? names[e.var] : "i" + std::to_string(e.var + 1);
  if (e.offset > 0) return base + "+" + std::to_string(e.offset);
  if (e.offset < 0) return base + kMinus + std::to_string(-e.offset);
  return base;
}

std::string render_factor(const Factor& f, const std::vector<std::string>& names) {
  std::string s;
  switch (f.kind) {
    case SymbolKind::Face: s = "∂"; break;
    case SymbolKind::MorphF: s = "f"; break;
    case SymbolKind::MorphG: s = "g"; break;
    case SymbolKind::Homotopy: s = "h"; break;
  }
  s += "(";
  for (std::size_t i = 0; i < f.tuple.size(); ++i) {
    if (i) s += ",";
    s += render_index(f.tuple[i], names);
  }
  return s + ")";
}

bool same_factors(const FormalTerm& a, const FormalTerm& b) { return a.left == b.left && a.right == b.right; }

SymTuple identity_tuple(int k) {
  SymTuple s;
  for (int i = 0; i < k; ++i) s.push_back({i, 0});
  return s;
}

FormalExpression at(const FormalExpression& e, const Tuple& t) {
  if (!strictly_increasing(t)) throw BindingError("tuple " + tuple_string(t) + " is not strictly increasing");
  for (int v : t)
    if (v < 0) throw BindingError("tuple " + tuple_string(t) + " has a negative entry");
  return e.instantiate(t);
}

}  // namespace

void FormalExpression::add(const FormalTerm& t) {
  if (t.coeff == 0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (!same_factors(*it, t)) continue;
    it->coeff += t.coeff;
    if (it->coeff == 0) terms_.erase(it);
    return;
  }
  terms_.push_back(t);
}

bool FormalExpression::is_concrete() const {
  for (const auto& t : terms_) {
    for (const auto& e : t.left.tuple)
      if (e.var >= 0) return false;
    if (t.right)
      for (const auto& e : t.right->tuple)
        if (e.var >= 0) return false;
  }
  return true;
}

FormalExpression FormalExpression::instantiate(const Tuple& values) const {
  auto sub = [&](const SymTuple& s) {
    SymTuple out;
    for (int v : concrete(s, values)) out.push_back({-1, v});
    return out;
  };
  FormalExpression out;
  for (const auto& t : terms_) {
    FormalTerm c{t.coeff, {t.left.kind, sub(t.left.tuple)}, std::nullopt};
    if (t.right) c.right = Factor{t.right->kind, sub(t.right->tuple)};
    out.add(c);
  }
  return out;
}

std::string FormalExpression::render(const std::vector<std::string>& names) const {
  std::vector<const FormalTerm*> order;
  for (const auto& t : terms_)
    if (t.coeff > 0) order.push_back(&t);
  for (const auto& t : terms_)
    if (t.coeff < 0) order.push_back(&t);
  std::string out;
  for (const FormalTerm* t : order) {
    if (!out.empty()) out += " ";
    out += t->coeff > 0 ? "+" : kMinus;
    const int mag = std::abs(t->coeff);
    if (mag != 1) out += std::to_string(mag) + "·";
    out += render_factor(t->left, names);
    if (t->right) out += "∘" + render_factor(*t->right, names);
  }
  return out.empty() ? "0" : out;
}

bool operator==(const FormalExpression& a, const FormalExpression& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (const auto& t : a.terms_) {
    auto it = std::find_if(b.terms_.begin(), b.terms_.end(), [&](const FormalTerm& u) { return same_factors(t, u); });
    if (it == b.terms_.end() || it->coeff != t.coeff) return false;
  }
  return true;
}

Tuple hat_tuple(const std::vector<int>& sigma, const Tuple& tuple) {
  if (sigma.size() != tuple.size()) throw BindingError("hat_tuple: permutation and tuple sizes differ");
  Tuple seq;
  for (int s : sigma) seq.push_back(tuple.at(s));
  Tuple out(seq.size());
  for (std::size_t s = 0; s < seq.size(); ++s) {
    int alpha = 0;
    for (std::size_t u = s + 1; u < seq.size(); ++u)
      if (seq[u] < seq[s]) ++alpha;
    out[s] = seq[s] - alpha;
  }
  return out;
}

std::vector<Partition> partitions(int k, int m_lo, int m_hi) {
  std::vector<Partition> out;
  for (int m = std::max(0, m_lo); m <= std::min(k, m_hi); ++m) {
    // Subsets of size m in lexicographic order of their member positions.
    std::vector<int> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<char> in_left(k, 0);
      for (int p : pick) in_left[p] = 1;
      Partition part;
      for (int p = 0; p < k; ++p) {
        if (!in_left[p]) {
          part.right.push_back({p, 0});
          continue;
        }
        int smaller_right = 0;
        for (int q = 0; q < p; ++q)
          if (!in_left[q]) ++smaller_right;
        part.left.push_back({p, -smaller_right});
        part.parity += smaller_right;
      }
      part.parity &= 1;
      out.push_back(std::move(part));
      int i = m - 1;
      while (i >= 0 && pick[i] == k - m + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

std::vector<ConcretePartition> partitions_bruteforce(const Tuple& t, int m_lo, int m_hi) {
  const int k = static_cast<int>(t.size());
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<ConcretePartition> out;
  do {
    const Tuple h = hat_tuple(sigma, t);
    for (int m = std::max(0, m_lo); m <= std::min(k, m_hi); ++m) {
      Tuple l(h.begin(), h.begin() + m), r(h.begin() + m, h.end());
      if (strictly_increasing(l) && strictly_increasing(r)) out.push_back({l, r, parity_of(sigma)});
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

FormalExpression expand_face_relation(int k) {
  FormalExpression e;
  for (const auto& p : partitions(k, 1, k - 1))
    e.add({p.parity ? 1 : -1, {SymbolKind::Face, p.left}, Factor{SymbolKind::Face, p.right}});
  return e;
}

FormalExpression expand_morphism_relation(int k) {
  // The m = k and m = 0 cuts give the -∂_I f() and +f() ∂_I boundary terms.
  FormalExpression e;
  for (const auto& p : partitions(k, 0, k)) {
    const int s = p.parity ? 1 : -1;
    if (!p.left.empty()) e.add({s, {SymbolKind::Face, p.left}, Factor{SymbolKind::MorphF, p.right}});
    if (!p.right.empty()) e.add({-s, {SymbolKind::MorphF, p.left}, Factor{SymbolKind::Face, p.right}});
  }
  return e;
}

FormalExpression expand_composition(int k) {
  FormalExpression e;
  for (const auto& p : partitions(k, 0, k))
    e.add({p.parity ? -1 : 1, {SymbolKind::MorphG, p.left}, Factor{SymbolKind::MorphF, p.right}});
  return e;
}

FormalExpression expand_homotopy_relation(int k) {
  FormalExpression e;
  e.add({1, {SymbolKind::MorphF, identity_tuple(k)}, std::nullopt});
  e.add({-1, {SymbolKind::MorphG, identity_tuple(k)}, std::nullopt});
  for (const auto& p : partitions(k, 0, k)) {
    const int s = p.parity ? 1 : -1;
    if (!p.left.empty()) e.add({s, {SymbolKind::Face, p.left}, Factor{SymbolKind::Homotopy, p.right}});
    if (!p.right.empty()) e.add({s, {SymbolKind::Homotopy, p.left}, Factor{SymbolKind::Face, p.right}});
  }
  return e;
}

FormalExpression expand_face_relation(const Tuple& t) {
  if (t.empty()) throw BindingError("face relation needs k >= 1");
  return at(expand_face_relation(static_cast<int>(t.size())), t);
}
FormalExpression expand_morphism_relation(const Tuple& t) {
  return at(expand_morphism_relation(static_cast<int>(t.size())), t);
}
FormalExpression expand_composition(const Tuple& t) { return at(expand_composition(static_cast<int>(t.size())), t); }
FormalExpression expand_homotopy_relation(const Tuple& t) {
  return at(expand_homotopy_relation(static_cast<int>(t.size())), t);
}

namespace {

const ComponentFamily* family_for(const Bindings& b, SymbolKind kind, bool left) {
  const ComponentFamily* f = nullptr;
  const char* what = "";
  switch (kind) {
    case SymbolKind::Face:
      f = left ? b.face_left : b.face_right;
      what = left ? "target faces" : "source faces";
      break;
    case SymbolKind::MorphF: f = b.f; what = "f"; break;
    case SymbolKind::MorphG: f = b.g; what = "g"; break;
    case SymbolKind::Homotopy: f = b.h; what = "h"; break;
  }
  if (!f) throw BindingError(std::string("no binding for ") + what);
  return f;
}

}  // namespace

void evaluate_into(GradedMap& acc, const FormalExpression& expr, const Bindings& b, int n) {
  const Ring& ring = acc.ring();
  for (const auto& term : expr.terms()) {
    const Scalar c = Scalar::of(term.coeff, ring);
    if (!term.right) {
      const GradedMap* m = family_for(b, term.left.kind, false)->get(n, as_tuple(term.left.tuple));
      if (m) accumulate(acc, *m, c);
      continue;
    }
    const Tuple rt = as_tuple(term.right->tuple);
    const Tuple lt = as_tuple(term.left.tuple);
    const GradedMap* r = family_for(b, term.right->kind, false)->get(n, rt);
    if (!r) continue;
    const GradedMap* l = family_for(b, term.left.kind, true)->get(n - static_cast<int>(rt.size()), lt);
    if (!l) continue;
    accumulate(acc, compose(*l, *r), c);
  }
}

GradedMap evaluate_expression(const FormalExpression& expr, const Bindings& b, int n, GradedMap zero) {
  evaluate_into(zero, expr, b, n);
  return zero;
}

void compare_into(Report& rep, const std::string& relation, int n, const Tuple& t, const GradedMap& lhs,
                  const GradedMap& rhs) {
  ++rep.checks;
  for (const auto& bd : differing_blocks(lhs, rhs)) rep.fail(relation, n, t, "m=" + std::to_string(bd.m));
}

Report verify_finfty(const GradedMap& d, const FaceFamily& faces) {
  Report rep;
  rep.subject = "F-infinity faces";
  const auto& x = faces.source();
  Bindings b;
  b.face_left = b.face_right = &faces;
  for (int n = 1; n <= x->window().max_simplicial; ++n) {
    const GradedMap dn = d.restricted_to_level(n);
    for (int k = 1; k <= n; ++k) {
      const FormalExpression sym = expand_face_relation(k);
      for (const Tuple& t : increasing_tuples(n, k)) {
        const GradedMap face = faces.get_or_zero(n, t);
        GradedMap lhs = add(compose(d, face), compose(face, dn), Scalar::one(x->ring()), Scalar::one(x->ring()));
        GradedMap rhs = evaluate_expression(sym.instantiate(t), b, n, GradedMap(x, x, -k, k - 2));
        compare_into(rep, "faces", n, t, lhs, rhs);
      }
    }
  }
  return rep;
}

}  // namespace dih
