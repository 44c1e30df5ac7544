#include "complexes/complexes.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace dih {

namespace {

Scalar sgn(long e, const Ring& ring) { return Scalar::of(e % 2 == 0 ? 1 : -1, ring); }

SparseMatrix zero_matrix(const Ring& ring, int rows, int cols) { return SparseMatrix(ring, rows, cols); }

FoldedMap restricted(const FoldedMap& a, int s) {
  FoldedMap out{a.source, a.target, a.shift, {}};
  if (auto it = a.blocks.find(s); it != a.blocks.end()) out.blocks.emplace(s, it->second);
  return out;
}

void expect_same_spaces(const FoldedMap& a, const FoldedMap& b) {
  if (a.source != b.source || a.target != b.target || a.shift != b.shift)
    throw ComplexError("folded maps live on different spaces");
}

SparseMatrix column_vectors_to_matrix(const Ring& ring, int rows, const std::vector<SparseVec>& cols) {
  MatrixBuilder b(ring, rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& e : cols[j]) b.add(e.col, static_cast<int>(j), e.val);
  return b.build();
}

int matrix_rank(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return 0;
  if (m.ring().is_field()) return rank(m);
  return static_cast<int>(smith_normal_form(m).size());
}

std::vector<mpz_class> factors(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return {};
  return smith_normal_form(m);
}

}  // namespace

Folding::Folding(ModulePtr x) : x_(std::move(x)) {
  bool first = true;
  for (const auto& [bd, dim] : x_->dims()) {
    if (dim <= 0) continue;
    const int s = bd.n + bd.m;
    auto& list = cells_[s];
    int& total = dims_[s];
    list.push_back({bd.n, bd.m, total, dim});
    total += dim;
    if (first || s < lo_) lo_ = s;
    if (first || s > hi_) hi_ = s;
    first = false;
  }
  for (auto& [s, list] : cells_) {
    std::sort(list.begin(), list.end(), [](const Cell& a, const Cell& b) { return a.n < b.n; });
    int off = 0;
    for (auto& c : list) {
      c.offset = off;
      off += c.dim;
    }
  }
  const Window& w = x_->window();
  complete_ = w.max_simplicial + w.m_lo;
  if (w.max_total >= 0) complete_ = std::min(complete_, w.max_total);
}

int Folding::dim(int s) const {
  auto it = dims_.find(s);
  return it == dims_.end() ? 0 : it->second;
}

int Folding::offset(int n, int m) const {
  auto it = cells_.find(n + m);
  if (it != cells_.end())
    for (const Cell& c : it->second)
      if (c.n == n) return c.offset;
  return -1;
}

const std::vector<Folding::Cell>& Folding::cells(int s) const {
  static const std::vector<Cell> none;
  auto it = cells_.find(s);
  return it == cells_.end() ? none : it->second;
}

SparseMatrix FoldedMap::block(int s) const {
  auto it = blocks.find(s);
  if (it != blocks.end()) return it->second;
  return zero_matrix(source->ring(), target->dim(s + shift), source->dim(s));
}

FoldedMap folded_zero(const FoldingPtr& src, const FoldingPtr& tgt, int shift) { return FoldedMap{src, tgt, shift, {}}; }

FoldedMap folded_identity(const FoldingPtr& x) {
  FoldedMap out{x, x, 0, {}};
  for (int s = x->lo(); s <= x->hi(); ++s)
    if (x->dim(s)) out.blocks[s] = SparseMatrix::identity(x->ring(), x->dim(s));
  return out;
}

FoldedMap fold_maps(const FoldingPtr& src, const FoldingPtr& tgt, int shift,
                    const std::vector<std::pair<GradedMap, Scalar>>& terms) {
  std::map<int, MatrixBuilder> builders;
  for (const auto& [g, c] : terms) {
    if (g.is_zero()) continue;
    if (g.dn() + g.dm() != shift) throw ComplexError("folded sum mixes total degrees");
    for (const auto& [bd, blk] : g.blocks()) {
      if (blk.rows() == 0 || blk.cols() == 0) continue;
      const int s = bd.n + bd.m;
      const int so = src->offset(bd.n, bd.m);
      const int to = tgt->offset(bd.n + g.dn(), bd.m + g.dm());
      if (so < 0 || to < 0) throw ComplexError("bigraded block outside the folded cells");
      auto it = builders.find(s);
      if (it == builders.end())
        it = builders.emplace(s, MatrixBuilder(src->ring(), tgt->dim(s + shift), src->dim(s))).first;
      place_block(it->second, blk, to, so, c);
    }
  }
  FoldedMap out{src, tgt, shift, {}};
  for (auto& [s, b] : builders) {
    SparseMatrix m = b.build();
    if (!m.is_zero()) out.blocks.emplace(s, std::move(m));
  }
  return out;
}

FoldedMap compose(const FoldedMap& g, const FoldedMap& f) {
  if (f.target != g.source) throw ComplexError("folded maps are not composable");
  FoldedMap out{f.source, g.target, f.shift + g.shift, {}};
  for (const auto& [s, fm] : f.blocks) {
    auto it = g.blocks.find(s + f.shift);
    if (it == g.blocks.end()) continue;
    SparseMatrix m = it->second * fm;
    if (!m.is_zero()) out.blocks.emplace(s, std::move(m));
  }
  return out;
}

FoldedMap add(const FoldedMap& a, const FoldedMap& b, const Scalar& ca, const Scalar& cb) {
  expect_same_spaces(a, b);
  FoldedMap out{a.source, a.target, a.shift, {}};
  std::vector<int> keys;
  for (const auto& [s, m] : a.blocks) keys.push_back(s);
  for (const auto& [s, m] : b.blocks) keys.push_back(s);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (int s : keys) {
    SparseMatrix m = matrix_add(a.block(s), b.block(s), ca, cb);
    if (!m.is_zero()) out.blocks.emplace(s, std::move(m));
  }
  return out;
}

FoldedMap scaled(const FoldedMap& a, const Scalar& c) {
  FoldedMap out{a.source, a.target, a.shift, {}};
  if (c.is_zero()) return out;
  for (const auto& [s, m] : a.blocks) out.blocks.emplace(s, m.scaled(c));
  return out;
}

std::vector<int> differing_degrees(const FoldedMap& a, const FoldedMap& b) {
  expect_same_spaces(a, b);
  std::vector<int> out;
  const int lo = std::min(a.source->lo(), b.source->lo());
  const int hi = std::max(a.source->hi(), b.source->hi());
  for (int s = lo; s <= hi; ++s)
    if (a.block(s) != b.block(s)) out.push_back(s);
  return out;
}

DModule build_d_family(const DFModule& x, int q) {
  if (q != 0 && q != 1) throw ComplexError("only q = 0 and q = 1 are supported");
  DModule out{x.carrier, {x.d}};
  const Ring& ring = x.carrier->ring();
  for (int k = 1; k <= x.top(); ++k) {
    GradedMap dk(x.carrier, x.carrier, -k, k - 1);
    for (int n = k; n <= x.top(); ++n) {
      if (n - q < k - 1) continue;
      for (const Tuple& I : increasing_tuples(n - q, k)) {
        const GradedMap* f = x.faces.get(n, I);
        if (!f) continue;
        long e = 0;
        for (int i : I) e += i;
        accumulate(dk, *f, sgn(e, ring));
      }
    }
    out.family.push_back(std::move(dk));
  }
  return out;
}

Report check_d_module(const DModule& d) {
  Report rep;
  rep.subject = "D-infinity relations";
  const int top = static_cast<int>(d.family.size()) - 1;
  const Scalar one = Scalar::one(d.carrier->ring());
  for (int k = 0; k <= 2 * top; ++k) {
    GradedMap sum(d.carrier, d.carrier, -k, k - 2);
    for (int i = std::max(0, k - top); i <= std::min(k, top); ++i) accumulate(sum, compose(d.family[i], d.family[k - i]), one);
    ++rep.checks;
    for (const auto& bd : differing_blocks(sum, GradedMap(d.carrier, d.carrier, -k, k - 2)))
      rep.fail("d-relation", k, {}, "source (" + std::to_string(bd.n) + "," + std::to_string(bd.m) + ")");
  }
  return rep;
}

std::vector<GradedMap> component_sums(const ComponentFamily& fam, int q, int top) {
  std::vector<GradedMap> out;
  const Ring& ring = fam.source()->ring();
  for (int k = 0; k <= top; ++k) {
    GradedMap sum(fam.source(), fam.target(), -k, k + fam.shift());
    for (int n = k; n <= top; ++n) {
      if (n - q < k - 1 || (k == 0 && n - q < -1)) continue;
      const std::vector<Tuple> tuples = k == 0 ? std::vector<Tuple>{Tuple{}} : increasing_tuples(n - q, k);
      for (const Tuple& I : tuples) {
        const GradedMap* f = fam.get(n, I);
        if (!f) continue;
        long e = 0;
        for (int i : I) e += i;
        accumulate(sum, *f, sgn(e, ring));
      }
    }
    out.push_back(std::move(sum));
  }
  return out;
}

FoldedComplex fold(const DModule& d, const FoldingPtr& space) {
  std::vector<std::pair<GradedMap, Scalar>> terms;
  for (const GradedMap& g : d.family) terms.emplace_back(g, Scalar::one(space->ring()));
  return {space, fold_maps(space, space, -1, terms)};
}

CyclicOperators build_operators(const DFModule& x, const FoldingPtr& space) {
  const Ring& ring = space->ring();
  std::vector<std::pair<GradedMap, Scalar>> T, N, R;
  for (int p = 0; p <= x.top(); ++p) {
    T.emplace_back(x.t.map.restricted_to_level(p), sgn(p, ring));
    R.emplace_back(x.r.map.restricted_to_level(p), sgn(static_cast<long>(p) * (p + 1) / 2, ring));
    for (int j = 0; j <= p; ++j) N.emplace_back(power_of_t(x.t, p, j), sgn(static_cast<long>(p) * j, ring));
  }
  CyclicOperators ops;
  ops.T = fold_maps(space, space, 0, T);
  ops.N = fold_maps(space, space, 0, N);
  ops.R = fold_maps(space, space, 0, R);
  ops.RT = compose(ops.R, ops.T);
  return ops;
}

FoldedMap Bicomplex::delta1(int m) const {
  return m % 2 == 0 ? b : scaled(bprime, -Scalar::one(space->ring()));
}

FoldedMap Bicomplex::delta2(int m) const {
  const Scalar one = Scalar::one(space->ring());
  if (m <= 0) return folded_zero(space, space, 0);
  return m % 2 ? add(folded_identity(space), ops.T, one, -one) : ops.N;
}

FoldedMap Bicomplex::theta(int m) const {
  const int k = m / 2;
  const Ring& ring = space->ring();
  return m % 2 == 0 ? scaled(ops.R, sgn(k, ring)) : scaled(ops.RT, sgn(k + 1, ring));
}

FoldedMap Bicomplex::delta3(int n, int m, int l) const {
  const Ring& ring = space->ring();
  const Scalar one = Scalar::one(ring);
  const FoldedMap id = restricted(folded_identity(space), n);
  switch (m % 4) {
    case 0:
      return scaled(add(id, restricted(ops.R, n), one, sgn(l, ring)), sgn(n, ring));
    case 1:
      return scaled(add(id, restricted(ops.RT, n), one, sgn(l + 1, ring)), sgn(n + 1, ring));
    case 2:
      return scaled(add(id, restricted(ops.R, n), one, sgn(l + 1, ring)), sgn(n, ring));
    default:
      return scaled(add(id, restricted(ops.RT, n), one, sgn(l, ring)), sgn(n + 1, ring));
  }
}

Bicomplex build_bicomplex(const DFModulePtr& x) {
  Bicomplex bi;
  bi.module = x;
  bi.space = std::make_shared<Folding>(x->carrier);
  bi.b = fold(build_d_family(*x, 0), bi.space).d;
  bi.bprime = fold(build_d_family(*x, 1), bi.space).d;
  bi.ops = build_operators(*x, bi.space);
  return bi;
}

namespace {

void expect_equal(Report& rep, const std::string& tag, const FoldedMap& a, const FoldedMap& b, int column = -1) {
  ++rep.checks;
  for (int s : differing_degrees(a, b))
    rep.fail(tag, s, {}, column >= 0 ? "column " + std::to_string(column) : std::string());
}

}  // namespace

Report check_bicomplex(const Bicomplex& bi, int m_max) {
  Report rep;
  rep.subject = "folded bicomplex identities";
  const Scalar one = Scalar::one(bi.space->ring());
  const FoldingPtr& X = bi.space;
  const FoldedMap id = folded_identity(X);
  const FoldedMap zero0 = folded_zero(X, X, 0);
  const FoldedMap zero1 = folded_zero(X, X, -1);
  const FoldedMap zero2 = folded_zero(X, X, -2);
  const FoldedMap one_minus_t = add(id, bi.ops.T, one, -one);
  expect_equal(rep, "b-squared", compose(bi.b, bi.b), zero2);
  expect_equal(rep, "b'-squared", compose(bi.bprime, bi.bprime), zero2);
  expect_equal(rep, "(1-T)RT", compose(one_minus_t, bi.ops.RT), scaled(compose(bi.ops.R, one_minus_t), -one));
  expect_equal(rep, "NR", compose(bi.ops.N, bi.ops.R), compose(bi.ops.RT, bi.ops.N));
  expect_equal(rep, "bR", compose(bi.b, bi.ops.R), compose(bi.ops.R, bi.b));
  expect_equal(rep, "b'RT", compose(bi.bprime, bi.ops.RT), compose(bi.ops.RT, bi.bprime));
  for (int m = 0; m <= m_max; ++m) {
    const FoldedMap th = bi.theta(m);
    expect_equal(rep, "theta-squared", compose(th, th), id, m);
    expect_equal(rep, "theta-delta1", compose(th, bi.delta1(m)), compose(bi.delta1(m), th), m);
    if (m == 0) continue;
    expect_equal(rep, "theta-delta2", compose(bi.theta(m - 1), bi.delta2(m)), compose(bi.delta2(m), th), m);
    expect_equal(rep, "delta1-delta2", add(compose(bi.delta1(m - 1), bi.delta2(m)), compose(bi.delta2(m), bi.delta1(m)), one, one),
                 zero1, m);
    if (m >= 2) expect_equal(rep, "delta2-squared", compose(bi.delta2(m - 1), bi.delta2(m)), zero0, m);
  }
  return rep;
}

int ChainComplex::dim(int D) const {
  auto it = dims.find(D);
  return it == dims.end() ? 0 : it->second;
}

SparseMatrix ChainComplex::boundary_at(int D) const {
  auto it = boundary.find(D);
  if (it != boundary.end()) return it->second;
  return zero_matrix(ring, dim(D - 1), dim(D));
}

int certified_bound(const Bicomplex& bi) { return bi.space->complete_up_to() - 1; }

ChainComplex totalize(const Bicomplex& bi, ChainComplex::Kind kind, int top) {
  const FoldingPtr& X = bi.space;
  if (top > certified_bound(bi))
    throw ComplexError("total degree " + std::to_string(top) + " exceeds the certified bound " +
                       std::to_string(certified_bound(bi)));
  ChainComplex c;
  c.kind = kind;
  c.ring = X->ring();
  c.lo = std::min(X->lo(), 0);
  if (X->hi() >= X->lo()) c.lo = X->lo();
  c.hi = top + 1;
  c.certified_hi = top;
  const bool dihedral = kind == ChainComplex::Kind::Dihedral;
  std::map<std::tuple<int, int, int>, ChainComplex::Slot> where;
  for (int D = c.lo; D <= c.hi; ++D) {
    int off = 0;
    auto& slots = c.layout[D];
    const int span = D - c.lo;
    for (int l = 0; l <= (dihedral ? span : 0); ++l)
      for (int m = 0; m + l <= span; ++m) {
        const int s = D - m - l;
        const int d = X->dim(s);
        if (!d) continue;
        slots.push_back({s, m, l, off, d});
        where[{s, m, l}] = slots.back();
        off += d;
      }
    c.dims[D] = off;
  }
  std::map<int, FoldedMap> d1, d2;
  for (int m = 0; m <= c.hi - c.lo; ++m) {
    d1.emplace(m, bi.delta1(m));
    d2.emplace(m, bi.delta2(m));
  }
  for (int D = c.lo + 1; D <= c.hi; ++D) {
    MatrixBuilder b(c.ring, c.dim(D - 1), c.dim(D));
    const Scalar one = Scalar::one(c.ring);
    for (const auto& sl : c.layout[D]) {
      auto place = [&](int s, int m, int l, const SparseMatrix& blk) {
        auto it = where.find({s, m, l});
        if (it == where.end() || blk.is_zero()) return;
        place_block(b, blk, it->second.offset, sl.offset, one);
      };
      place(sl.s - 1, sl.m, sl.l, d1.at(sl.m).block(sl.s));
      if (sl.m >= 1) place(sl.s, sl.m - 1, sl.l, d2.at(sl.m).block(sl.s));
      if (dihedral && sl.l >= 1) place(sl.s, sl.m, sl.l - 1, bi.delta3(sl.s, sl.m, sl.l).block(sl.s));
    }
    SparseMatrix m = b.build();
    if (!m.is_zero()) c.boundary.emplace(D, std::move(m));
  }
  return c;
}

Report check_total(const ChainComplex& c) {
  Report rep;
  rep.subject = "total complex";
  for (int D = c.lo + 2; D <= c.hi; ++D) {
    ++rep.checks;
    if (!(c.boundary_at(D - 1) * c.boundary_at(D)).is_zero()) rep.fail("total-d2", D, {});
  }
  return rep;
}

FoldedMap fold_family(const ComponentFamily& fam, const FoldingPtr& src, const FoldingPtr& tgt, int q) {
  const int top = src->module()->window().max_simplicial;
  std::vector<std::pair<GradedMap, Scalar>> terms;
  for (GradedMap& g : component_sums(fam, q, top)) terms.emplace_back(std::move(g), Scalar::one(src->ring()));
  return fold_maps(src, tgt, fam.shift(), terms);
}

InducedMap induce_bicomplex_map(const DFMorphism& f, const Bicomplex& x, const Bicomplex& y) {
  if (f.source != x.module || f.target != y.module) throw ComplexError("morphism does not match the bicomplexes");
  return {fold_family(f.comps, x.space, y.space, 0), fold_family(f.comps, x.space, y.space, 1)};
}

InducedMap induce_bicomplex_homotopy(const DFHomotopy& h, const Bicomplex& x, const Bicomplex& y) {
  if (h.f->source != x.module || h.f->target != y.module) throw ComplexError("homotopy does not match the bicomplexes");
  return {fold_family(h.comps, x.space, y.space, 0), fold_family(h.comps, x.space, y.space, 1)};
}

Report check_induced_map(const InducedMap& f, const Bicomplex& x, const Bicomplex& y) {
  Report rep;
  rep.subject = "induced bicomplex map";
  const Scalar one = Scalar::one(x.space->ring());
  const FoldedMap ix = folded_identity(x.space), iy = folded_identity(y.space);
  expect_equal(rep, "f-b", compose(f.f0, x.b), compose(y.b, f.f0));
  expect_equal(rep, "f-b'", compose(f.f1, x.bprime), compose(y.bprime, f.f1));
  expect_equal(rep, "f(1-T)", compose(f.f0, add(ix, x.ops.T, one, -one)), compose(add(iy, y.ops.T, one, -one), f.f1));
  expect_equal(rep, "fN", compose(f.f1, x.ops.N), compose(y.ops.N, f.f0));
  expect_equal(rep, "fR", compose(f.f0, x.ops.R), compose(y.ops.R, f.f0));
  expect_equal(rep, "fRT", compose(f.f1, x.ops.RT), compose(y.ops.RT, f.f1));
  return rep;
}

namespace {

std::map<std::tuple<int, int, int>, ChainComplex::Slot> slot_index(const ChainComplex& c, int D) {
  std::map<std::tuple<int, int, int>, ChainComplex::Slot> out;
  auto it = c.layout.find(D);
  if (it != c.layout.end())
    for (const auto& sl : it->second) out[{sl.s, sl.m, sl.l}] = sl;
  return out;
}

ChainMap assemble_total(const InducedMap& f, const ChainComplex& src, const ChainComplex& tgt, int shift, bool sign_m) {
  ChainMap out{shift, {}};
  const Scalar one = Scalar::one(src.ring);
  for (int D = src.lo; D <= src.hi; ++D) {
    if (D + shift < tgt.lo || D + shift > tgt.hi) continue;
    const auto targets = slot_index(tgt, D + shift);
    MatrixBuilder b(src.ring, tgt.dim(D + shift), src.dim(D));
    for (const auto& sl : src.layout.at(D)) {
      auto it = targets.find({sl.s + shift, sl.m, sl.l});
      if (it == targets.end()) continue;
      const FoldedMap& g = sl.m % 2 ? f.f1 : f.f0;
      const SparseMatrix blk = g.block(sl.s);
      if (blk.is_zero()) continue;
      place_block(b, blk, it->second.offset, sl.offset, sign_m && sl.m % 2 ? -one : one);
    }
    SparseMatrix m = b.build();
    if (!m.is_zero()) out.blocks.emplace(D, std::move(m));
  }
  return out;
}

SparseMatrix map_block(const ChainMap& f, int D, const ChainComplex& src, const ChainComplex& tgt) {
  auto it = f.blocks.find(D);
  if (it != f.blocks.end()) return it->second;
  return zero_matrix(src.ring, tgt.dim(D + f.shift), src.dim(D));
}

}  // namespace

ChainMap total_map(const InducedMap& f, const ChainComplex& src, const ChainComplex& tgt) {
  return assemble_total(f, src, tgt, 0, false);
}

ChainMap total_homotopy(const InducedMap& h, const ChainComplex& src, const ChainComplex& tgt) {
  return assemble_total(h, src, tgt, 1, true);
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& mid) {
  (void)mid;
  ChainMap out{f.shift + g.shift, {}};
  for (const auto& [D, fm] : f.blocks) {
    auto it = g.blocks.find(D + f.shift);
    if (it == g.blocks.end()) continue;
    SparseMatrix m = it->second * fm;
    if (!m.is_zero()) out.blocks.emplace(D, std::move(m));
  }
  return out;
}

bool same_map(const ChainMap& a, const ChainMap& b, const ChainComplex& src, const ChainComplex& tgt) {
  if (a.shift != b.shift) return false;
  for (int D = src.lo; D <= src.hi; ++D)
    if (D + a.shift >= tgt.lo && D + a.shift <= tgt.hi && map_block(a, D, src, tgt) != map_block(b, D, src, tgt))
      return false;
  return true;
}

Report check_chain_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt) {
  Report rep;
  rep.subject = "chain map";
  for (int D = src.lo + 1; D <= std::min(src.hi, tgt.hi); ++D) {
    ++rep.checks;
    const SparseMatrix lhs = tgt.boundary_at(D) * map_block(f, D, src, tgt);
    const SparseMatrix rhs = map_block(f, D - 1, src, tgt) * src.boundary_at(D);
    if (lhs != rhs) rep.fail("chain-map", D, {});
  }
  return rep;
}

Report check_chain_homotopy(const ChainMap& h, const ChainMap& f, const ChainMap& g, const ChainComplex& src,
                            const ChainComplex& tgt) {
  Report rep;
  rep.subject = "chain homotopy";
  const Scalar one = Scalar::one(src.ring);
  for (int D = src.lo; D + 1 <= std::min(src.hi, tgt.hi); ++D) {
    ++rep.checks;
    SparseMatrix lhs = tgt.boundary_at(D + 1) * map_block(h, D, src, tgt);
    if (D > src.lo) lhs = lhs + map_block(h, D - 1, src, tgt) * src.boundary_at(D);
    const SparseMatrix rhs = matrix_add(map_block(f, D, src, tgt), map_block(g, D, src, tgt), one, -one);
    if (lhs != rhs) rep.fail("chain-homotopy", D, {});
  }
  return rep;
}

std::string HomologyResult::to_text() const {
  std::ostringstream os;
  os << "ring " << ring.name() << ", certified through degree " << certified_hi << "\n";
  for (const auto& g : groups) {
    os << "H_" << g.degree << ": rank " << g.rank;
    if (!g.torsion.empty()) {
      os << ", torsion";
      for (const auto& t : g.torsion) os << " " << t.get_str();
    }
    os << "\n";
  }
  return os.str();
}

namespace {

template <class RankFn, class FactorFn>
HomologyResult homology_with(const ChainComplex& c, int lo, int hi, RankFn&& rank_of, FactorFn&& factors_of) {
  if (hi > c.certified_hi)
    throw ComplexError("degree " + std::to_string(hi) + " is past the certified bound " +
                       std::to_string(c.certified_hi));
  HomologyResult out;
  out.ring = c.ring;
  out.certified_hi = c.certified_hi;
  std::map<int, int> ranks;
  std::map<int, std::vector<mpz_class>> facs;
  auto rank_at = [&](int D) {
    if (D <= c.lo || D > c.hi) return 0;
    auto it = ranks.find(D);
    if (it != ranks.end()) return it->second;
    int r;
    if (c.ring.is_field()) {
      r = rank_of(c.boundary_at(D));
    } else {
      facs[D] = factors_of(c.boundary_at(D));
      r = static_cast<int>(facs[D].size());
    }
    return ranks[D] = r;
  };
  for (int D = lo; D <= hi; ++D) {
    HomologyGroup g;
    g.degree = D;
    g.rank = c.dim(D) - rank_at(D) - rank_at(D + 1);
    if (!c.ring.is_field() && D + 1 > c.lo && D + 1 <= c.hi)
      for (const auto& f : facs[D + 1])
        if (f > 1) g.torsion.push_back(f);
    out.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace

HomologyResult homology(const ChainComplex& c, int lo, int hi) {
  return homology_with(c, lo, hi, matrix_rank, factors);
}

HomologyResult homology_dense(const ChainComplex& c, int lo, int hi) {
  return homology_with(
      c, lo, hi,
      [](const SparseMatrix& m) { return m.rows() && m.cols() ? dense_rank_oracle(m) : 0; },
      [](const SparseMatrix& m) {
        return m.rows() && m.cols() ? dense_invariant_factors_oracle(m) : std::vector<mpz_class>{};
      });
}

std::string InducedHomology::to_text() const {
  std::ostringstream os;
  for (const auto& d : degrees)
    os << "degree " << d.degree << ": " << d.source_rank << " -> " << d.target_rank << ", "
       << (d.isomorphism ? "isomorphism" : "not an isomorphism") << "\n";
  os << "verdict: " << (isomorphism ? "isomorphism" : "not an isomorphism") << "\n";
  return os.str();
}

namespace {

// Boundaries first, then cycle representatives tagged by position.
struct HomologyBasis {
  std::unique_ptr<Echelon> ech;
  std::vector<SparseVec> reps;
};

HomologyBasis homology_basis(const ChainComplex& c, int D) {
  const int dim = c.dim(D);
  std::vector<SparseVec> cycles;
  if (D > c.lo) {
    cycles = kernel_basis(c.boundary_at(D));
  } else {
    for (int i = 0; i < dim; ++i) cycles.push_back({{i, Scalar::one(c.ring)}});
  }
  HomologyBasis hb;
  hb.ech = std::make_unique<Echelon>(c.ring, dim, static_cast<int>(cycles.size()));
  if (D + 1 <= c.hi) {
    const SparseMatrix bt = c.boundary_at(D + 1).transpose();
    for (int j = 0; j < bt.rows(); ++j) hb.ech->insert(bt.row(j));
  }
  for (const SparseVec& z : cycles) {
    const int j = static_cast<int>(hb.reps.size());
    if (hb.ech->insert(z, {{j, Scalar::one(c.ring)}})) hb.reps.push_back(z);
  }
  return hb;
}

// Mapping cone of f with Cone_D = X_{D-1} ⊕ Y_D, ∂(x, y) = (-∂x, f x + ∂y).
ChainComplex cone(const ChainMap& f, const ChainComplex& x, const ChainComplex& y, int lo, int hi) {
  ChainComplex c;
  c.ring = x.ring;
  c.lo = lo;
  c.hi = hi;
  c.certified_hi = hi - 1;
  const Scalar one = Scalar::one(c.ring);
  for (int D = lo; D <= hi; ++D) c.dims[D] = x.dim(D - 1) + y.dim(D);
  for (int D = lo + 1; D <= hi; ++D) {
    MatrixBuilder b(c.ring, c.dim(D - 1), c.dim(D));
    const int xs = x.dim(D - 1), xt = x.dim(D - 2);
    if (D - 1 > x.lo && xs && xt) place_block(b, x.boundary_at(D - 1), 0, 0, -one);
    if (xs && y.dim(D - 1)) place_block(b, map_block(f, D - 1, x, y), xt, 0, one);
    if (D > y.lo && y.dim(D) && y.dim(D - 1)) place_block(b, y.boundary_at(D), xt, xs, one);
    c.boundary.emplace(D, b.build());
  }
  return c;
}

}  // namespace

InducedHomology induced_homology_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt, int lo,
                                     int hi) {
  if (f.shift != 0) throw ComplexError("induced homology map needs a degree-preserving map");
  if (hi > src.certified_hi || hi > tgt.certified_hi)
    throw ComplexError("degree " + std::to_string(hi) + " is past the certified bound");
  InducedHomology out;
  if (src.ring.is_field()) {
    for (int D = lo; D <= hi; ++D) {
      const HomologyBasis hx = homology_basis(src, D);
      const HomologyBasis hy = homology_basis(tgt, D);
      InducedDegree d;
      d.degree = D;
      d.source_rank = static_cast<int>(hx.reps.size());
      d.target_rank = static_cast<int>(hy.reps.size());
      const SparseMatrix fm = map_block(f, D, src, tgt);
      std::vector<SparseVec> cols;
      for (const SparseVec& z : hx.reps) {
        const auto red = hy.ech->reduce(mat_vec(fm, z));
        if (!red.residual.empty()) throw ComplexError("image of a cycle is not a cycle; the map is not a chain map");
        SparseVec coords;
        for (const auto& e : red.tag) coords.push_back({e.col, -e.val});
        cols.push_back(std::move(coords));
      }
      d.matrix = column_vectors_to_matrix(src.ring, d.target_rank, cols);
      d.isomorphism = d.source_rank == d.target_rank && matrix_rank(d.matrix) == d.source_rank;
      out.isomorphism = out.isomorphism && d.isomorphism;
      out.degrees.push_back(std::move(d));
    }
    return out;
  }
  if (hi + 1 > tgt.certified_hi)
    throw ComplexError("the integral verdict needs the target certified through degree " + std::to_string(hi + 1));
  const ChainComplex c = cone(f, src, tgt, std::min(src.lo, tgt.lo), hi + 2);
  const HomologyResult hc = homology(c, lo, hi + 1);
  const HomologyResult hx = homology(src, lo, hi);
  const HomologyResult hy = homology(tgt, lo, hi);
  auto acyclic = [&](int D) {
    const HomologyGroup& g = hc.groups[D - lo];
    return g.rank == 0 && g.torsion.empty();
  };
  for (int D = lo; D <= hi; ++D) {
    InducedDegree d;
    d.degree = D;
    d.source_rank = hx.groups[D - lo].rank;
    d.target_rank = hy.groups[D - lo].rank;
    d.isomorphism = acyclic(D) && acyclic(D + 1);
    out.isomorphism = out.isomorphism && d.isomorphism;
    out.degrees.push_back(std::move(d));
  }
  return out;
}

}  // namespace dih
