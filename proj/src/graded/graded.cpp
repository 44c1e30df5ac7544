#include "graded/graded.hpp"

#include <functional>

namespace dih {

void Window::validate() const {
  if (max_simplicial < 0) throw WindowError("window: negative simplicial bound");
  if (m_lo > m_hi) throw WindowError("window: empty internal range");
}

BigradedModule::BigradedModule(Ring ring, Window window) : ring_(ring), window_(window) { window_.validate(); }

int BigradedModule::dim(int n, int m) const {
  auto it = dims_.find({n, m});
  return it == dims_.end() ? 0 : it->second;
}

void BigradedModule::set_dim(int n, int m, int d) {
  if (d < 0) throw WindowError("negative rank");
  if (!window_.contains(n, m)) {
    if (d == 0) return;
    throw WindowError("bidegree (" + std::to_string(n) + "," + std::to_string(m) + ") outside window");
  }
  if (d == 0)
    dims_.erase({n, m});
  else
    dims_[{n, m}] = d;
}

void BigradedModule::set_labels(int n, int m, std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != dim(n, m)) throw WindowError("label count does not match rank");
  labels_[{n, m}] = std::move(labels);
}

const std::vector<std::string>* BigradedModule::labels(int n, int m) const {
  auto it = labels_.find({n, m});
  return it == labels_.end() ? nullptr : &it->second;
}

std::vector<int> BigradedModule::degrees_at(int n) const {
  std::vector<int> out;
  for (auto it = dims_.lower_bound({n, INT32_MIN}); it != dims_.end() && it->first.n == n; ++it)
    out.push_back(it->first.m);
  return out;
}

bool compatible(const ModulePtr& a, const ModulePtr& b) { return a == b || (a && b && a->same_shape(*b)); }

GradedMap::GradedMap(ModulePtr source, ModulePtr target, int dn, int dm)
    : src_(std::move(source)), tgt_(std::move(target)), dn_(dn), dm_(dm) {
  if (!src_ || !tgt_) throw WindowError("graded map needs source and target");
  if (src_->ring() != tgt_->ring()) throw RingError("graded map: ring mismatch");
}

GradedMap GradedMap::identity(ModulePtr x) {
  GradedMap id(x, x, 0, 0);
  for (const auto& [bd, d] : x->dims()) id.blocks_.emplace(bd, SparseMatrix::identity(x->ring(), d));
  return id;
}

const SparseMatrix* GradedMap::block(int n, int m) const {
  auto it = blocks_.find({n, m});
  return it == blocks_.end() ? nullptr : &it->second;
}

SparseMatrix GradedMap::block_or_zero(int n, int m) const {
  if (auto* b = block(n, m)) return *b;
  return SparseMatrix(ring(), tgt_->dim(n + dn_, m + dm_), src_->dim(n, m));
}

void GradedMap::set_block(int n, int m, SparseMatrix b) {
  const int rows = tgt_->dim(n + dn_, m + dm_);
  const int cols = src_->dim(n, m);
  if (b.is_zero()) {
    blocks_.erase({n, m});
    return;
  }
  if (b.rows() != rows || b.cols() != cols)
    throw DimensionError("block (" + std::to_string(n) + "," + std::to_string(m) + ") is " + describe(b) +
                         ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  blocks_[{n, m}] = std::move(b);
}

GradedMap GradedMap::restricted_to_level(int n) const {
  GradedMap out(src_, tgt_, dn_, dm_);
  for (auto it = blocks_.lower_bound({n, INT32_MIN}); it != blocks_.end() && it->first.n == n; ++it)
    out.blocks_.insert(*it);
  return out;
}

GradedMap GradedMap::scaled(const Scalar& c) const {
  GradedMap out(src_, tgt_, dn_, dm_);
  if (c.is_zero()) return out;
  for (const auto& [bd, b] : blocks_) out.blocks_.emplace(bd, b.scaled(c));
  return out;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
  return a.dn_ == b.dn_ && a.dm_ == b.dm_ && a.blocks_ == b.blocks_;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (!compatible(f.target(), g.source())) throw WindowError("compose: target of f is not the source of g");
  GradedMap out(f.source(), g.target(), f.dn() + g.dn(), f.dm() + g.dm());
  for (const auto& [bd, fb] : f.blocks()) {
    const SparseMatrix* gb = g.block(bd.n + f.dn(), bd.m + f.dm());
    if (!gb) continue;
    out.set_block(bd.n, bd.m, (*gb) * fb);
  }
  return out;
}

GradedMap add(const GradedMap& a, const GradedMap& b, const Scalar& ca, const Scalar& cb) {
  if (a.dn() != b.dn() || a.dm() != b.dm()) throw WindowError("add: bidegree mismatch");
  if (!compatible(a.source(), b.source()) || !compatible(a.target(), b.target()))
    throw WindowError("add: module mismatch");
  GradedMap out = a.scaled(ca);
  accumulate(out, b, cb);
  return out;
}

void accumulate(GradedMap& a, const GradedMap& b, const Scalar& c) {
  if (c.is_zero()) return;
  if (a.dn() != b.dn() || a.dm() != b.dm()) throw WindowError("accumulate: bidegree mismatch");
  const Scalar one = Scalar::one(a.ring());
  for (const auto& [bd, bb] : b.blocks()) {
    if (const SparseMatrix* ab = a.block(bd.n, bd.m))
      a.set_block(bd.n, bd.m, matrix_add(*ab, bb, one, c));
    else
      a.set_block(bd.n, bd.m, bb.scaled(c));
  }
}

std::vector<Bidegree> differing_blocks(const GradedMap& a, const GradedMap& b) {
  std::vector<Bidegree> out;
  for (const auto& [bd, ab] : a.blocks()) {
    const SparseMatrix* bb = b.block(bd.n, bd.m);
    if (!bb || *bb != ab) out.push_back(bd);
  }
  for (const auto& [bd, bb] : b.blocks())
    if (!a.block(bd.n, bd.m)) out.push_back(bd);
  return out;
}

GradedMap power_of_t(const OperatorFamily& t, int n, long e) {
  if (t.kind != OperatorFamily::Kind::CyclicT) throw WindowError("power_of_t needs the cyclic family");
  const long order = n + 1;
  long k = ((e % order) + order) % order;
  const GradedMap tn = t.map.restricted_to_level(n);
  GradedMap out(t.map.source(), t.map.target(), 0, 0);
  for (int m : t.map.source()->degrees_at(n)) {
    const int d = t.map.source()->dim(n, m);
    SparseMatrix acc = SparseMatrix::identity(t.map.ring(), d);
    const SparseMatrix step = tn.block_or_zero(n, m);
    for (long i = 0; i < k; ++i) acc = step * acc;
    out.set_block(n, m, std::move(acc));
  }
  return out;
}

Report check_operator_family(const OperatorFamily& fam) {
  Report rep;
  const bool cyclic = fam.kind == OperatorFamily::Kind::CyclicT;
  rep.subject = cyclic ? "t-family" : "r-family";
  const auto& x = fam.map.source();
  for (int n = 0; n <= x->window().max_simplicial; ++n) {
    for (int m : x->degrees_at(n)) {
      ++rep.checks;
      const SparseMatrix b = fam.map.block_or_zero(n, m);
      SparseMatrix p = SparseMatrix::identity(x->ring(), b.cols());
      const int order = cyclic ? n + 1 : 2;
      for (int i = 0; i < order; ++i) p = b * p;
      if (p != SparseMatrix::identity(x->ring(), b.cols()))
        rep.fail(cyclic ? "t-order" : "r-order", n, {}, "m=" + std::to_string(m));
    }
  }
  return rep;
}

Report check_rt_relation(const OperatorFamily& t, const OperatorFamily& r) {
  Report rep;
  rep.subject = "r t = t^-1 r";
  const auto& x = t.map.source();
  for (int n = 0; n <= x->window().max_simplicial; ++n) {
    const GradedMap tinv = power_of_t(t, n, -1);
    for (int m : x->degrees_at(n)) {
      ++rep.checks;
      const SparseMatrix rb = r.map.block_or_zero(n, m);
      if (rb * t.map.block_or_zero(n, m) != tinv.block_or_zero(n, m) * rb)
        rep.fail("rt", n, {}, "m=" + std::to_string(m));
    }
  }
  return rep;
}

ComponentFamily::ComponentFamily(ModulePtr source, ModulePtr target, int shift)
    : src_(std::move(source)), tgt_(std::move(target)), shift_(shift) {}

const GradedMap* ComponentFamily::get(int n, const Tuple& t) const {
  auto it = entries_.find({n, t});
  return it == entries_.end() ? nullptr : &it->second;
}

GradedMap ComponentFamily::zero_component(int n, const Tuple& t) const {
  (void)n;
  const int k = static_cast<int>(t.size());
  return GradedMap(src_, tgt_, -k, k + shift_);
}

GradedMap ComponentFamily::get_or_zero(int n, const Tuple& t) const {
  if (auto* g = get(n, t)) return *g;
  return zero_component(n, t);
}

void ComponentFamily::set(int n, const Tuple& t, GradedMap m) {
  const int k = static_cast<int>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || t[i] > n || (i && t[i] <= t[i - 1]))
      throw WindowError("component tuple " + tuple_string(t) + " invalid at level " + std::to_string(n));
  if (m.dn() != -k || m.dm() != k + shift_) throw WindowError("component has the wrong bidegree");
  for (const auto& [bd, b] : m.blocks())
    if (bd.n != n) throw WindowError("component block outside its level");
  if (m.is_zero())
    entries_.erase({n, t});
  else
    entries_[{n, t}] = std::move(m);
}

std::vector<Tuple> increasing_tuples(int n, int k) {
  std::vector<Tuple> out;
  if (k < 0 || k > n + 1) return out;
  Tuple cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace dih
