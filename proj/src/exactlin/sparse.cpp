#include "exactlin/sparse.hpp"

#include <algorithm>
#include <sstream>

namespace dih {

SparseMatrix::SparseMatrix(Ring ring, int rows, int cols) : ring_(ring), rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

SparseMatrix SparseMatrix::identity(Ring ring, int n) {
  SparseMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.data_[i].push_back({i, Scalar::one(ring)});
  return m;
}

SparseMatrix SparseMatrix::from_dense(Ring ring, const std::vector<std::vector<long long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  MatrixBuilder b(ring, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw DimensionError("ragged dense matrix");
    for (int j = 0; j < c; ++j)
      if (rows[i][j]) b.add(i, j, Scalar::of(rows[i][j], ring));
  }
  return b.build();
}

SparseMatrix SparseMatrix::from_triplets(Ring ring, int rows, int cols, std::vector<Triplet> entries) {
  MatrixBuilder b(ring, rows, cols);
  for (auto& t : entries) b.add(t.row, t.col, t.val);
  return b.build();
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

bool SparseMatrix::is_zero() const {
  for (const auto& r : data_)
    if (!r.empty()) return false;
  return true;
}

Scalar SparseMatrix::at(int i, int j) const {
  const auto& r = data_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, int c) { return e.col < c; });
  if (it != r.end() && it->col == j) return it->val;
  return Scalar::zero(ring_);
}

std::vector<SparseMatrix::Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  for (int i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) out.push_back({i, e.col, e.val});
  return out;
}

void SparseMatrix::set_row(int i, SparseVec v) { data_.at(i) = std::move(v); }

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) t.data_[e.col].push_back({i, e.val});
  return t;
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
  if (c.is_zero()) return SparseMatrix(ring_, rows_, cols_);
  SparseMatrix m(*this);
  for (auto& r : m.data_)
    for (auto& e : r) e.val *= c;
  return m;
}

std::vector<std::vector<Scalar>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Scalar>> d(rows_, std::vector<Scalar>(cols_, Scalar::zero(ring_)));
  for (int i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) d[i][e.col] = e.val;
  return d;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (int i = 0; i < a.rows_; ++i) {
    const auto& x = a.data_[i];
    const auto& y = b.data_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].col != y[k].col || x[k].val != y[k].val) return false;
  }
  return true;
}

MatrixBuilder::MatrixBuilder(Ring ring, int rows, int cols) : ring_(ring), rows_(rows), cols_(cols), pending_(rows) {}

void MatrixBuilder::add(int row, int col, const Scalar& v) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw DimensionError("entry outside matrix");
  if (!v.is_zero()) pending_[row].push_back({col, v});
}

SparseMatrix MatrixBuilder::build() {
  SparseMatrix m(ring_, rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    auto& r = pending_[i];
    std::stable_sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    SparseVec merged;
    merged.reserve(r.size());
    for (auto& e : r) {
      if (!merged.empty() && merged.back().col == e.col)
        merged.back().val += e.val;
      else
        merged.push_back(std::move(e));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Entry& e) { return e.val.is_zero(); }),
                 merged.end());
    m.set_row(i, std::move(merged));
  }
  pending_.assign(rows_, {});
  return m;
}

Accumulator::Accumulator(Ring ring, int size)
    : zero_(Scalar::zero(ring)), vals_(size, zero_), mark_(size, 0) {}

void Accumulator::add(int idx, const Scalar& v) {
  if (!mark_[idx]) {
    mark_[idx] = 1;
    touched_.push_back(idx);
  }
  vals_[idx] += v;
}

void Accumulator::add_mul(int idx, const Scalar& a, const Scalar& b) {
  if (!mark_[idx]) {
    mark_[idx] = 1;
    touched_.push_back(idx);
  }
  vals_[idx].add_mul(a, b);
}

SparseVec Accumulator::flush() {
  std::sort(touched_.begin(), touched_.end());
  SparseVec out;
  out.reserve(touched_.size());
  for (int idx : touched_) {
    if (!vals_[idx].is_zero()) out.push_back({idx, std::move(vals_[idx])});
    vals_[idx] = zero_;
    mark_[idx] = 0;
  }
  touched_.clear();
  return out;
}

SparseMatrix matrix_multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix_multiply: " + describe(a) + " times " + describe(b));
  if (a.ring() != b.ring()) throw RingError("matrix_multiply: ring mismatch");
  SparseMatrix out(a.ring(), a.rows(), b.cols());
  if (a.rows() == 0 || b.cols() == 0) return out;
  Accumulator acc(a.ring(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    const auto& ra = a.row(i);
    if (ra.empty()) continue;
    for (const auto& ea : ra)
      for (const auto& eb : b.row(ea.col)) acc.add_mul(eb.col, ea.val, eb.val);
    out.set_row(i, acc.flush());
  }
  return out;
}

SparseMatrix matrix_add(const SparseMatrix& a, const SparseMatrix& b, const Scalar& ca, const Scalar& cb) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix_add: " + describe(a) + " vs " + describe(b));
  if (a.ring() != b.ring()) throw RingError("matrix_add: ring mismatch");
  SparseMatrix out(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    const auto& x = a.row(i);
    const auto& y = b.row(i);
    SparseVec r;
    r.reserve(x.size() + y.size());
    std::size_t p = 0, q = 0;
    while (p < x.size() || q < y.size()) {
      if (q == y.size() || (p < x.size() && x[p].col < y[q].col)) {
        Scalar v = x[p].val * ca;
        if (!v.is_zero()) r.push_back({x[p].col, std::move(v)});
        ++p;
      } else if (p == x.size() || y[q].col < x[p].col) {
        Scalar v = y[q].val * cb;
        if (!v.is_zero()) r.push_back({y[q].col, std::move(v)});
        ++q;
      } else {
        Scalar v = x[p].val * ca;
        v.add_mul(y[q].val, cb);
        if (!v.is_zero()) r.push_back({x[p].col, std::move(v)});
        ++p;
        ++q;
      }
    }
    out.set_row(i, std::move(r));
  }
  return out;
}

void place_block(MatrixBuilder& out, const SparseMatrix& block, int r0, int c0, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  for (int i = 0; i < block.rows(); ++i)
    for (const auto& e : block.row(i)) out.add(r0 + i, c0 + e.col, e.val * coeff);
}

SparseVec vec_axpy(const SparseVec& x, const Scalar& a, const SparseVec& y) {
  SparseVec r;
  r.reserve(x.size() + y.size());
  std::size_t p = 0, q = 0;
  while (p < x.size() || q < y.size()) {
    if (q == y.size() || (p < x.size() && x[p].col < y[q].col)) {
      r.push_back(x[p++]);
    } else if (p == x.size() || y[q].col < x[p].col) {
      Scalar v = y[q].val * a;
      if (!v.is_zero()) r.push_back({y[q].col, std::move(v)});
      ++q;
    } else {
      Scalar v = x[p].val;
      v.add_mul(a, y[q].val);
      if (!v.is_zero()) r.push_back({x[p].col, std::move(v)});
      ++p;
      ++q;
    }
  }
  return r;
}

SparseVec mat_vec(const SparseMatrix& m, const SparseVec& v) {
  SparseVec out;
  for (int i = 0; i < m.rows(); ++i) {
    const auto& r = m.row(i);
    Scalar s = Scalar::zero(m.ring());
    std::size_t p = 0, q = 0;
    while (p < r.size() && q < v.size()) {
      if (r[p].col < v[q].col)
        ++p;
      else if (v[q].col < r[p].col)
        ++q;
      else
        s.add_mul(r[p++].val, v[q++].val);
    }
    if (!s.is_zero()) out.push_back({i, std::move(s)});
  }
  return out;
}

std::string describe(const SparseMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols() << " over " << m.ring().name();
  return os.str();
}

}  // namespace dih
