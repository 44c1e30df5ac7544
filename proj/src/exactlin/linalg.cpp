#include "exactlin/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <stdexcept>

namespace dih {

namespace {

// Right-looking sparse elimination with a Markowitz-style pivot choice.
// In unit mode only entries equal to +-1 may serve as pivots, which keeps the
// Schur complement integral and preserves the Smith form of the remainder.
class Eliminator {
 public:
  Eliminator(const SparseMatrix& m, bool unit_only)
      : ring_(m.ring()), unit_only_(unit_only), rows_(m.rows()), alive_(m.rows(), 1), colrows_(m.cols()) {
    for (int i = 0; i < m.rows(); ++i) {
      rows_[i] = m.row(i);
      for (const auto& e : rows_[i]) colrows_[e.col].push_back(i);
    }
  }

  int run() {
    for (;;) {
      std::vector<int> order;
      for (int i = 0; i < static_cast<int>(rows_.size()); ++i)
        if (alive_[i] && !rows_[i].empty()) order.push_back(i);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return rows_[a].size() < rows_[b].size(); });
      int made = 0;
      for (int r : order) {
        if (!alive_[r] || rows_[r].empty()) continue;
        int best = -1;
        std::size_t best_cost = SIZE_MAX;
        for (std::size_t k = 0; k < rows_[r].size(); ++k) {
          const auto& e = rows_[r][k];
          if (unit_only_ && !e.val.is_unit_integer()) continue;
          const std::size_t cost = colrows_[e.col].size();
          if (cost < best_cost) {
            best_cost = cost;
            best = static_cast<int>(k);
          }
        }
        if (best < 0) continue;
        pivot(r, best);
        ++made;
      }
      if (!made) break;
    }
    return pivots_;
  }

  // Remaining nonempty rows after elimination.
  std::vector<SparseVec> remainder() const {
    std::vector<SparseVec> out;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (alive_[i] && !rows_[i].empty()) out.push_back(rows_[i]);
    return out;
  }

 private:
  static const Scalar* find(const SparseVec& v, int col) {
    auto it = std::lower_bound(v.begin(), v.end(), col, [](const Entry& e, int c) { return e.col < c; });
    return (it != v.end() && it->col == col) ? &it->val : nullptr;
  }

  void pivot(int p, int k) {
    const int c = rows_[p][k].col;
    const Scalar inv = unit_only_ ? rows_[p][k].val : rows_[p][k].val.inverse();
    alive_[p] = 0;
    ++pivots_;
    std::vector<int> targets;
    targets.swap(colrows_[c]);
    const SparseVec& prow = rows_[p];
    for (int i : targets) {
      if (i == p || !alive_[i]) continue;
      const Scalar* a = find(rows_[i], c);
      if (!a) continue;
      Scalar factor = -(*a * inv);
      rows_[i] = axpy_tracking(i, rows_[i], factor, prow);
    }
  }

  // x + a*y, registering row `owner` under columns that newly appear.
  SparseVec axpy_tracking(int owner, const SparseVec& x, const Scalar& a, const SparseVec& y) {
    SparseVec r;
    r.reserve(x.size() + y.size());
    std::size_t p = 0, q = 0;
    while (p < x.size() || q < y.size()) {
      if (q == y.size() || (p < x.size() && x[p].col < y[q].col)) {
        r.push_back(x[p++]);
      } else if (p == x.size() || y[q].col < x[p].col) {
        Scalar v = y[q].val * a;
        if (!v.is_zero()) {
          colrows_[y[q].col].push_back(owner);
          r.push_back({y[q].col, std::move(v)});
        }
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

  Ring ring_;
  bool unit_only_;
  std::vector<SparseVec> rows_;
  std::vector<char> alive_;
  std::vector<std::vector<int>> colrows_;
  int pivots_ = 0;
};

using DenseZ = std::vector<std::vector<mpz_class>>;

// Smith form of a dense integer matrix by pivoting on the smallest entry.
std::vector<mpz_class> dense_snf(DenseZ a) {
  std::vector<mpz_class> out;
  const std::size_t r = a.size();
  const std::size_t c = r ? a[0].size() : 0;
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      std::size_t bi = r, bj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a[i][j] != 0 && (bi == r || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == r) return out;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      bool clean = true;
      const mpz_class piv = a[t][t];
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), piv.get_mpz_t());
        for (std::size_t j = t; j < c; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), piv.get_mpz_t());
        for (std::size_t i = t; i < r; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a[i][j] % piv != 0) {
            for (std::size_t jj = t; jj < c; ++jj) a[t][jj] += a[i][jj];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

DenseZ to_dense_z(const std::vector<SparseVec>& rows, int cols_hint = -1) {
  std::vector<int> cols;
  for (const auto& r : rows)
    for (const auto& e : r) cols.push_back(e.col);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  (void)cols_hint;
  DenseZ d(rows.size(), std::vector<mpz_class>(cols.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& e : rows[i]) {
      auto j = std::lower_bound(cols.begin(), cols.end(), e.col) - cols.begin();
      d[i][j] = e.val.to_mpz();
    }
  return d;
}

// Extended gcd step on two integers: returns (g, s, t, u, v) with
// [s t; u v] unimodular and s*a + t*b = g, u*a + v*b = 0.
struct Bezout {
  mpz_class g, s, t, u, v;
};
Bezout bezout(const mpz_class& a, const mpz_class& b) {
  Bezout r;
  // Keep row a in place when it already divides b; gcdext would swap rows
  // when |a| = |b|, which stalls alternating reductions.
  if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    r.g = abs(a);
    r.s = sgn(a);
    r.t = 0;
    r.u = -b / a;
    r.v = 1;
    return r;
  }
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r.g == 0) {
    r.s = 1;
    r.t = 0;
    r.u = 0;
    r.v = 1;
    return r;
  }
  r.u = -b / r.g;
  r.v = a / r.g;
  return r;
}

std::vector<SparseVec> integer_kernel(const SparseMatrix& m) {
  const int r = m.rows(), n = m.cols();
  DenseZ a(r, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < r; ++i)
    for (const auto& e : m.row(i)) a[i][e.col] = e.val.to_mpz();
  DenseZ u(n, std::vector<mpz_class>(n, 0));
  for (int j = 0; j < n; ++j) u[j][j] = 1;
  auto colop = [&](int j1, int j2, const Bezout& b) {
    // new col j1 = s*c1 + t*c2 ; new col j2 = u*c1 + v*c2
    for (int i = 0; i < r; ++i) {
      mpz_class x = a[i][j1], y = a[i][j2];
      a[i][j1] = b.s * x + b.t * y;
      a[i][j2] = b.u * x + b.v * y;
    }
    for (int i = 0; i < n; ++i) {
      mpz_class x = u[i][j1], y = u[i][j2];
      u[i][j1] = b.s * x + b.t * y;
      u[i][j2] = b.u * x + b.v * y;
    }
  };
  int k = 0;
  for (int i = 0; i < r && k < n; ++i) {
    for (int j = k + 1; j < n; ++j) {
      if (a[i][j] == 0) continue;
      colop(k, j, bezout(a[i][k], a[i][j]));
    }
    if (a[i][k] != 0) ++k;
  }
  std::vector<SparseVec> out;
  const Ring ring = m.ring();
  for (int j = k; j < n; ++j) {
    SparseVec v;
    for (int i = 0; i < n; ++i)
      if (u[i][j] != 0) v.push_back({i, Scalar(mpq_class(u[i][j]), ring.modulus())});
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

int rank(const SparseMatrix& m) {
  if (!m.ring().is_field()) throw RingError("rank: use smith_normal_form over the integers");
  Eliminator e(m.rows() <= m.cols() ? m : m.transpose(), false);
  return e.run();
}

std::vector<mpz_class> smith_normal_form(const SparseMatrix& m) {
  if (m.ring().kind != Ring::Kind::Integers) throw RingError("smith_normal_form requires the integers");
  Eliminator e(m.rows() <= m.cols() ? m : m.transpose(), true);
  const int units = e.run();
  std::vector<mpz_class> rest = dense_snf(to_dense_z(e.remainder()));
  std::vector<mpz_class> out(units, 1);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  if (!m.ring().is_field()) return integer_kernel(m);
  const int n = m.cols();
  const SparseMatrix t = m.transpose();
  Echelon ech(m.ring(), m.rows(), n);
  std::vector<SparseVec> out;
  for (int j = 0; j < n; ++j) {
    SparseVec tag{{j, Scalar::one(m.ring())}};
    auto red = ech.reduce(t.row(j), tag);
    if (red.residual.empty())
      out.push_back(std::move(red.tag));
    else
      ech.insert(red.residual, red.tag);
  }
  return out;
}

Echelon::Echelon(Ring ring, int dim, int tag_dim)
    : ring_(ring), dim_(dim), tag_dim_(tag_dim), pivot_row_(dim, -1) {
  if (!ring.is_field()) throw RingError("Echelon requires a field");
}

Echelon::Reduced Echelon::reduce(const SparseVec& v, const SparseVec& tag) const {
  // Columns are processed in increasing order: every stored row has its
  // entries at or after its pivot, so a column never reappears once passed.
  std::map<int, Scalar> acc;
  for (const auto& e : v) acc.emplace(e.col, e.val);
  std::map<int, Scalar> tacc;
  for (const auto& e : tag) tacc.emplace(e.col, e.val);
  SparseVec residual;
  while (!acc.empty()) {
    auto it = acc.begin();
    const int c = it->first;
    Scalar a = std::move(it->second);
    acc.erase(it);
    if (a.is_zero()) continue;
    const int pr = pivot_row_[c];
    if (pr < 0) {
      residual.push_back({c, std::move(a)});
      continue;
    }
    const Scalar f = -a;
    const Row& row = rows_[pr];
    for (std::size_t k = 1; k < row.v.size(); ++k) {
      auto [pos, fresh] = acc.try_emplace(row.v[k].col, Scalar::zero(ring_));
      pos->second.add_mul(f, row.v[k].val);
    }
    for (const auto& e : row.tag) {
      auto [pos, fresh] = tacc.try_emplace(e.col, Scalar::zero(ring_));
      pos->second.add_mul(f, e.val);
    }
  }
  Reduced out;
  out.residual = std::move(residual);
  for (auto& [c, s] : tacc)
    if (!s.is_zero()) out.tag.push_back({c, s});
  return out;
}

bool Echelon::insert(const SparseVec& v, const SparseVec& tag) {
  Reduced red = reduce(v, tag);
  if (red.residual.empty()) return false;
  const Scalar inv = red.residual.front().val.inverse();
  for (auto& e : red.residual) e.val *= inv;
  for (auto& e : red.tag) e.val *= inv;
  pivot_row_[red.residual.front().col] = static_cast<int>(rows_.size());
  rows_.push_back({std::move(red.residual), std::move(red.tag)});
  return true;
}

int dense_rank_oracle(const SparseMatrix& m) {
  const int r = m.rows(), c = m.cols();
  if (m.ring().kind == Ring::Kind::PrimeField) {
    const long long p = m.ring().p;
    std::vector<std::vector<long long>> a(r, std::vector<long long>(c, 0));
    for (int i = 0; i < r; ++i)
      for (const auto& e : m.row(i)) a[i][e.col] = e.val.small_value();
    int rk = 0;
    for (int j = 0; j < c && rk < r; ++j) {
      int piv = -1;
      for (int i = rk; i < r; ++i)
        if (a[i][j] % p) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(a[rk], a[piv]);
      long long inv = Scalar(a[rk][j], static_cast<std::uint32_t>(p)).inverse().small_value();
      for (int i = rk + 1; i < r; ++i) {
        long long f = (a[i][j] % p) * inv % p;
        if (!f) continue;
        for (int jj = j; jj < c; ++jj) a[i][jj] = ((a[i][jj] - f * a[rk][jj]) % p + p) % p;
      }
      ++rk;
    }
    return rk;
  }
  // Integer rows (rational rows are scaled by their denominators).
  DenseZ a(r, std::vector<mpz_class>(c, 0));
  for (int i = 0; i < r; ++i) {
    mpz_class l = 1;
    for (const auto& e : m.row(i)) {
      mpz_class den = e.val.to_mpq().get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    for (const auto& e : m.row(i)) {
      mpq_class q = e.val.to_mpq() * l;
      a[i][e.col] = q.get_num();
    }
  }
  // Fraction-free: row_i ← (p/g)·row_i − (a_ij/g)·row_k, then divide out the
  // row content. Rows with a zero in the pivot column are left alone.
  int rk = 0;
  for (int j = 0; j < c && rk < r; ++j) {
    int piv = -1;
    for (int i = rk; i < r; ++i)
      if (a[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rk], a[piv]);
    std::vector<int> support;
    for (int jj = j + 1; jj < c; ++jj)
      if (a[rk][jj] != 0) support.push_back(jj);
    for (int i = rk + 1; i < r; ++i) {
      if (a[i][j] == 0) continue;
      mpz_class g, pk, qi;
      mpz_gcd(g.get_mpz_t(), a[rk][j].get_mpz_t(), a[i][j].get_mpz_t());
      mpz_divexact(pk.get_mpz_t(), a[rk][j].get_mpz_t(), g.get_mpz_t());
      mpz_divexact(qi.get_mpz_t(), a[i][j].get_mpz_t(), g.get_mpz_t());
      a[i][j] = 0;
      if (pk != 1)
        for (int jj = j + 1; jj < c; ++jj)
          if (a[i][jj] != 0) a[i][jj] *= pk;
      for (int jj : support) a[i][jj] -= qi * a[rk][jj];
      mpz_class content = 0;
      for (int jj = j + 1; jj < c && content != 1; ++jj)
        if (a[i][jj] != 0) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), a[i][jj].get_mpz_t());
      if (content > 1)
        for (int jj = j + 1; jj < c; ++jj)
          if (a[i][jj] != 0) mpz_divexact(a[i][jj].get_mpz_t(), a[i][jj].get_mpz_t(), content.get_mpz_t());
    }
    ++rk;
  }
  return rk;
}

std::vector<mpz_class> dense_invariant_factors_oracle(const SparseMatrix& m) {
  // Alternate row Hermite reductions on A and its transpose until diagonal.
  DenseZ a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& e : m.row(i)) a[i][e.col] = e.val.to_mpz();
  auto row_reduce = [](DenseZ& x) {
    const std::size_t r = x.size();
    const std::size_t c = r ? x[0].size() : 0;
    std::size_t k = 0;
    for (std::size_t j = 0; j < c && k < r; ++j) {
      for (std::size_t i = k + 1; i < r; ++i) {
        if (x[i][j] == 0) continue;
        Bezout b = bezout(x[k][j], x[i][j]);
        for (std::size_t jj = j; jj < c; ++jj) {
          mpz_class p = x[k][jj], q = x[i][jj];
          x[k][jj] = b.s * p + b.t * q;
          x[i][jj] = b.u * p + b.v * q;
        }
      }
      if (x[k][j] != 0) ++k;
    }
  };
  auto transpose = [](const DenseZ& x) {
    const std::size_t r = x.size();
    const std::size_t c = r ? x[0].size() : 0;
    DenseZ t(c, std::vector<mpz_class>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) t[j][i] = x[i][j];
    return t;
  };
  // Done once every row and column holds at most one nonzero entry.
  auto monomial = [](const DenseZ& x) {
    std::vector<int> per_col(x.empty() ? 0 : x[0].size(), 0);
    for (const auto& row : x) {
      int per_row = 0;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0 && (++per_row > 1 || ++per_col[j] > 1)) return false;
    }
    return true;
  };
  for (int guard = 0; !monomial(a); ++guard) {
    row_reduce(a);
    a = transpose(a);
    if (guard > 10000) throw std::runtime_error("invariant factor oracle did not converge");
  }
  std::vector<mpz_class> d;
  for (const auto& row : a)
    for (const auto& v : row)
      if (v != 0) d.push_back(abs(v));
  // Normalize to a divisibility chain via gcd/lcm exchanges.
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
  return d;
}

}  // namespace dih
