#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "exactlin/scalar.hpp"

namespace dih {

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Entry {
  int col;
  Scalar val;
};

// Sparse vector: entries sorted by index, no stored zeros.
using SparseVec = std::vector<Entry>;

// Row-major sparse matrix with sorted rows and no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Ring ring, int rows, int cols);

  static SparseMatrix identity(Ring ring, int n);
  static SparseMatrix zero(Ring ring, int rows, int cols) { return SparseMatrix(ring, rows, cols); }
  static SparseMatrix from_dense(Ring ring, const std::vector<std::vector<long long>>& rows);
  struct Triplet {
    int row, col;
    Scalar val;
  };
  static SparseMatrix from_triplets(Ring ring, int rows, int cols, std::vector<Triplet> entries);

  const Ring& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVec& row(int i) const { return data_[i]; }
  std::size_t nnz() const;
  bool is_zero() const;
  Scalar at(int i, int j) const;
  std::vector<Triplet> triplets() const;

  // Replaces row i; entries must be sorted and nonzero.
  void set_row(int i, SparseVec v);

  SparseMatrix transpose() const;
  SparseMatrix scaled(const Scalar& c) const;
  std::vector<std::vector<Scalar>> to_dense() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

 private:
  Ring ring_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVec> data_;
};

// Accumulates (row, col, value) contributions and produces a canonical matrix.
class MatrixBuilder {
 public:
  MatrixBuilder(Ring ring, int rows, int cols);
  void add(int row, int col, const Scalar& v);
  SparseMatrix build();
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  Ring ring_;
  int rows_, cols_;
  std::vector<SparseVec> pending_;
};

SparseMatrix matrix_multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix matrix_add(const SparseMatrix& a, const SparseMatrix& b, const Scalar& ca, const Scalar& cb);
inline SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) { return matrix_multiply(a, b); }
inline SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  return matrix_add(a, b, Scalar::one(a.ring()), Scalar::one(a.ring()));
}
inline SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  return matrix_add(a, b, Scalar::one(a.ring()), -Scalar::one(a.ring()));
}

// Block matrix assembly: places `block` with its top-left corner at (r0, c0).
void place_block(MatrixBuilder& out, const SparseMatrix& block, int r0, int c0, const Scalar& coeff);

// Sparse vector helpers.
SparseVec vec_axpy(const SparseVec& x, const Scalar& a, const SparseVec& y);  // x + a*y
SparseVec mat_vec(const SparseMatrix& m, const SparseVec& v);                 // m * v
std::string describe(const SparseMatrix& m);

// Dense scatter accumulator used by products and eliminations.
class Accumulator {
 public:
  Accumulator(Ring ring, int size);
  void add(int idx, const Scalar& v);
  void add_mul(int idx, const Scalar& a, const Scalar& b);
  const Scalar& get(int idx) const { return vals_[idx]; }
  void clear_entry(int idx) { vals_[idx] = zero_; }
  // Extracts sorted nonzero entries and resets the accumulator.
  SparseVec flush();
  const std::vector<int>& touched() const { return touched_; }

 private:
  Scalar zero_;
  std::vector<Scalar> vals_;
  std::vector<char> mark_;
  std::vector<int> touched_;
};

}  // namespace dih
