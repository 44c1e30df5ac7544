#pragma once

#include <vector>

#include "exactlin/sparse.hpp"

namespace dih {

// Rank over a field (Rationals or PrimeField). Throws RingError over Integers.
int rank(const SparseMatrix& m);

// Invariant factors d_1 | d_2 | ... | d_r (all positive) of an integer matrix.
std::vector<mpz_class> smith_normal_form(const SparseMatrix& m);

// Basis of ker(m) as sparse column vectors. Over Integers the basis spans the
// saturated lattice ker(m) ∩ Z^cols.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);

// Incremental row echelon form over a field. Each stored row carries a tag
// vector so that callers can track which combination of inserted vectors a
// row represents (used for homology class bookkeeping).
class Echelon {
 public:
  Echelon(Ring ring, int dim, int tag_dim = 0);

  struct Reduced {
    SparseVec residual;
    SparseVec tag;  // tag of v minus the tags of the rows subtracted from it
  };
  // Full reduction of v against the stored rows.
  Reduced reduce(const SparseVec& v, const SparseVec& tag = {}) const;
  // Inserts v; returns false (and stores nothing) when v lies in the span.
  bool insert(const SparseVec& v, const SparseVec& tag = {});
  // Coefficients c_i with v - sum c_i row_i = residual; indexed by row order.
  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return dim_; }
  const Ring& ring() const { return ring_; }

 private:
  struct Row {
    SparseVec v;  // leading entry equals one
    SparseVec tag;
  };
  Ring ring_;
  int dim_;
  int tag_dim_;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;  // column -> row index or -1
};

// Dense reference implementations used as independent oracles in tests and in
// the acceptance suite. Fraction-free (Bareiss) elimination over Z and Q;
// plain elimination mod p.
int dense_rank_oracle(const SparseMatrix& m);
std::vector<mpz_class> dense_invariant_factors_oracle(const SparseMatrix& m);

}  // namespace dih
