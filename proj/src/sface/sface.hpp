#pragma once

#include <optional>
#include <string>
#include <vector>

#include "common/report.hpp"
#include "graded/graded.hpp"

namespace dih {

// An index entry i_var + offset, or a plain integer when var < 0.
struct IndexExpr {
  int var = -1;
  int offset = 0;
  friend auto operator<=>(const IndexExpr&, const IndexExpr&) = default;
};
using SymTuple = std::vector<IndexExpr>;

enum class SymbolKind { Face, MorphF, MorphG, Homotopy };

struct Factor {
  SymbolKind kind;
  SymTuple tuple;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

// coeff * left∘right, or coeff * left when right is absent.
struct FormalTerm {
  int coeff = 1;
  Factor left;
  std::optional<Factor> right;
};

class FormalExpression {
 public:
  // Adds a term, merging with an existing term on the same factors.
  void add(const FormalTerm& t);
  const std::vector<FormalTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool is_concrete() const;

  // Substitutes values for the index variables.
  FormalExpression instantiate(const Tuple& values) const;
  // Positive terms first, otherwise in generation order; symbols as ∂, f, g, h.
  std::string render(const std::vector<std::string>& names = {}) const;

  // Multiset equality after canonicalization.
  friend bool operator==(const FormalExpression& a, const FormalExpression& b);

 private:
  std::vector<FormalTerm> terms_;
};

// (σ̂(i_1), ..., σ̂(i_k)) for the rearrangement (tuple[sigma[0]], ...).
Tuple hat_tuple(const std::vector<int>& sigma, const Tuple& tuple);

// One admissible partition: the left and right hatted halves and the parity
// of the underlying permutation. Right halves never change under hatting.
struct Partition {
  SymTuple left, right;
  int parity = 0;
};
// Partitions of the symbolic k-tuple (i_0 < ... < i_{k-1}) with left size in
// [m_lo, m_hi], generated directly from the subset of entries sent left.
std::vector<Partition> partitions(int k, int m_lo, int m_hi);
// The literal definition at a concrete tuple: every permutation, every cut,
// keep cuts whose hatted halves are strictly increasing. Used as an oracle.
struct ConcretePartition {
  Tuple left, right;
  int parity = 0;
};
std::vector<ConcretePartition> partitions_bruteforce(const Tuple& t, int m_lo, int m_hi);

// Symbolic right-hand sides for a generic increasing k-tuple. The concrete
// overloads instantiate them at a given tuple.
FormalExpression expand_face_relation(int k);
FormalExpression expand_morphism_relation(int k);
FormalExpression expand_composition(int k);
FormalExpression expand_homotopy_relation(int k);
FormalExpression expand_face_relation(const Tuple& t);
FormalExpression expand_morphism_relation(const Tuple& t);
FormalExpression expand_composition(const Tuple& t);
FormalExpression expand_homotopy_relation(const Tuple& t);

// Component families substituted for each symbol. A face on the left of a
// product belongs to the target, a face on the right to the source.
struct Bindings {
  const ComponentFamily* face_left = nullptr;
  const ComponentFamily* face_right = nullptr;
  const ComponentFamily* f = nullptr;
  const ComponentFamily* g = nullptr;
  const ComponentFamily* h = nullptr;
};

class BindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adds the value of a concrete expression at level n into acc.
void evaluate_into(GradedMap& acc, const FormalExpression& expr, const Bindings& b, int n);
GradedMap evaluate_expression(const FormalExpression& expr, const Bindings& b, int n, GradedMap zero);

// d∂_I + ∂_I d against the expanded right-hand side for every (n, I) in the
// window; d is a (0,-1) map on the faces' module.
Report verify_finfty(const GradedMap& d, const FaceFamily& faces);

// Records each bidegree where lhs and rhs differ as a violation.
void compare_into(Report& rep, const std::string& relation, int n, const Tuple& t, const GradedMap& lhs,
                  const GradedMap& rhs);

}  // namespace dih
