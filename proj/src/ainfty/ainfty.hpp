#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "common/report.hpp"
#include "exactlin/scalar.hpp"

namespace dih {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Element of A by generator index, and element of a tensor power by basis tuple.
using Vec = std::map<int, Scalar>;
using TensorVec = std::map<Tuple, Scalar>;

void add_to(Vec& v, int key, const Scalar& c);
void add_to(TensorVec& v, const Tuple& key, const Scalar& c);

// Multilinear map given on basis tuples. Missing tuples map to zero.
struct MultiOp {
  int arity = 1;
  int degree = 0;
  std::map<Tuple, Vec> table;

  const Vec* at(const Tuple& key) const;
  bool is_zero() const { return table.empty(); }
};

struct AInftyAlgebra {
  Ring ring;
  std::vector<std::string> names;
  std::vector<int> degree;
  std::vector<Vec> d;       // degree -1
  std::map<int, MultiOp> ops;  // π_n: arity n+2, degree n
  std::vector<Vec> star;    // involution, degree 0
  int arity_bound = 0;      // π_n = 0 for n > arity_bound

  int size() const { return static_cast<int>(names.size()); }
  int degree_of(const Tuple& key) const;
  const MultiOp* pi(int n) const;
  void validate() const;
  // Basis tuples of length len, lexicographic in generator index.
  std::vector<Tuple> tuples(int len) const;
  int max_degree() const;
  int min_degree() const;
};
using AlgebraPtr = std::shared_ptr<const AInftyAlgebra>;

// f_n: arity n+1, degree n; components above `bound` are zero.
struct AInftyMorphism {
  AlgebraPtr source, target;
  std::map<int, MultiOp> comps;
  int bound = 0;
  const MultiOp* at(int n) const;
};

// h_n: arity n+1, degree n+1, between f and g.
struct AInftyHomotopy {
  std::shared_ptr<const AInftyMorphism> f, g;
  std::map<int, MultiOp> comps;
  int bound = 0;
  const MultiOp* at(int n) const;
};

// (op_1 ⊗ ... ⊗ op_r)(key); a null op is the identity on one factor. op_j
// passes the inputs of the earlier blocks, contributing (-1)^{|op_j|·passed}.
TensorVec apply_tensor(const AInftyAlgebra& src, const std::vector<const MultiOp*>& ops, const Tuple& key);
Vec apply_op(const MultiOp& op, const TensorVec& x);
Vec apply_vec_map(const std::vector<Vec>& m, const Vec& x);
// Leibniz differential on a tensor: Σ (-1)^{|a_0..a_{i-1}|} a_0 ⊗ .. ⊗ d a_i ⊗ ..
TensorVec tensor_differential(const AInftyAlgebra& a, const Tuple& key);
// Star applied factorwise to the tuple, without reordering.
TensorVec star_tensor(const AInftyAlgebra& a, const Tuple& key);

// ε(n_1..n_r) = Σ_i (n_i + 1)(n_{i+1} + .. + n_r).
int eps_j(const std::vector<int>& ns);
// Compositions of total into exactly parts nonnegative summands.
std::vector<std::vector<int>> compositions(int total, int parts);
// Reversal sign exponent for an op of arity a on key: (a-2)(a-1)/2 + Σ_{i<j}|a_i||a_j|.
int reversal_exponent(const AInftyAlgebra& a, const Tuple& key);

// Relations are checked for n = -1 .. up_to (default: largest n whose terms
// all lie within the stored arity bounds). Violation tags name the relation.
Report verify_ainfty(const AInftyAlgebra& a, int up_to = -2);
Report verify_involution(const AInftyAlgebra& a);
Report verify_star_op(const AInftyAlgebra& src, const AInftyAlgebra& tgt, const MultiOp& op, const std::string& tag);
Report verify_ainfty_morphism(const AInftyMorphism& f, int up_to = -2);
Report verify_ainfty_homotopy(const AInftyHomotopy& h, int up_to = -2);

AInftyMorphism identity_ainfty(const AlgebraPtr& a);
AInftyMorphism compose_ainfty(const AInftyMorphism& g, const AInftyMorphism& f);

// Transports the structure of A along f_0 = id, f_1 = phi, f_n = 0 (n ≥ 2):
// returns B with π' chosen so that f: A → B is an A∞-morphism up to `bound`.
struct Transfer {
  AlgebraPtr algebra;
  std::shared_ptr<const AInftyMorphism> morphism;
};
Transfer transfer_along(const AlgebraPtr& a, const MultiOp& phi, int bound);

// Given f and components h, the unique g for which h: f ⇒ g holds.
std::shared_ptr<const AInftyMorphism> solve_endpoint(const std::shared_ptr<const AInftyMorphism>& f,
                                                     const std::map<int, MultiOp>& h, int bound);

// op + S(op), S(op)(a) = (-1)^ε op(a*_r, .., a*_0)*; S is an involution, so
// the result satisfies the star-reversal condition.
MultiOp symmetrize(const AInftyAlgebra& src, const AInftyAlgebra& tgt, const MultiOp& op);

}  // namespace dih
