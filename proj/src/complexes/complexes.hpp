#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dihedral/dihedral.hpp"
#include "exactlin/linalg.hpp"

namespace dih {

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// X̄_s = ⊕_{p+m=s} X_{p,m}, cells stacked by increasing p.
class Folding {
 public:
  struct Cell {
    int n, m, offset, dim;
  };

  explicit Folding(ModulePtr x);

  const ModulePtr& module() const { return x_; }
  const Ring& ring() const { return x_->ring(); }
  // Folded degrees carrying a cell (empty range when hi < lo).
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  // X̄_s contains every cell of the untruncated module for s ≤ this.
  int complete_up_to() const { return complete_; }
  int dim(int s) const;
  int offset(int n, int m) const;
  const std::vector<Cell>& cells(int s) const;

 private:
  ModulePtr x_;
  int lo_ = 0, hi_ = -1, complete_ = -1;
  std::map<int, std::vector<Cell>> cells_;
  std::map<int, int> dims_;
};
using FoldingPtr = std::shared_ptr<const Folding>;

// Map X̄_s → Ȳ_{s+shift}, one matrix per source degree; missing blocks are zero.
struct FoldedMap {
  FoldingPtr source, target;
  int shift = 0;
  std::map<int, SparseMatrix> blocks;

  SparseMatrix block(int s) const;
};

FoldedMap folded_zero(const FoldingPtr& src, const FoldingPtr& tgt, int shift);
FoldedMap folded_identity(const FoldingPtr& x);
// Σ c_i g_i for bigraded maps of one common total degree.
FoldedMap fold_maps(const FoldingPtr& src, const FoldingPtr& tgt, int shift,
                    const std::vector<std::pair<GradedMap, Scalar>>& terms);
FoldedMap compose(const FoldedMap& g, const FoldedMap& f);
FoldedMap add(const FoldedMap& a, const FoldedMap& b, const Scalar& ca, const Scalar& cb);
FoldedMap scaled(const FoldedMap& a, const Scalar& c);
// Degrees (within both foldings' complete ranges) where a and b differ.
std::vector<int> differing_degrees(const FoldedMap& a, const FoldedMap& b);

// D∞-differential module: family[i] has bidegree (-i, i-1); family[0] = d.
struct DModule {
  ModulePtr carrier;
  std::vector<GradedMap> family;
};

// d_q^0 = d, d_q^k = Σ_{0 ≤ i_1 < .. < i_k ≤ n-q} (-1)^{i_1+..+i_k} ∂_{(i_1..i_k)}.
DModule build_d_family(const DFModule& x, int q);
// Σ_{i+j=k} d^i d^j = 0 for every k; tag "d-relation", level k.
Report check_d_module(const DModule& d);

// Same signed sum over the components of a morphism or homotopy family.
std::vector<GradedMap> component_sums(const ComponentFamily& fam, int q, int top);

struct FoldedComplex {
  FoldingPtr space;
  FoldedMap d;  // Σ_i d^i, shift -1
};
FoldedComplex fold(const DModule& d, const FoldingPtr& space);

// Operators on X̄: T_p = (-1)^p t_p, N = Σ_{j=0}^p T_p^j, R_p = (-1)^{p(p+1)/2} r_p.
struct CyclicOperators {
  FoldedMap T, N, R, RT;
};
CyclicOperators build_operators(const DFModule& x, const FoldingPtr& space);

struct Bicomplex {
  DFModulePtr module;
  FoldingPtr space;
  FoldedMap b, bprime;
  CyclicOperators ops;

  FoldedMap delta1(int m) const;  // b (m even), -b' (m odd)
  FoldedMap delta2(int m) const;  // from column m to m-1: 1-T̄ (m odd), N̄ (m even)
  FoldedMap theta(int m) const;   // (-1)^k R̄ (m = 2k), (-1)^{k+1} R̄T̄ (m = 2k+1)
  // The resolution differential from layer l to l-1 at (n, m), by the mod 4
  // table; n is the folded degree.
  FoldedMap delta3(int n, int m, int l) const;
};
Bicomplex build_bicomplex(const DFModulePtr& x);

// b², b'², the four operator relations, ϑ² = 1, ϑ-equivariance of δ1 and δ2,
// and δ1δ2 + δ2δ1 = 0, for columns m ≤ m_max.
Report check_bicomplex(const Bicomplex& bi, int m_max = 4);

// Chain complex with explicit cells; boundary[D]: C_D → C_{D-1}.
struct ChainComplex {
  enum class Kind { Cyclic, Dihedral };
  struct Slot {
    int s, m, l, offset, dim;  // folded degree, column, resolution layer
  };

  Kind kind = Kind::Dihedral;
  Ring ring;
  int lo = 0, hi = -1;  // degrees built
  int certified_hi = -1;  // homology is exact for lo ≤ D ≤ certified_hi
  std::map<int, int> dims;
  std::map<int, SparseMatrix> boundary;
  std::map<int, std::vector<Slot>> layout;

  int dim(int D) const;
  SparseMatrix boundary_at(int D) const;  // zero matrix when not stored
};

// Largest total degree whose homology the bicomplex window certifies.
int certified_bound(const Bicomplex& bi);
// Tot of the bicomplex (Cyclic) or of the triple complex (Dihedral) for
// degrees lo..top+1, certified up to top. Throws past the certified bound.
ChainComplex totalize(const Bicomplex& bi, ChainComplex::Kind kind, int top);
// ∂_{D-1} ∂_D = 0 for every built degree; tag "total-d2".
Report check_total(const ChainComplex& c);

// Degree-preserving (or +1 for homotopies) map between total complexes.
struct ChainMap {
  int shift = 0;
  std::map<int, SparseMatrix> blocks;  // source degree → matrix
};

// f̄_q = Σ_k Σ_{I ⊂ [0, n-q]} (-1)^{ΣI} f_I, folded.
FoldedMap fold_family(const ComponentFamily& fam, const FoldingPtr& src, const FoldingPtr& tgt, int q);

struct InducedMap {
  FoldedMap f0, f1;  // f̄_0, f̄_1
};
InducedMap induce_bicomplex_map(const DFMorphism& f, const Bicomplex& x, const Bicomplex& y);
// h̄_0, h̄_1; C(h) = (-1)^m h̄_{m mod 2}.
InducedMap induce_bicomplex_homotopy(const DFHomotopy& h, const Bicomplex& x, const Bicomplex& y);

// Chain-map identities for C(f): f̄_0 b = b f̄_0, f̄_1 b' = b' f̄_1,
// f̄_0(1-T̄) = (1-T̄)f̄_1, f̄_1 N̄ = N̄ f̄_0, f̄_0 R̄ = R̄ f̄_0, f̄_1 R̄T̄ = R̄T̄ f̄_1.
Report check_induced_map(const InducedMap& f, const Bicomplex& x, const Bicomplex& y);

ChainMap total_map(const InducedMap& f, const ChainComplex& src, const ChainComplex& tgt);
ChainMap total_homotopy(const InducedMap& h, const ChainComplex& src, const ChainComplex& tgt);
ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& mid);
bool same_map(const ChainMap& a, const ChainMap& b, const ChainComplex& src, const ChainComplex& tgt);
// ∂f = f∂ on every certified degree; tag "chain-map".
Report check_chain_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt);
// ∂h + h∂ = f - g; tag "chain-homotopy".
Report check_chain_homotopy(const ChainMap& h, const ChainMap& f, const ChainMap& g, const ChainComplex& src,
                            const ChainComplex& tgt);

struct HomologyGroup {
  int degree = 0;
  int rank = 0;                     // Betti number or free rank
  std::vector<mpz_class> torsion;   // invariant factors > 1 (integers only)
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyResult {
  Ring ring;
  int certified_hi = -1;
  std::vector<HomologyGroup> groups;
  std::string to_text() const;
};

// Homology in degrees lo..hi; throws ComplexError past the certified bound.
HomologyResult homology(const ChainComplex& c, int lo, int hi);
// Same numbers from the dense reference eliminations.
HomologyResult homology_dense(const ChainComplex& c, int lo, int hi);

struct InducedDegree {
  int degree = 0;
  int source_rank = 0, target_rank = 0;
  SparseMatrix matrix;  // target_rank x source_rank over fields; empty over Z
  bool isomorphism = false;
};

struct InducedHomology {
  std::vector<InducedDegree> degrees;
  bool isomorphism = true;  // every degree
  std::string to_text() const;
};

// H(f) in lo..hi. Over a field the matrix is taken in deterministic cycle
// bases; over the integers the verdict comes from the mapping cone, which
// must be acyclic in degrees D and D+1 (so hi + 1 must be certified on both
// sides).
InducedHomology induced_homology_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt, int lo,
                                     int hi);

}  // namespace dih
