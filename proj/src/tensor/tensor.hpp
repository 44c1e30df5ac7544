#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "ainfty/ainfty.hpp"
#include "dihedral/dihedral.hpp"

namespace dih {

// Runs of a strictly increasing tuple at level n, with the data used by the
// face family and by induced components.
struct TupleShape {
  enum class Kind { Empty, Interior, Wraparound };
  // How the face family treats the tuple: a single π block, a rotated block,
  // or zero.
  enum class FaceCase { Block, RotatedBlock, Annihilated };

  Kind kind = Kind::Empty;
  FaceCase face = FaceCase::Annihilated;
  std::vector<Tuple> runs;
  // Interior: ks has s+1 entries (f_0 counts between and around the runs),
  // ns the run lengths, gamma = Σ n_i (n_{i+1} + .. + n_s).
  std::vector<int> ks, ns;
  int gamma = 0;
  // Wraparound: suffix run length q, z = q + prefix length, the middle runs
  // and the rebased tuple (0..z-1) ∪ (middle runs + q).
  int q = 0, z = 0;
  std::vector<Tuple> middle;
  Tuple rebased;
  int s() const { return static_cast<int>(kind == Kind::Wraparound ? middle.size() : ns.size()); }
};

TupleShape classify_tuple(const Tuple& t, int n);
// Rebuilds the tuple from an interior shape's (ks, ns) or a wraparound shape's
// (q, z, middle) data.
Tuple tuple_from_shape(const TupleShape& shape, int n);

struct TensorModule {
  AlgebraPtr algebra;
  DFModulePtr df;
  std::map<Bidegree, std::vector<Tuple>> basis;
  std::map<Tuple, int> position;  // within the cell fixed by length and degree

  int index_of(const Tuple& key) const;
};
using TensorModulePtr = std::shared_ptr<const TensorModule>;

// M(A) on levels 0..top; max_total bounds n + m as in Window.
TensorModulePtr build_tensor_df(const AlgebraPtr& a, int top, int max_total = -1);

// Elementwise structure maps of M(A) on one basis tensor.
TensorVec tensor_t(const AInftyAlgebra& a, const Tuple& key);
TensorVec tensor_r(const AInftyAlgebra& a, const Tuple& key);
TensorVec tensor_face(const AInftyAlgebra& a, int n, const Tuple& I, const Tuple& key);

// Matrix of a level-n map given elementwise, source cells at level n.
using ElementMap = std::function<TensorVec(const Tuple&)>;
GradedMap assemble(const TensorModule& src, const TensorModule& tgt, int n, int dn, int dm, const ElementMap& fn);

// Elementwise induced components.
TensorVec induced_morphism_apply(const AInftyMorphism& f, int n, const Tuple& I, const Tuple& key);
TensorVec induced_homotopy_apply(const AInftyHomotopy& h, int n, const Tuple& I, const Tuple& key);

DFMorphism induce_df_morphism(const AInftyMorphism& f, const TensorModulePtr& src, const TensorModulePtr& tgt);
DFHomotopy induce_df_homotopy(const AInftyHomotopy& h, const TensorModulePtr& src, const TensorModulePtr& tgt);

// M(gf) against compose_df(M(g), M(f)), componentwise; tag "functor".
Report functoriality_check(const AInftyMorphism& f, const AInftyMorphism& g, const TensorModulePtr& a,
                           const TensorModulePtr& b, const TensorModulePtr& c);

}  // namespace dih
