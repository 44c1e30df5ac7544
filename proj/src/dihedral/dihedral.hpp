#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "common/report.hpp"
#include "graded/graded.hpp"
#include "sface/sface.hpp"

namespace dih {

class DFError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (X, d, ∂, t, r). d has bidegree (0,-1), faces (-k, k-1).
struct DFModule {
  ModulePtr carrier;
  GradedMap d;
  FaceFamily faces;
  OperatorFamily t;
  OperatorFamily r;

  int top() const { return carrier->window().max_simplicial; }
};
using DFModulePtr = std::shared_ptr<const DFModule>;

// Components f_I of bidegree (-k, k), keyed by level and tuple (empty included).
struct DFMorphism {
  DFModulePtr source, target;
  ComponentFamily comps;
};

// Components h_I of bidegree (-k, k+1) from f to g.
struct DFHomotopy {
  std::shared_ptr<const DFMorphism> f, g;
  ComponentFamily comps;
};

// Structural checks on the module itself, each tagged:
// "d2", "t-order", "r-order", "rt", "dt", "dr", "faces", "t-faces", "r-faces".
Report verify_df_module(const DFModule& x);

// "morph", "t-morph", and unless cyclic_only, "r-morph".
Report verify_df_morphism(const DFMorphism& f, bool cyclic_only = false);

// "homotopy", "t-homotopy", "r-homotopy".
Report verify_df_homotopy(const DFHomotopy& h);

DFMorphism identity_df(const DFModulePtr& x);
// g after f, component by component through the composition expansion.
DFMorphism compose_df(const DFMorphism& g, const DFMorphism& f);
// Componentwise equality on every (level, tuple) of the window.
bool same_components(const ComponentFamily& a, const ComponentFamily& b);

DFHomotopy zero_homotopy(const std::shared_ptr<const DFMorphism>& f);
// -h runs from g back to f.
DFHomotopy homotopy_negate(const DFHomotopy& h);
// h: f ⇒ g and H: g ⇒ p give h + H: f ⇒ p.
DFHomotopy homotopy_add(const DFHomotopy& h, const DFHomotopy& H);

// Finite group given by its multiplication table on 0..|G|-1.
struct FiniteGroup {
  std::vector<std::vector<int>> mul;
  int size() const { return static_cast<int>(mul.size()); }
  int identity() const;
  int inverse(int g) const;
  static FiniteGroup cyclic(int order);
  static FiniteGroup dihedral(int sides);  // order 2*sides
};

// Coefficient chain complex C_lo..C_hi with differential C_m → C_{m-1}.
struct CoefficientComplex {
  int lo = 0;
  std::vector<int> dims;                 // dims[m - lo]
  std::vector<SparseMatrix> boundaries;  // boundaries[m - lo]: C_m → C_{m-1}; the first is unused
};

// The strict dihedral module k[G^{n+1}] ⊗ C: ∂_i multiplies g_i g_{i+1}
// (∂_n wraps g_n g_0), t rotates, r(g_0..g_n) = (g_0^{-1}, g_n^{-1}, .., g_1^{-1}),
// d = (-1)^n ⊗ d_C. Higher faces are zero.
DFModulePtr group_bar_module(const FiniteGroup& g, const CoefficientComplex& c, Ring ring, int top);
CoefficientComplex trivial_coefficients(Ring ring);
// The strict morphism induced by a homomorphism phi: G → H (f_() = phi^{⊗(n+1)} ⊗ 1).
DFMorphism group_bar_morphism(const DFModulePtr& x, const DFModulePtr& y, const FiniteGroup& gx,
                              const FiniteGroup& gy, const std::vector<int>& phi);

}  // namespace dih
