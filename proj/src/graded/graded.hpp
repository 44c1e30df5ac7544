#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "common/report.hpp"
#include "exactlin/sparse.hpp"

namespace dih {

class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Levels 0..max_simplicial, internal degrees m_lo..m_hi. An optional bound on
// n + m drops cells that no requested total degree can reach.
struct Window {
  int max_simplicial = 0;
  int m_lo = 0;
  int m_hi = 0;
  int max_total = -1;  // -1: unbounded

  bool contains(int n, int m) const {
    return n >= 0 && n <= max_simplicial && m >= m_lo && m <= m_hi && (max_total < 0 || n + m <= max_total);
  }
  void validate() const;
  friend bool operator==(const Window&, const Window&) = default;
};

struct Bidegree {
  int n = 0, m = 0;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

class BigradedModule {
 public:
  BigradedModule(Ring ring, Window window);

  const Ring& ring() const { return ring_; }
  const Window& window() const { return window_; }
  int dim(int n, int m) const;
  void set_dim(int n, int m, int d);
  void set_labels(int n, int m, std::vector<std::string> labels);
  const std::vector<std::string>* labels(int n, int m) const;
  // Internal degrees carrying a nonzero summand at level n.
  std::vector<int> degrees_at(int n) const;
  const std::map<Bidegree, int>& dims() const { return dims_; }

  bool same_shape(const BigradedModule& o) const { return ring_ == o.ring_ && dims_ == o.dims_; }

 private:
  Ring ring_;
  Window window_;
  std::map<Bidegree, int> dims_;
  std::map<Bidegree, std::vector<std::string>> labels_;
};

using ModulePtr = std::shared_ptr<const BigradedModule>;

// Linear map of fixed bidegree between bigraded modules, stored as one sparse
// block per source bidegree (target dim x source dim). Missing blocks are zero;
// blocks whose target falls outside the window are dropped.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(ModulePtr source, ModulePtr target, int dn, int dm);

  static GradedMap identity(ModulePtr x);

  const ModulePtr& source() const { return src_; }
  const ModulePtr& target() const { return tgt_; }
  int dn() const { return dn_; }
  int dm() const { return dm_; }
  const Ring& ring() const { return src_->ring(); }

  const SparseMatrix* block(int n, int m) const;
  // The block at (n, m), or an explicit zero matrix of the right shape.
  SparseMatrix block_or_zero(int n, int m) const;
  void set_block(int n, int m, SparseMatrix b);
  const std::map<Bidegree, SparseMatrix>& blocks() const { return blocks_; }

  bool is_zero() const { return blocks_.empty(); }
  // Keeps only blocks whose source lies at level n.
  GradedMap restricted_to_level(int n) const;
  GradedMap scaled(const Scalar& c) const;

  friend bool operator==(const GradedMap& a, const GradedMap& b);

 private:
  ModulePtr src_, tgt_;
  int dn_ = 0, dm_ = 0;
  std::map<Bidegree, SparseMatrix> blocks_;
};

bool compatible(const ModulePtr& a, const ModulePtr& b);

// g after f.
GradedMap compose(const GradedMap& g, const GradedMap& f);
GradedMap add(const GradedMap& a, const GradedMap& b, const Scalar& ca, const Scalar& cb);
// Accumulates c*b into a (same source, target and bidegree).
void accumulate(GradedMap& a, const GradedMap& b, const Scalar& c);
// Source bidegrees where a and b differ; empty when equal.
std::vector<Bidegree> differing_blocks(const GradedMap& a, const GradedMap& b);

// Level-preserving operator families t = {t_n} and r = {r_n}.
struct OperatorFamily {
  enum class Kind { CyclicT, DihedralR };
  Kind kind = Kind::CyclicT;
  GradedMap map;  // bidegree (0,0)
};

// t_n^e restricted to level n, with e reduced mod n+1 (so t^{-q} = t^{n+1-q}).
GradedMap power_of_t(const OperatorFamily& t, int n, long e);

// Order, involution and r t = t^{-1} r checks for one family or a pair.
Report check_operator_family(const OperatorFamily& fam);
Report check_rt_relation(const OperatorFamily& t, const OperatorFamily& r);

// Component families indexed by (level, strictly increasing tuple). The
// k-component has bidegree (-k, k + shift): shift = -1 for faces, 0 for
// morphism components, +1 for homotopy components.
class ComponentFamily {
 public:
  ComponentFamily() = default;
  ComponentFamily(ModulePtr source, ModulePtr target, int shift);

  const ModulePtr& source() const { return src_; }
  const ModulePtr& target() const { return tgt_; }
  int shift() const { return shift_; }

  const GradedMap* get(int n, const Tuple& t) const;
  // Stored component or the zero map of the right bidegree.
  GradedMap get_or_zero(int n, const Tuple& t) const;
  void set(int n, const Tuple& t, GradedMap m);
  GradedMap zero_component(int n, const Tuple& t) const;
  const std::map<std::pair<int, Tuple>, GradedMap>& entries() const { return entries_; }

 private:
  ModulePtr src_, tgt_;
  int shift_ = 0;
  std::map<std::pair<int, Tuple>, GradedMap> entries_;
};

using FaceFamily = ComponentFamily;

// All strictly increasing k-subsets of {0..n}.
std::vector<Tuple> increasing_tuples(int n, int k);

}  // namespace dih
