#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "ainfty/ainfty.hpp"
#include "common/report.hpp"
#include "dihedral/dihedral.hpp"
#include "json.hpp"

namespace dih::io {

using nlohmann::json;

// Malformed input. `where` is "line L, column C" for syntax errors and a
// JSON pointer for semantic ones.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// A strict dihedral module built from a finite group (trivial or acyclic
// two-term coefficients).
struct GroupModuleSpec {
  std::string group;  // "cyclic" or "dihedral"
  int order = 1;      // cyclic order, or number of sides
  std::string coefficients = "trivial";
};

struct Document {
  Ring ring;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, std::shared_ptr<const AInftyMorphism>> morphisms;
  std::map<std::string, AInftyHomotopy> homotopies;
  std::map<std::string, GroupModuleSpec> group_modules;
  // Highest operation and component index listed anywhere; relations above
  // the levels these reach hold trivially.
  int max_op_index = 0;
  int max_component_index = 0;
};

// Operations and components not listed are zero. `reach` raises every arity
// bound (and morphism bound) so that levels up to reach can be built.
// `ring` overrides the document's ring.
Document parse_document(const std::string& text, const std::optional<Ring>& ring = std::nullopt, int reach = 0);
Document load_document(const std::string& path, const std::optional<Ring>& ring = std::nullopt, int reach = 0);

json algebra_to_json(const AInftyAlgebra& a);
json morphism_to_json(const AInftyMorphism& f, const std::string& source, const std::string& target);
json homotopy_components_to_json(const AInftyHomotopy& h);
json report_to_json(const Report& r);

DFModulePtr build_group_module(const GroupModuleSpec& spec, const Ring& ring, int top);

}  // namespace dih::io
