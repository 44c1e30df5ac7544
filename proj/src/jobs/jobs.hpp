#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complexes/complexes.hpp"

namespace dih::jobs {

enum Status { Ok = 0, Violations = 1, InputError = 2 };

struct Options {
  std::optional<Ring> ring;  // overrides the document
  int truncate = -1;         // N; -1 picks the smallest admissible value
  int lo = 0, hi = 4;
  ChainComplex::Kind kind = ChainComplex::Kind::Dihedral;
  bool json = false;
  bool oracle = false;       // homology: also run the dense eliminations
  std::string subject;       // algebra or group module; empty means the only one
  std::string f = "f", g = "g", h_gf = "h_gf", h_fg = "h_fg";
};

struct Result {
  int status = Ok;
  std::string output;
};

// A document's label (usually its path) and its JSON text.
using Labeled = std::pair<std::string, std::string>;

// Jobs read documents as text and never throw.
Result verify(const std::vector<Labeled>& documents, const Options& o);
Result homology(const std::string& document, const Options& o);
Result induced_map(const std::string& document, const Options& o);
Result invariance_check(const std::string& document, const Options& o);
// kind: face, morphism, composition, homotopy; tuple like "(i,j)" or "(1,3)".
Result expand(const std::string& kind, const std::string& tuple, const Options& o);

// "2..6" or "4".
bool parse_degrees(const std::string& text, int& lo, int& hi);

}  // namespace dih::jobs
