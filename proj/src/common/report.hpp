#pragma once

#include <string>
#include <vector>

namespace dih {

using Tuple = std::vector<int>;

std::string tuple_string(const Tuple& t);

// One failed relation instance. `relation` is a short tag such as "faces",
// "t-compat" or "pi"; `where` carries level/tuple or input-tensor detail.
struct Violation {
  std::string relation;
  int level = -1;
  Tuple tuple;
  std::string where;
};

// Exhaustive verification outcome. Reports never stop at the first failure.
struct Report {
  std::string subject;
  long checks = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  void fail(std::string relation, int level, Tuple tuple, std::string where = {}) {
    violations.push_back({std::move(relation), level, std::move(tuple), std::move(where)});
  }
  void merge(const Report& other);
  // Number of violations carrying the given relation tag.
  std::size_t count(const std::string& relation) const;
  std::string to_text() const;
};

}  // namespace dih
