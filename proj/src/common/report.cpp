#include "common/report.hpp"

#include <map>
#include <sstream>

namespace dih {

std::string tuple_string(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

void Report::merge(const Report& other) {
  checks += other.checks;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::size_t Report::count(const std::string& relation) const {
  std::size_t c = 0;
  for (const auto& v : violations)
    if (v.relation == relation) ++c;
  return c;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << subject << ": " << (ok() ? "PASS" : "FAIL") << " (" << checks << " checks, " << violations.size()
     << " violations)\n";
  std::map<std::string, std::size_t> by_tag;
  for (const auto& v : violations) ++by_tag[v.relation];
  for (const auto& [tag, c] : by_tag) os << "  " << tag << ": " << c << "\n";
  for (const auto& v : violations) {
    os << "  [" << v.relation << "]";
    if (v.level >= 0) os << " n=" << v.level;
    if (!v.tuple.empty() || v.level >= 0) os << " tuple=" << tuple_string(v.tuple);
    if (!v.where.empty()) os << " " << v.where;
    os << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace dih
