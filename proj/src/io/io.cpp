#include "io/io.hpp"

#include <fstream>
#include <sstream>

namespace dih::io {

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void fail(const std::string& ptr, const std::string& what) { throw ParseError(ptr, what); }

const json& need(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object() || !j.contains(key)) fail(ptr, "missing field '" + key + "'");
  return j.at(key);
}

std::string need_string(const json& j, const std::string& ptr) {
  if (!j.is_string()) fail(ptr, "expected a string");
  return j.get<std::string>();
}

int need_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) fail(ptr, "expected an integer");
  return j.get<int>();
}

Scalar parse_scalar(const json& j, const Ring& ring, const std::string& ptr) {
  try {
    if (j.is_number_integer()) return Scalar::of(j.get<long long>(), ring);
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), ring);
  } catch (const RingError& e) {
    fail(ptr, e.what());
  }
  fail(ptr, "scalars are integers or strings such as \"3\", \"-2/5\"");
}

struct Names {
  std::map<std::string, int> index;
  int at(const json& j, const std::string& ptr) const {
    const std::string n = need_string(j, ptr);
    auto it = index.find(n);
    if (it == index.end()) fail(ptr, "unknown generator '" + n + "'");
    return it->second;
  }
};

Names names_of(const AInftyAlgebra& a) {
  Names n;
  for (int i = 0; i < a.size(); ++i) n.index[a.names[i]] = i;
  return n;
}

// One sparse entry: {"input": .., "output": .., "scalar": ..} or [input, output, scalar].
struct Entry3 {
  Tuple input;
  int output;
  Scalar c;
};

Entry3 parse_entry(const json& e, const Names& in, const Names& out, const Ring& ring, const std::string& ptr) {
  json input, output, scalar = 1;
  if (e.is_array()) {
    if (e.size() < 2 || e.size() > 3) fail(ptr, "entries are [input, output, scalar]");
    input = e[0];
    output = e[1];
    if (e.size() == 3) scalar = e[2];
  } else if (e.is_object()) {
    input = need(e, "input", ptr);
    output = need(e, "output", ptr);
    if (e.contains("scalar")) scalar = e.at("scalar");
  } else {
    fail(ptr, "expected an entry object or array");
  }
  Entry3 r{{}, out.at(output, ptr + "/output"), parse_scalar(scalar, ring, ptr + "/scalar")};
  if (input.is_array()) {
    for (std::size_t i = 0; i < input.size(); ++i) r.input.push_back(in.at(input[i], ptr + "/input/" + std::to_string(i)));
  } else {
    r.input.push_back(in.at(input, ptr + "/input"));
  }
  return r;
}

// {"n": [entries]} with arity n + arity_shift and degree n + degree_shift.
std::map<int, MultiOp> parse_family(const json& j, const AInftyAlgebra& src, const AInftyAlgebra& tgt,
                                    int arity_shift, int degree_shift, const std::string& ptr, int& max_index) {
  if (!j.is_object()) fail(ptr, "expected an object keyed by operation index");
  std::map<int, MultiOp> out;
  const Names in = names_of(src), nm = names_of(tgt);
  for (const auto& [key, list] : j.items()) {
    const std::string p = ptr + "/" + key;
    int n;
    try {
      std::size_t used = 0;
      n = std::stoi(key, &used);
      if (used != key.size() || n < 0) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(p, "operation index must be a non-negative integer");
    }
    if (!list.is_array()) fail(p, "expected a list of entries");
    MultiOp op{n + arity_shift, n + degree_shift, {}};
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string q = p + "/" + std::to_string(i);
      const Entry3 e = parse_entry(list[i], in, nm, src.ring, q);
      if (static_cast<int>(e.input.size()) != op.arity)
        fail(q, "expected " + std::to_string(op.arity) + " inputs at index " + std::to_string(n));
      if (tgt.degree[e.output] != src.degree_of(e.input) + op.degree)
        fail(q, "entry has the wrong degree for index " + std::to_string(n));
      add_to(op.table[e.input], e.output, e.c);
    }
    std::erase_if(op.table, [](const auto& kv) { return kv.second.empty(); });
    max_index = std::max(max_index, n);
    out[n] = std::move(op);
  }
  return out;
}

AlgebraPtr parse_algebra(const json& j, const Ring& ring, int reach, const std::string& ptr, int& max_op) {
  AInftyAlgebra a;
  a.ring = ring;
  const json& gens = need(j, "generators", ptr);
  if (!gens.is_array()) fail(ptr + "/generators", "expected a list");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string p = ptr + "/generators/" + std::to_string(i);
    const std::string name = need_string(need(gens[i], "name", p), p + "/name");
    if (std::find(a.names.begin(), a.names.end(), name) != a.names.end()) fail(p, "duplicate generator '" + name + "'");
    a.names.push_back(name);
    a.degree.push_back(need_int(need(gens[i], "degree", p), p + "/degree"));
    a.d.emplace_back();
    a.star.push_back(Vec{{static_cast<int>(i), Scalar::one(ring)}});
  }
  const Names nm = names_of(a);
  auto linear = [&](const char* field, std::vector<Vec>& into, int shift, bool replace) {
    if (!j.contains(field)) return;
    const json& list = j.at(field);
    const std::string p = ptr + "/" + field;
    if (!list.is_array()) fail(p, "expected a list of entries");
    std::vector<char> seen(a.size(), 0);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string q = p + "/" + std::to_string(i);
      const Entry3 e = parse_entry(list[i], nm, nm, ring, q);
      if (e.input.size() != 1) fail(q, "expected a single input generator");
      if (a.degree[e.output] != a.degree[e.input[0]] + shift) fail(q, "entry has the wrong degree");
      Vec& v = into[e.input[0]];
      if (replace && !seen[e.input[0]]) v.clear();
      seen[e.input[0]] = 1;
      add_to(v, e.output, e.c);
    }
  };
  linear("differential", a.d, -1, false);
  linear("involution", a.star, 0, true);
  int listed = 0;
  if (j.contains("operations")) a.ops = parse_family(j.at("operations"), a, a, 2, 0, ptr + "/operations", listed);
  max_op = std::max(max_op, listed);
  int bound = listed;
  if (j.contains("arity_bound")) bound = std::max(bound, need_int(j.at("arity_bound"), ptr + "/arity_bound"));
  a.arity_bound = std::max(bound, reach);
  try {
    a.validate();
  } catch (const std::exception& e) {
    fail(ptr, e.what());
  }
  return std::make_shared<AInftyAlgebra>(std::move(a));
}

AlgebraPtr algebra_ref(const Document& doc, const json& j, const std::string& ptr) {
  const std::string name = need_string(j, ptr);
  auto it = doc.algebras.find(name);
  if (it == doc.algebras.end()) fail(ptr, "unknown algebra '" + name + "'");
  return it->second;
}

// "name", "id:ALG" or "g*f" (right to left).
std::shared_ptr<const AInftyMorphism> morphism_ref(const Document& doc, const std::string& ref, const std::string& ptr) {
  if (auto star = ref.find('*'); star != std::string::npos) {
    const auto g = morphism_ref(doc, ref.substr(0, star), ptr);
    const auto f = morphism_ref(doc, ref.substr(star + 1), ptr);
    if (f->target != g->source) fail(ptr, "'" + ref + "' is not composable");
    return std::make_shared<AInftyMorphism>(compose_ainfty(*g, *f));
  }
  if (ref.rfind("id:", 0) == 0) {
    auto it = doc.algebras.find(ref.substr(3));
    if (it == doc.algebras.end()) fail(ptr, "unknown algebra in '" + ref + "'");
    return std::make_shared<AInftyMorphism>(identity_ainfty(it->second));
  }
  auto it = doc.morphisms.find(ref);
  if (it == doc.morphisms.end()) fail(ptr, "unknown morphism '" + ref + "'");
  return it->second;
}

// A singular section is shorthand for one entry under `short_name`.
template <class F>
void each_named(const json& root, const char* plural, const char* singular, const char* short_name, F&& fn) {
  if (root.contains(plural)) {
    if (!root.at(plural).is_object()) fail(std::string("/") + plural, "expected an object of named entries");
    for (const auto& [name, v] : root.at(plural).items()) fn(name, v, std::string("/") + plural + "/" + name);
  }
  if (root.contains(singular)) fn(std::string(short_name), root.at(singular), std::string("/") + singular);
}

std::string scalar_text(const Scalar& s) { return s.to_string(); }

json entries_of(const AInftyAlgebra& src, const AInftyAlgebra& tgt, const MultiOp& op) {
  json list = json::array();
  for (const auto& [key, v] : op.table)
    for (const auto& [b, c] : v) {
      json in = json::array();
      for (int x : key) in.push_back(src.names[x]);
      list.push_back({{"input", in}, {"output", tgt.names[b]}, {"scalar", scalar_text(c)}});
    }
  return list;
}

}  // namespace

Document parse_document(const std::string& text, const std::optional<Ring>& ring, int reach) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_col(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
  if (!root.is_object()) fail("/", "expected a JSON object");
  Document doc;
  if (ring) {
    doc.ring = *ring;
  } else if (root.contains("ring")) {
    try {
      doc.ring = Ring::parse(need_string(root.at("ring"), "/ring"));
    } catch (const RingError& e) {
      fail("/ring", e.what());
    }
  } else {
    fail("/", "no ring given in the document or on the command line");
  }

  each_named(root, "algebras", "algebra", "A", [&](const std::string& name, const json& j, const std::string& ptr) {
    doc.algebras[name] = parse_algebra(j, doc.ring, reach, ptr, doc.max_op_index);
  });

  each_named(root, "morphisms", "morphism", "f", [&](const std::string& name, const json& j, const std::string& ptr) {
    const AlgebraPtr src = algebra_ref(doc, need(j, "source", ptr), ptr + "/source");
    const AlgebraPtr tgt = algebra_ref(doc, need(j, "target", ptr), ptr + "/target");
    auto f = std::make_shared<AInftyMorphism>(AInftyMorphism{src, tgt, {}, 0});
    int listed = 0;
    f->comps = parse_family(need(j, "components", ptr), *src, *tgt, 1, 0, ptr + "/components", listed);
    doc.max_component_index = std::max(doc.max_component_index, listed);
    f->bound = std::max(listed, reach) + 1;
    if (j.contains("bound")) f->bound = std::max(f->bound, need_int(j.at("bound"), ptr + "/bound"));
    doc.morphisms[name] = f;
  });

  each_named(root, "homotopies", "homotopy", "h", [&](const std::string& name, const json& j, const std::string& ptr) {
    const auto f = morphism_ref(doc, need_string(need(j, "from", ptr), ptr + "/from"), ptr + "/from");
    int listed = 0;
    auto comps = parse_family(need(j, "components", ptr), *f->source, *f->target, 1, 1, ptr + "/components", listed);
    doc.max_component_index = std::max(doc.max_component_index, listed);
    const int bound = std::max(listed, reach) + 1;
    std::shared_ptr<const AInftyMorphism> g;
    if (j.contains("to")) {
      g = morphism_ref(doc, need_string(j.at("to"), ptr + "/to"), ptr + "/to");
      if (g->source != f->source || g->target != f->target) fail(ptr + "/to", "endpoints have different algebras");
    } else {
      g = solve_endpoint(f, comps, std::min(f->bound, bound));
    }
    doc.homotopies[name] = AInftyHomotopy{f, g, std::move(comps), bound};
  });

  each_named(root, "group_modules", "group_module", "X", [&](const std::string& name, const json& j, const std::string& ptr) {
    GroupModuleSpec s;
    s.group = need_string(need(j, "group", ptr), ptr + "/group");
    if (s.group != "cyclic" && s.group != "dihedral") fail(ptr + "/group", "expected \"cyclic\" or \"dihedral\"");
    s.order = need_int(need(j, "order", ptr), ptr + "/order");
    if (s.order < 1) fail(ptr + "/order", "order must be positive");
    if (j.contains("coefficients")) s.coefficients = need_string(j.at("coefficients"), ptr + "/coefficients");
    if (s.coefficients != "trivial" && s.coefficients != "acyclic")
      fail(ptr + "/coefficients", "expected \"trivial\" or \"acyclic\"");
    doc.group_modules[name] = s;
  });
  return doc;
}

Document load_document(const std::string& path, const std::optional<Ring>& ring, int reach) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str(), ring, reach);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

json algebra_to_json(const AInftyAlgebra& a) {
  json j;
  j["generators"] = json::array();
  for (int i = 0; i < a.size(); ++i) j["generators"].push_back({{"name", a.names[i]}, {"degree", a.degree[i]}});
  auto linear = [&](const std::vector<Vec>& m, bool skip_identity) {
    json list = json::array();
    for (int i = 0; i < a.size(); ++i) {
      if (skip_identity && m[i].size() == 1 && m[i].begin()->first == i && m[i].begin()->second.is_one()) continue;
      for (const auto& [b, c] : m[i]) list.push_back({{"input", a.names[i]}, {"output", a.names[b]}, {"scalar", scalar_text(c)}});
    }
    return list;
  };
  j["differential"] = linear(a.d, false);
  j["involution"] = linear(a.star, true);
  j["operations"] = json::object();
  for (const auto& [n, op] : a.ops) j["operations"][std::to_string(n)] = entries_of(a, a, op);
  j["arity_bound"] = a.arity_bound;
  return j;
}

json morphism_to_json(const AInftyMorphism& f, const std::string& source, const std::string& target) {
  json j{{"source", source}, {"target", target}, {"bound", f.bound}, {"components", json::object()}};
  for (const auto& [n, op] : f.comps) j["components"][std::to_string(n)] = entries_of(*f.source, *f.target, op);
  return j;
}

json homotopy_components_to_json(const AInftyHomotopy& h) {
  json j = json::object();
  for (const auto& [n, op] : h.comps) j[std::to_string(n)] = entries_of(*h.f->source, *h.f->target, op);
  return j;
}

json report_to_json(const Report& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"relation", x.relation}, {"level", x.level}, {"tuple", x.tuple}, {"where", x.where}});
  return {{"subject", r.subject}, {"checks", r.checks}, {"ok", r.ok()}, {"violations", v}};
}

DFModulePtr build_group_module(const GroupModuleSpec& spec, const Ring& ring, int top) {
  const FiniteGroup g = spec.group == "cyclic" ? FiniteGroup::cyclic(spec.order) : FiniteGroup::dihedral(spec.order);
  CoefficientComplex c = trivial_coefficients(ring);
  if (spec.coefficients == "acyclic")
    c = CoefficientComplex{0, {1, 1}, {SparseMatrix(ring, 0, 1), SparseMatrix::identity(ring, 1)}};
  return group_bar_module(g, c, ring, top);
}

}  // namespace dih::io
