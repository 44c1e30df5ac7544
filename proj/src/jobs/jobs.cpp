#include "jobs/jobs.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "io/io.hpp"
#include "sface/sface.hpp"
#include "tensor/tensor.hpp"

namespace dih::jobs {

namespace {

using io::json;

class InputFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Levels past which every relation holds trivially, given that unlisted
// operations and components vanish.
int algebra_level(const io::Document& d) { return 2 * d.max_op_index + 1; }
int map_level(const io::Document& d) {
  const int k = d.max_op_index;
  return k + (k + 2) * (d.max_component_index + 1) + 1;
}

io::Document load(const std::string& text, const Options& o, int reach) {
  const io::Document probe = io::parse_document(text, o.ring, 0);
  int need = std::max(reach, algebra_level(probe) + 1);
  if (!probe.morphisms.empty() || !probe.homotopies.empty()) need = std::max(need, map_level(probe) + 1);
  return io::parse_document(text, o.ring, need);
}

struct Collected {
  std::vector<Report> reports;
  bool ok() const {
    for (const auto& r : reports)
      if (!r.ok()) return false;
    return true;
  }
  void add(Report r, const std::string& subject) {
    r.subject = subject + (r.subject.empty() ? "" : ": " + r.subject);
    reports.push_back(std::move(r));
  }
  std::string text() const {
    std::string s;
    for (const auto& r : reports) s += r.to_text();
    return s;
  }
  json to_json() const {
    json a = json::array();
    for (const auto& r : reports) a.push_back(io::report_to_json(r));
    return a;
  }
};

Report star_report(const AInftyAlgebra& src, const AInftyAlgebra& tgt, const std::map<int, MultiOp>& comps,
                   const std::string& tag) {
  Report rep;
  rep.subject = "star compatibility";
  for (const auto& [n, op] : comps) rep.merge(verify_star_op(src, tgt, op, tag));
  return rep;
}

void check_algebra(Collected& c, const std::string& name, const AInftyAlgebra& a, const io::Document& d) {
  c.add(verify_ainfty(a, algebra_level(d)), "algebra " + name);
  c.add(verify_involution(a), "algebra " + name);
}

void check_morphism(Collected& c, const std::string& name, const AInftyMorphism& f, const io::Document& d) {
  c.add(verify_ainfty_morphism(f, map_level(d)), "morphism " + name);
  c.add(star_report(*f.source, *f.target, f.comps, "star-f"), "morphism " + name);
}

void check_homotopy(Collected& c, const std::string& name, const AInftyHomotopy& h, const io::Document& d) {
  c.add(verify_ainfty_homotopy(h, map_level(d)), "homotopy " + name);
  c.add(star_report(*h.f->source, *h.f->target, h.comps, "star-h"), "homotopy " + name);
}

std::string kind_name(ChainComplex::Kind k) { return k == ChainComplex::Kind::Cyclic ? "cyclic" : "dihedral"; }

template <class Map>
std::string pick(const Map& m, const std::string& wanted, const char* what) {
  if (!wanted.empty()) {
    if (!m.count(wanted)) throw InputFailure(std::string("no ") + what + " named '" + wanted + "'");
    return wanted;
  }
  if (m.size() != 1) throw InputFailure(std::string("name the ") + what + " to use (found " + std::to_string(m.size()) + ")");
  return m.begin()->first;
}

void check_range(const Options& o) {
  if (o.lo < 0 || o.hi < o.lo) throw InputFailure("degree range must satisfy 0 <= lo <= hi");
}

int truncation(const Options& o, int extra) {
  const int need = o.hi + 1 + extra;
  if (o.truncate < 0) return need;
  if (o.truncate < need)
    throw InputFailure("truncation N = " + std::to_string(o.truncate) + " is below " + std::to_string(need) +
                       ", the smallest value certifying degree " + std::to_string(o.hi + extra));
  return o.truncate;
}

Result failed_input(const std::string& what, const Options& o) {
  Result r{InputError, ""};
  if (o.json) {
    r.output = json{{"status", "error"}, {"error", what}}.dump(2) + "\n";
  } else {
    r.output = "error: " + what + "\n";
  }
  return r;
}

Result violations(const std::string& command, const Collected& c, const Options& o, const std::string& headline) {
  Result r{Violations, ""};
  if (o.json) {
    r.output = json{{"command", command}, {"status", "violations"}, {"message", headline}, {"reports", c.to_json()}}.dump(2) + "\n";
  } else {
    r.output = headline + "\n" + c.text();
  }
  return r;
}

template <class F>
Result guarded(const Options& o, F&& body) {
  try {
    return body();
  } catch (const io::ParseError& e) {
    return failed_input(std::string("parse error at ") + e.what(), o);
  } catch (const std::exception& e) {
    return failed_input(e.what(), o);
  }
}

json group_json(const HomologyGroup& g) {
  json t = json::array();
  for (const auto& x : g.torsion) t.push_back(x.get_str());
  return {{"degree", g.degree}, {"rank", g.rank}, {"torsion", t}};
}

std::string group_text(const HomologyGroup& g) {
  std::string s = "H_" + std::to_string(g.degree) + ": rank " + std::to_string(g.rank);
  if (!g.torsion.empty()) {
    s += ", invariant factors";
    for (const auto& t : g.torsion) s += " " + t.get_str();
  }
  return s + "\n";
}

bool same_tables(const AInftyMorphism& a, const AInftyMorphism& b, int up_to) {
  for (int n = 0; n <= up_to; ++n) {
    const MultiOp* x = a.at(n);
    const MultiOp* y = b.at(n);
    const bool xe = !x || x->is_zero(), ye = !y || y->is_zero();
    if (xe != ye || (!xe && x->table != y->table)) return false;
  }
  return true;
}

struct InducedRun {
  InducedHomology map;
  int certified = 0;
};

// HD(f) or HC(f) through tensor modules at truncation N.
InducedRun induced_run(const AInftyMorphism& f, const Options& o, int N, Collected& checks) {
  const Ring& ring = f.source->ring;
  const int top = ring.is_field() ? o.hi : o.hi + 1;
  const auto ma = build_tensor_df(f.source, N, top + 1);
  const auto mb = build_tensor_df(f.target, N, top + 1);
  const DFMorphism mf = induce_df_morphism(f, ma, mb);
  checks.add(verify_df_morphism(mf), "M(f)");
  if (!checks.ok()) return {};
  const Bicomplex bx = build_bicomplex(ma->df), by = build_bicomplex(mb->df);
  const InducedMap cf = induce_bicomplex_map(mf, bx, by);
  checks.add(check_induced_map(cf, bx, by), "C(f)");
  const ChainComplex X = totalize(bx, o.kind, top), Y = totalize(by, o.kind, top);
  const ChainMap F = total_map(cf, X, Y);
  InducedRun run;
  run.certified = std::min(certified_bound(bx), certified_bound(by));
  checks.add(check_chain_map(F, X, Y), "total map");
  if (!checks.ok()) return run;
  run.map = induced_homology_map(F, X, Y, o.lo, o.hi);
  return run;
}

Result induced_output(const std::string& command, const InducedRun& run, const Options& o, int N, const Ring& ring,
                      bool verdict_sets_status) {
  Result r;
  r.status = verdict_sets_status && !run.map.isomorphism ? Violations : Ok;
  const std::string kind = kind_name(o.kind);
  if (o.json) {
    json degrees = json::array();
    for (const auto& d : run.map.degrees) {
      json m = json::array();
      if (ring.is_field())
        for (const auto& row : d.matrix.to_dense()) {
          json jr = json::array();
          for (const auto& x : row) jr.push_back(x.to_string());
          m.push_back(jr);
        }
      degrees.push_back({{"degree", d.degree}, {"source_rank", d.source_rank}, {"target_rank", d.target_rank},
                         {"isomorphism", d.isomorphism}, {"matrix", m}});
    }
    r.output = json{{"command", command}, {"kind", kind}, {"ring", ring.name()}, {"truncate", N},
                    {"certified_bound", run.certified}, {"degrees", degrees}, {"isomorphism", run.map.isomorphism}}
                   .dump(2) +
               "\n";
    return r;
  }
  std::ostringstream os;
  os << "induced map on " << kind << " homology over " << ring.name() << "\n";
  os << "truncation N = " << N << ", certified through degree " << run.certified << "\n";
  for (const auto& d : run.map.degrees) {
    os << "degree " << d.degree << ": rank " << d.source_rank << " -> rank " << d.target_rank << ", "
       << (d.isomorphism ? "isomorphism" : "not an isomorphism") << "\n";
    if (ring.is_field())
      for (const auto& row : d.matrix.to_dense()) {
        os << "  [";
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i].to_string();
        os << "]\n";
      }
  }
  os << "verdict: " << (run.map.isomorphism ? "isomorphism" : "not an isomorphism") << " in degrees " << o.lo
     << ".." << o.hi << "\n";
  r.output = os.str();
  return r;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

bool parse_degrees(const std::string& text, int& lo, int& hi) {
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      return used == text.size();
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    lo = std::stoi(a, &used);
    if (used != a.size()) return false;
    hi = std::stoi(b, &used);
    return used == b.size() && lo <= hi;
  } catch (const std::exception&) {
    return false;
  }
}

Result verify(const std::vector<Labeled>& documents, const Options& o) {
  return guarded(o, [&]() -> Result {
    Collected all;
    const int N = o.truncate;
    for (const auto& [label, text] : documents) {
      const io::Document d = load(text, o, std::max(N, 0));
      std::map<std::string, TensorModulePtr> modules;
      auto module_of = [&](const std::string& name, const AlgebraPtr& a) {
        auto it = modules.find(name);
        if (it == modules.end()) it = modules.emplace(name, build_tensor_df(a, N)).first;
        return it->second;
      };
      for (const auto& [name, a] : d.algebras) {
        check_algebra(all, name, *a, d);
        if (N >= 1) all.add(verify_df_module(*module_of(name, a)->df), "M(" + name + "), N = " + std::to_string(N));
      }
      for (const auto& [name, f] : d.morphisms) {
        check_morphism(all, name, *f, d);
        if (N >= 1) {
          std::string sname, tname;
          for (const auto& [an, a] : d.algebras) {
            if (a == f->source) sname = an;
            if (a == f->target) tname = an;
          }
          const DFMorphism mf = induce_df_morphism(*f, module_of(sname, f->source), module_of(tname, f->target));
          all.add(verify_df_morphism(mf), "M(" + name + "), N = " + std::to_string(N));
        }
      }
      for (const auto& [name, h] : d.homotopies) check_homotopy(all, name, h, d);
      for (const auto& [name, spec] : d.group_modules) {
        const int top = N >= 1 ? N : 3;
        all.add(verify_df_module(*io::build_group_module(spec, d.ring, top)),
                "group module " + name + ", N = " + std::to_string(top));
      }
      if (all.reports.empty()) throw InputFailure(label + ": nothing to verify");
    }
    Result r{all.ok() ? Ok : Violations, ""};
    if (o.json) {
      r.output = json{{"command", "verify"}, {"status", all.ok() ? "pass" : "fail"}, {"reports", all.to_json()}}.dump(2) + "\n";
    } else {
      r.output = all.text() + "verdict: " + (all.ok() ? "PASS" : "FAIL") + "\n";
    }
    return r;
  });
}

Result homology(const std::string& document, const Options& o) {
  return guarded(o, [&]() -> Result {
    check_range(o);
    const int N = truncation(o, 0);
    const io::Document d = load(document, o, N);
    Collected pre;
    DFModulePtr x;
    std::string subject;
    if (!d.algebras.empty() && (o.subject.empty() || d.algebras.count(o.subject))) {
      subject = pick(d.algebras, o.subject, "algebra");
      const AlgebraPtr a = d.algebras.at(subject);
      check_algebra(pre, subject, *a, d);
      if (!pre.ok()) return violations("homology", pre, o, "input does not verify; no homology computed");
      x = build_tensor_df(a, N, o.hi + 1)->df;
    } else {
      subject = pick(d.group_modules, o.subject, "group module");
      x = io::build_group_module(d.group_modules.at(subject), d.ring, N);
      pre.add(verify_df_module(*x), "group module " + subject);
      if (!pre.ok()) return violations("homology", pre, o, "input does not verify; no homology computed");
    }
    const Bicomplex bi = build_bicomplex(x);
    const int cert = certified_bound(bi);
    if (o.hi > cert)
      throw InputFailure("degree " + std::to_string(o.hi) + " is beyond the certified bound " + std::to_string(cert));
    const ChainComplex c = totalize(bi, o.kind, o.hi);
    const HomologyResult h = dih::homology(c, o.lo, o.hi);
    bool oracle_ok = true;
    if (o.oracle) oracle_ok = homology_dense(c, o.lo, o.hi).groups == h.groups;

    Result r{oracle_ok ? Ok : Violations, ""};
    const std::string kind = kind_name(o.kind);
    if (o.json) {
      json groups = json::array();
      for (const auto& g : h.groups) groups.push_back(group_json(g));
      json j{{"command", "homology"}, {"kind", kind},       {"subject", subject},
             {"ring", d.ring.name()}, {"truncate", N},      {"certified_bound", cert},
             {"degrees", groups}};
      if (o.oracle) j["oracle_agrees"] = oracle_ok;
      r.output = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << kind << " homology of " << subject << " over " << d.ring.name() << "\n";
      os << "truncation N = " << N << ", certified through degree " << cert << "\n";
      for (const auto& g : h.groups) os << group_text(g);
      if (o.oracle) os << "dense oracle: " << (oracle_ok ? "agrees" : "DISAGREES") << "\n";
      r.output = os.str();
    }
    return r;
  });
}

Result induced_map(const std::string& document, const Options& o) {
  return guarded(o, [&]() -> Result {
    check_range(o);
    const io::Document probe = io::parse_document(document, o.ring, 0);
    const int N = truncation(o, probe.ring.is_field() ? 0 : 1);
    const io::Document d = load(document, o, N);
    const std::string name = pick(d.morphisms, o.subject.empty() ? (d.morphisms.count(o.f) ? o.f : "") : o.subject,
                                  "morphism");
    const auto& f = d.morphisms.at(name);
    Collected checks;
    for (const auto& [an, a] : d.algebras)
      if (a == f->source || a == f->target) check_algebra(checks, an, *a, d);
    check_morphism(checks, name, *f, d);
    if (!checks.ok()) return violations("induced-map", checks, o, "input does not verify; no homology computed");
    const InducedRun run = induced_run(*f, o, N, checks);
    if (!checks.ok()) return violations("induced-map", checks, o, "induced maps fail their identities");
    return induced_output("induced-map", run, o, N, d.ring, false);
  });
}

Result invariance_check(const std::string& document, const Options& o) {
  return guarded(o, [&]() -> Result {
    check_range(o);
    const io::Document probe = io::parse_document(document, o.ring, 0);
    const int N = truncation(o, probe.ring.is_field() ? 0 : 1);
    const io::Document d = load(document, o, N);
    for (const std::string& m : {o.f, o.g})
      if (!d.morphisms.count(m)) throw InputFailure("no morphism named '" + m + "'");
    for (const std::string& h : {o.h_gf, o.h_fg})
      if (!d.homotopies.count(h)) throw InputFailure("no homotopy named '" + h + "'");
    const auto& f = d.morphisms.at(o.f);
    const auto& g = d.morphisms.at(o.g);
    if (f->source != g->target || f->target != g->source) throw InputFailure("f and g do not run in opposite directions");

    Collected checks;
    for (const auto& [an, a] : d.algebras)
      if (a == f->source || a == f->target) check_algebra(checks, an, *a, d);
    check_morphism(checks, o.f, *f, d);
    check_morphism(checks, o.g, *g, d);
    const int level = std::max(map_level(d), 0);
    auto witness = [&](const std::string& hname, const AInftyMorphism& comp, const AlgebraPtr& base) {
      const AInftyHomotopy& h = d.homotopies.at(hname);
      check_homotopy(checks, hname, h, d);
      const AInftyMorphism id = identity_ainfty(base);
      const bool forward = same_tables(*h.f, comp, level) && same_tables(*h.g, id, level);
      const bool backward = same_tables(*h.f, id, level) && same_tables(*h.g, comp, level);
      Report ends;
      ends.subject = "endpoints";
      ++ends.checks;
      if (!forward && !backward) ends.fail("endpoints", -1, {}, "does not join the composite and the identity");
      checks.add(ends, "homotopy " + hname);
    };
    witness(o.h_gf, compose_ainfty(*g, *f), f->source);
    witness(o.h_fg, compose_ainfty(*f, *g), f->target);
    if (!checks.ok()) return violations("invariance-check", checks, o, "witness verification failed; no homology computed");
    const InducedRun run = induced_run(*f, o, N, checks);
    if (!checks.ok()) return violations("invariance-check", checks, o, "induced maps fail their identities");
    return induced_output("invariance-check", run, o, N, d.ring, true);
  });
}

Result expand(const std::string& kind, const std::string& tuple, const Options& o) {
  return guarded(o, [&]() -> Result {
    std::string body = trim(tuple);
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    std::vector<std::string> parts;
    if (!trim(body).empty()) {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(trim(item));
      if (trim(body).back() == ',') parts.emplace_back();
    }
    bool numeric = true, symbolic = true;
    for (const auto& p : parts) {
      if (p.empty()) throw InputFailure("malformed tuple '" + tuple + "'");
      numeric = numeric && std::all_of(p.begin(), p.end(), [](unsigned char c) { return std::isdigit(c); });
      symbolic = symbolic && std::isalpha(static_cast<unsigned char>(p[0])) &&
                 std::all_of(p.begin(), p.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
    }
    if (!numeric && !symbolic) throw InputFailure("malformed tuple '" + tuple + "'");
    FormalExpression e;
    const int k = static_cast<int>(parts.size());
    if (numeric && k > 0) {
      Tuple t;
      for (const auto& p : parts) t.push_back(std::stoi(p));
      for (int i = 1; i < k; ++i)
        if (t[i] <= t[i - 1]) throw InputFailure("tuple entries must be strictly increasing");
      if (kind == "face") e = expand_face_relation(t);
      else if (kind == "morphism") e = expand_morphism_relation(t);
      else if (kind == "composition") e = expand_composition(t);
      else if (kind == "homotopy") e = expand_homotopy_relation(t);
      else throw InputFailure("unknown expansion '" + kind + "'");
    } else {
      if (kind == "face") e = expand_face_relation(k);
      else if (kind == "morphism") e = expand_morphism_relation(k);
      else if (kind == "composition") e = expand_composition(k);
      else if (kind == "homotopy") e = expand_homotopy_relation(k);
      else throw InputFailure("unknown expansion '" + kind + "'");
    }
    const std::string text = numeric ? e.render() : e.render(parts);
    Result r;
    r.output = o.json ? json{{"command", "expand"}, {"kind", kind}, {"tuple", tuple}, {"expression", text}}.dump(2) + "\n"
                      : text + "\n";
    return r;
  });
}

}  // namespace dih::jobs
