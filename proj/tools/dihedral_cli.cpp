// Batch front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dihedral/dihedral.h"

namespace {

struct Common {
  std::string ring, degrees, kind, format = "text", output, subject;
  int truncate = -1;
};

void add_common(CLI::App* sub, Common& c, bool homological) {
  sub->add_option("--ring", c.ring, "Coefficient ring: z, q or zp:<p>");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("-o,--output", c.output, "Write the report here instead of stdout");
  sub->add_option("--truncate", c.truncate, "Simplicial truncation N")->check(CLI::NonNegativeNumber);
  if (!homological) return;
  sub->add_option("--degrees", c.degrees, "Total degrees lo..hi");
  sub->add_option("--kind", c.kind, "Homology kind")->check(CLI::IsMember({"cyclic", "dihedral"}));
}

int fail(const std::string& what) {
  std::cerr << "dihedral: " << what << "\n";
  return DIH_INPUT_ERROR;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dihedral and cyclic homology of involutive A-infinity algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dih_version()));

  Common c;
  std::vector<std::string> files;
  std::string file, expansion, tuple, f = "f", g = "g", h_gf = "h_gf", h_fg = "h_fg";
  bool oracle = false;

  auto* verify = app.add_subcommand("verify", "Check every structure in the given documents");
  verify->add_option("files", files, "JSON documents")->required()->check(CLI::ExistingFile);
  add_common(verify, c, false);

  auto* homology = app.add_subcommand("homology", "Cyclic or dihedral homology of an algebra or group module");
  homology->add_option("file", file)->required()->check(CLI::ExistingFile);
  homology->add_option("--subject", c.subject, "Algebra or group module to use");
  homology->add_flag("--oracle", oracle, "Cross-check with dense elimination");
  add_common(homology, c, true);

  auto* induced = app.add_subcommand("induced-map", "Map on homology induced by a morphism");
  induced->add_option("file", file)->required()->check(CLI::ExistingFile);
  induced->add_option("--morphism", c.subject, "Morphism to use");
  add_common(induced, c, true);

  auto* inv = app.add_subcommand("invariance-check", "Check witnesses of a homotopy equivalence, then HD(f)");
  inv->add_option("file", file)->required()->check(CLI::ExistingFile);
  inv->add_option("--f", f, "Morphism A -> B");
  inv->add_option("--g", g, "Morphism B -> A");
  inv->add_option("--h-gf", h_gf, "Homotopy between g*f and id:A");
  inv->add_option("--h-fg", h_fg, "Homotopy between f*g and id:B");
  add_common(inv, c, true);

  auto* expand = app.add_subcommand("expand", "Print a symbolic relation");
  expand->add_option("kind", expansion)->required()->check(CLI::IsMember({"face", "morphism", "composition", "homotopy"}));
  expand->add_option("tuple", tuple, "Tuple such as (i,j) or (1,3)")->required();
  expand->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  expand->add_option("-o,--output", c.output, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : DIH_INPUT_ERROR;
  }

  CLI::App* sub = app.get_subcommands().front();
  dih_job* job = nullptr;
  if (dih_job_new(sub->get_name().c_str(), &job) != DIH_OK) return fail(dih_last_error());

  std::vector<std::pair<const char*, std::string>> settings{{"format", c.format}};
  if (!c.ring.empty()) settings.emplace_back("ring", c.ring);
  if (c.truncate >= 0) settings.emplace_back("truncate", std::to_string(c.truncate));
  if (!c.degrees.empty()) settings.emplace_back("degrees", c.degrees);
  if (!c.kind.empty()) settings.emplace_back("kind", c.kind);
  if (!c.subject.empty()) settings.emplace_back("subject", c.subject);
  if (oracle) settings.emplace_back("oracle", "1");
  if (sub == inv) {
    settings.emplace_back("f", f);
    settings.emplace_back("g", g);
    settings.emplace_back("h_gf", h_gf);
    settings.emplace_back("h_fg", h_fg);
  }
  if (sub == expand) {
    settings.emplace_back("expansion", expansion);
    settings.emplace_back("tuple", tuple);
  }
  for (const auto& [k, v] : settings)
    if (dih_job_set(job, k, v.c_str()) != DIH_OK) {
      const std::string msg = dih_last_error();
      dih_job_free(job);
      return fail(msg);
    }
  if (sub != verify && sub != expand) files = {file};
  for (const auto& path : files) {
    if (dih_job_add_file(job, path.c_str()) != DIH_OK) {
      dih_job_free(job);
      return fail("cannot read " + path);
    }
  }

  dih_status s = dih_job_run(job);
  int code = s;
  if (s == DIH_BAD_ARGUMENT || s == DIH_INTERNAL) {
    std::cerr << "dihedral: " << dih_last_error() << "\n";
    code = DIH_INPUT_ERROR;
  } else if (!c.output.empty()) {
    std::ofstream out(c.output);
    if (!out) {
      dih_job_free(job);
      return fail("cannot write " + c.output);
    }
    out << dih_job_output(job);
  } else {
    std::fputs(dih_job_output(job), s == DIH_INPUT_ERROR ? stderr : stdout);
  }
  dih_job_free(job);
  return code;
}
