#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dihedral/dihedral.h"
#include "jobs/jobs.hpp"

struct dih_job {
  std::string command;
  std::vector<dih::jobs::Labeled> documents;
  dih::jobs::Options options;
  std::string expansion, tuple;
  std::string output;
};

namespace {

thread_local std::string last_error;

dih_status bad(const std::string& what) {
  last_error = what;
  return DIH_BAD_ARGUMENT;
}

bool known_command(const std::string& c) {
  return c == "verify" || c == "homology" || c == "induced-map" || c == "invariance-check" || c == "expand";
}

bool parse_int(const std::string& s, int& out) {
  try {
    std::size_t used = 0;
    out = std::stoi(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

extern "C" {

dih_status dih_job_new(const char* command, dih_job** out) {
  if (!command || !out) return bad("null argument");
  if (!known_command(command)) return bad(std::string("unknown command '") + command + "'");
  try {
    *out = new dih_job{command, {}, {}, {}, {}, {}};
  } catch (const std::exception& e) {
    last_error = e.what();
    return DIH_INTERNAL;
  }
  return DIH_OK;
}

void dih_job_free(dih_job* job) { delete job; }

dih_status dih_job_add_file(dih_job* job, const char* path) {
  if (!job || !path) return bad("null argument");
  std::ifstream in(path);
  if (!in) {
    job->output = std::string("error: cannot open ") + path + "\n";
    last_error = job->output;
    return DIH_INPUT_ERROR;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  job->documents.emplace_back(path, ss.str());
  return DIH_OK;
}

dih_status dih_job_add_document(dih_job* job, const char* label, const char* json_text) {
  if (!job || !json_text) return bad("null argument");
  job->documents.emplace_back(label ? label : "<document>", json_text);
  return DIH_OK;
}

dih_status dih_job_set(dih_job* job, const char* key, const char* value) {
  if (!job || !key || !value) return bad("null argument");
  const std::string k = key, v = value;
  auto& o = job->options;
  try {
    if (k == "ring") {
      o.ring = dih::Ring::parse(v);
    } else if (k == "truncate") {
      if (!parse_int(v, o.truncate) || o.truncate < 0) return bad("truncate expects a non-negative integer");
    } else if (k == "degrees") {
      if (!dih::jobs::parse_degrees(v, o.lo, o.hi)) return bad("degrees expects lo..hi");
    } else if (k == "kind") {
      if (v == "cyclic") o.kind = dih::ChainComplex::Kind::Cyclic;
      else if (v == "dihedral") o.kind = dih::ChainComplex::Kind::Dihedral;
      else return bad("kind is cyclic or dihedral");
    } else if (k == "format") {
      if (v != "text" && v != "json") return bad("format is text or json");
      o.json = v == "json";
    } else if (k == "oracle") {
      o.oracle = v == "1" || v == "true";
    } else if (k == "subject") {
      o.subject = v;
    } else if (k == "f") {
      o.f = v;
    } else if (k == "g") {
      o.g = v;
    } else if (k == "h_gf") {
      o.h_gf = v;
    } else if (k == "h_fg") {
      o.h_fg = v;
    } else if (k == "expansion") {
      job->expansion = v;
    } else if (k == "tuple") {
      job->tuple = v;
    } else {
      return bad("unknown option '" + k + "'");
    }
  } catch (const std::exception& e) {
    return bad(e.what());
  }
  return DIH_OK;
}

dih_status dih_job_run(dih_job* job) {
  if (!job) return bad("null argument");
  namespace J = dih::jobs;
  try {
    J::Result r;
    const std::string& c = job->command;
    if (c == "expand") {
      r = J::expand(job->expansion, job->tuple, job->options);
    } else if (job->documents.empty()) {
      return bad("no input documents");
    } else if (c == "verify") {
      r = J::verify(job->documents, job->options);
    } else if (job->documents.size() != 1) {
      return bad(c + " takes exactly one document");
    } else if (c == "homology") {
      r = J::homology(job->documents[0].second, job->options);
    } else if (c == "induced-map") {
      r = J::induced_map(job->documents[0].second, job->options);
    } else {
      r = J::invariance_check(job->documents[0].second, job->options);
    }
    job->output = r.output;
    return static_cast<dih_status>(r.status);
  } catch (const std::exception& e) {
    last_error = e.what();
    return DIH_INTERNAL;
  }
}

const char* dih_job_output(const dih_job* job) { return job ? job->output.c_str() : ""; }

const char* dih_last_error(void) { return last_error.c_str(); }

const char* dih_status_name(dih_status s) {
  switch (s) {
    case DIH_OK: return "ok";
    case DIH_VIOLATIONS: return "violations";
    case DIH_INPUT_ERROR: return "input error";
    case DIH_BAD_ARGUMENT: return "bad argument";
    default: return "internal error";
  }
}

const char* dih_version(void) { return "0.1.0"; }

}  // extern "C"
