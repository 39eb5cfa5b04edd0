#include "biham.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "biham/checks.hpp"
#include "biham/config.hpp"
#include "biham/errors.hpp"
#include "biham/json_io.hpp"

struct biham_session {
  biham::Tolerances tol;
  std::string last_error;
};

namespace {

biham_status status_from(biham::ErrorKind kind) {
  switch (kind) {
    case biham::ErrorKind::invalid_argument:
      return BIHAM_INVALID_ARGUMENT;
    case biham::ErrorKind::parse:
      return BIHAM_PARSE;
    case biham::ErrorKind::numeric:
      return BIHAM_NUMERIC;
    case biham::ErrorKind::domain:
      return BIHAM_DOMAIN;
  }
  return BIHAM_INTERNAL;
}

// malloc so the string can be released from plain C with biham_free
char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class Fn>
biham_status guarded(biham_session* s, Fn&& fn) {
  if (!s) return BIHAM_INVALID_ARGUMENT;
  s->last_error.clear();
  try {
    return fn();
  } catch (const biham::Error& e) {
    s->last_error = e.what();
    return status_from(e.kind());
  } catch (const std::bad_alloc&) {
    s->last_error = "out of memory";
    return BIHAM_INTERNAL;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return BIHAM_INTERNAL;
  }
}

biham_status require(biham_session* s, bool ok, const char* msg) {
  if (ok) return BIHAM_OK;
  s->last_error = msg;
  return BIHAM_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* biham_version(void) { return "1.0.0"; }

biham_session* biham_session_new(void) { return new (std::nothrow) biham_session; }

void biham_session_free(biham_session* s) { delete s; }

const char* biham_last_error(biham_session* s) { return s ? s->last_error.c_str() : ""; }

biham_status biham_configure(biham_session* s, const char* key, double value) {
  if (!s) return BIHAM_INVALID_ARGUMENT;
  s->last_error.clear();
  if (!key) return require(s, false, "configure: key is null");
  const std::string k = key;
  biham::Tolerances& t = s->tol;
  if (k == "lie_richardson") {
    t.lie_richardson = value != 0;
    return BIHAM_OK;
  }
  if (k == "newton_max_iter") {
    if (!(value >= 1)) return require(s, false, "configure: newton_max_iter must be >= 1");
    t.newton_max_iter = static_cast<int>(value);
    return BIHAM_OK;
  }
  if (!(value > 0) || !std::isfinite(value))
    return require(s, false, "configure: value must be positive and finite");
  if (k == "rank_pivot_rel") t.rank_pivot_rel = value;
  else if (k == "jacobi_off_rel") t.jacobi_off_rel = value;
  else if (k == "hermitian_check_rel") t.hermitian_check_rel = value;
  else if (k == "eig_residual_rel") t.eig_residual_rel = value;
  else if (k == "cluster_gap_rel") t.cluster_gap_rel = value;
  else if (k == "newton_tol") t.newton_tol = value;
  else if (k == "quad_rel_tol") t.quad_rel_tol = value;
  else if (k == "fd_step_grad") t.fd_step_grad = value;
  else if (k == "fd_step_jac") t.fd_step_jac = value;
  else if (k == "lie_step") t.lie_step = value;
  else if (k == "cond_limit") t.cond_limit = value;
  else if (k == "unitarity_tol") t.unitarity_tol = value;
  else if (k == "ck_tol") t.ck_tol = value;
  else if (k == "integrator_dt") t.integrator_dt = value;
  else return require(s, false, "configure: unknown key");
  return BIHAM_OK;
}

void biham_free(char* p) { std::free(p); }

biham_status biham_generic_report(biham_session* s, const char* h1_json, const char* h2_json,
                                  char** out) {
  return guarded(s, [&]() -> biham_status {
    if (biham_status st = require(s, h1_json && h2_json && out, "generic_report: null argument"))
      return st;
    *out = dup_string(biham::genericity_report_json(h1_json, h2_json, s->tol));
    return BIHAM_OK;
  });
}

biham_status biham_deform_report(biham_session* s, const char* k_json, const char* g_json,
                                 const char* h_json, uint64_t seed, size_t trials, char** out) {
  return guarded(s, [&]() -> biham_status {
    if (biham_status st = require(s, k_json && out, "deform_report: null argument")) return st;
    std::optional<std::string> g, h;
    if (g_json) g = std::string(g_json);
    if (h_json) h = std::string(h_json);
    *out = dup_string(biham::deform_report_json(k_json, g, h, seed, trials, s->tol));
    return BIHAM_OK;
  });
}

biham_status biham_geometry_report(biham_session* s, double lambda, size_t points, uint64_t seed,
                                   char** out) {
  return guarded(s, [&]() -> biham_status {
    if (biham_status st = require(s, out != nullptr, "geometry_report: null output")) return st;
    *out = dup_string(biham::geometry_report_json(lambda, points, seed, s->tol));
    return BIHAM_OK;
  });
}

biham_status biham_darboux_table(biham_session* s, const char* family, double s_max,
                                 size_t samples, char** out) {
  return guarded(s, [&]() -> biham_status {
    if (biham_status st = require(s, family && out, "darboux_table: null argument")) return st;
    *out = dup_string(biham::darboux_table_json(family, s_max, samples, s->tol));
    return BIHAM_OK;
  });
}

biham_status biham_qdyn_simulate(biham_session* s, const char* drive_json, double a, double z_re,
                                 double z_im, double total_time, double dt, char** out_csv,
                                 char** out_summary) {
  return guarded(s, [&]() -> biham_status {
    if (biham_status st =
            require(s, drive_json && out_csv && out_summary, "qdyn_simulate: null argument"))
      return st;
    const biham::QdynSimulation sim = biham::qdyn_simulate_json(
        drive_json, a, biham::Cx(z_re, z_im), total_time, dt, s->tol);
    char* csv = dup_string(sim.csv);
    char* summary;
    try {
      summary = dup_string(sim.summary);
    } catch (...) {
      std::free(csv);
      throw;
    }
    *out_csv = csv;
    *out_summary = summary;
    return BIHAM_OK;
  });
}

biham_status biham_acceptance_run(biham_session* s, uint64_t seed, char** out, size_t* n_failed) {
  return guarded(s, [&]() -> biham_status {
    if (biham_status st = require(s, out && n_failed, "acceptance_run: null argument")) return st;
    const std::vector<biham::CheckResult> results = biham::run_acceptance_checks(seed, s->tol);
    size_t failed = 0;
    for (const biham::CheckResult& r : results)
      if (!r.passed) ++failed;
    *out = dup_string(biham::format_check_results(results));
    *n_failed = failed;
    return BIHAM_OK;
  });
}

}  // extern "C"
