#ifndef BIHAM_H
#define BIHAM_H

/* C interface to the bi-Hamiltonian structures library.
 *
 * All calls that can fail take a session handle and return a status code;
 * the session stores the message for the most recent failure.  Output
 * strings are NUL-terminated, allocated by the library, owned by the
 * caller, and released with biham_free.  Matrix arguments are JSON text:
 *   {"rows": r, "cols": c, "entries": [[re,im], ...]}            (complex)
 *   {"rows": r, "cols": c, "entries": [[w,x,y,z], ...]}          (quaternionic)
 * with entries listed row-major; the entry width selects the scalar field.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum biham_status {
  BIHAM_OK = 0,
  BIHAM_INVALID_ARGUMENT = 1, /* a precondition on the inputs failed        */
  BIHAM_PARSE = 2,            /* malformed JSON or literal text             */
  BIHAM_NUMERIC = 3,          /* an iteration or conditioning gate tripped  */
  BIHAM_DOMAIN = 4,           /* the request leaves the valid domain        */
  BIHAM_INTERNAL = 5          /* unexpected failure                         */
} biham_status;

typedef struct biham_session biham_session;

/* Library version as "major.minor.patch". */
const char* biham_version(void);

biham_session* biham_session_new(void);
void biham_session_free(biham_session* s);

/* Message for the most recent failing call on this session; "" if none. */
const char* biham_last_error(biham_session* s);

/* Overrides one named tolerance or control value for subsequent calls on
 * this session.  Keys are the tolerance names, e.g. "cond_limit",
 * "lie_step", "integrator_dt", "newton_max_iter", "lie_richardson" (0/1).
 * Unknown keys and non-positive values are rejected. */
biham_status biham_configure(biham_session* s, const char* key, double value);

/* Releases a string returned through any char** output. */
void biham_free(char* p);

/* Spectral/commutant report for a pair of positive Hermitian forms.
 * *out receives a JSON document. */
biham_status biham_generic_report(biham_session* s, const char* h1_json,
                                  const char* h2_json, char** out);

/* Deformed-product report for pivot K, optionally with a metric G (adjoint
 * involution block) and a Hamiltonian H (derivation block); pass NULL to
 * omit either.  *out receives a JSON document. */
biham_status biham_deform_report(biham_session* s, const char* k_json,
                                 const char* g_json, const char* h_json,
                                 uint64_t seed, size_t trials, char** out);

/* Invariance, pullback and bracket diagnostics for the radially deformed
 * structures at the given deformation parameter.  *out receives JSON. */
biham_status biham_geometry_report(biham_session* s, double lambda, size_t points,
                                   uint64_t seed, char** out);

/* Flat-coordinate profile table for a density family: "unit" or
 * "poly:c0,c1,...".  *out receives JSON. */
biham_status biham_darboux_table(biham_session* s, const char* family, double s_max,
                                 size_t samples, char** out);

/* Integrates the two-level system described by drive_json
 * ({"omega": w, "Omega0": a, "Omega1": b}, each a number or [[t,v],...]
 * step table) and checks it against the commutant element with diagonal a
 * and off-diagonal z.  *out_csv receives per-step samples, *out_summary a
 * JSON document with the defect maxima. */
biham_status biham_qdyn_simulate(biham_session* s, const char* drive_json, double a,
                                 double z_re, double z_im, double total_time, double dt,
                                 char** out_csv, char** out_summary);

/* Runs the ten frozen acceptance checks.  *out receives one PASS/FAIL line
 * per check plus a summary line; *n_failed the number of failing checks.
 * The call itself succeeds (BIHAM_OK) even when checks fail. */
biham_status biham_acceptance_run(biham_session* s, uint64_t seed, char** out,
                                  size_t* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* BIHAM_H */
