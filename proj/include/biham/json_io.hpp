#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "biham/config.hpp"
#include "biham/forms.hpp"
#include "biham/matrix.hpp"

namespace biham {

/// A matrix literal parsed from JSON text.  The entry width picks the field:
/// [re, im] pairs give a complex matrix, [w, x, y, z] quadruples a
/// quaternionic one.  Exactly one of the two members is engaged.
struct ParsedMatrix {
  Field field = Field::complex_field;
  std::optional<CMatrix> c;
  std::optional<QMatrix> q;
};

/// Parse {"rows": n, "cols": m, "entries": [[..], ...]} (row-major).
/// Mixed entry widths, wrong counts, or malformed JSON raise parse errors.
ParsedMatrix parse_matrix(const std::string& text);

/// Same, but insist on the stated field.
CMatrix parse_cmatrix(const std::string& text);
QMatrix parse_qmatrix(const std::string& text);

std::string matrix_to_json(const CMatrix& m);
std::string matrix_to_json(const QMatrix& m);

/// Pair analysis report (both forms in matrix JSON) serialized with the
/// tolerances that produced it.
std::string genericity_report_json(const std::string& h1_json, const std::string& h2_json,
                                   const Tolerances& tol = {});

/// Deformed-product report for K (and optionally a metric G for the star
/// structure and a generator H for the derivation check), seeded spot checks.
std::string deform_report_json(const std::string& k_json,
                               const std::optional<std::string>& g_json,
                               const std::optional<std::string>& h_json, std::uint64_t seed,
                               std::size_t trials, const Tolerances& tol = {});

/// Invariance / pullback / bracket-comparison defects of the radial
/// deformation at `points` seeded sample points.
std::string geometry_report_json(double lambda, std::size_t points, std::uint64_t seed,
                                 const Tolerances& tol = {});

/// Radial normalization profile table.  family is "unit" or "poly:c0,c1,..."
/// (polynomial density in s); samples are evenly spaced on [0, s_max].
std::string darboux_table_json(const std::string& family, double s_max, std::size_t samples,
                               const Tolerances& tol = {});

struct QdynSimulation {
  std::string csv;      ///< t, ReF, ImF, ReL, ImL, P, P_prime per step
  std::string summary;  ///< JSON: defect maxima, final state, inputs
};

/// Drive JSON: {"omega": number|[[t,v],...], "Omega0": ..., "Omega1": ...}.
QdynSimulation qdyn_simulate_json(const std::string& drive_json, double a, Cx z,
                                  double total_time, double dt, const Tolerances& tol = {});

}  // namespace biham
