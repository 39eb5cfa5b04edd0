#include "biham/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "biham/deform.hpp"
#include "biham/errors.hpp"
#include "biham/geometry.hpp"
#include "biham/realify.hpp"
#include "biham/rng.hpp"
#include "biham/twolevel.hpp"

namespace biham {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::parse, "malformed JSON");
  return j;
}

std::size_t require_count(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned() || j[key].get<std::size_t>() == 0)
    fail(ErrorKind::parse, std::string("matrix JSON needs a positive integer '") + key + "'");
  return j[key].get<std::size_t>();
}

json tolerances_json(const Tolerances& t) {
  return json{{"rank_pivot_rel", t.rank_pivot_rel},
              {"jacobi_off_rel", t.jacobi_off_rel},
              {"hermitian_check_rel", t.hermitian_check_rel},
              {"eig_residual_rel", t.eig_residual_rel},
              {"cluster_gap_rel", t.cluster_gap_rel},
              {"newton_tol", t.newton_tol},
              {"newton_max_iter", t.newton_max_iter},
              {"quad_rel_tol", t.quad_rel_tol},
              {"fd_step_grad", t.fd_step_grad},
              {"fd_step_jac", t.fd_step_jac},
              {"lie_step", t.lie_step},
              {"lie_richardson", t.lie_richardson},
              {"cond_limit", t.cond_limit},
              {"unitarity_tol", t.unitarity_tol},
              {"ck_tol", t.ck_tol},
              {"integrator_dt", t.integrator_dt}};
}

std::string field_name(Field f) {
  return f == Field::complex_field ? "complex" : "quaternionic";
}

std::string finish(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

ParsedMatrix parse_matrix(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) fail(ErrorKind::parse, "matrix JSON must be an object");
  const std::size_t rows = require_count(j, "rows");
  const std::size_t cols = require_count(j, "cols");
  if (!j.contains("entries") || !j["entries"].is_array())
    fail(ErrorKind::parse, "matrix JSON needs an 'entries' array");
  const json& entries = j["entries"];
  if (entries.size() != rows * cols)
    fail(ErrorKind::parse, "matrix JSON entry count does not match rows*cols");

  std::size_t width = 0;
  std::vector<double> flat;
  flat.reserve(entries.size() * 4);
  for (const json& e : entries) {
    if (!e.is_array() || (e.size() != 2 && e.size() != 4))
      fail(ErrorKind::parse, "each matrix entry must be [re,im] or [w,x,y,z]");
    if (width == 0) width = e.size();
    if (e.size() != width)
      fail(ErrorKind::parse, "matrix entries mix complex and quaternionic widths");
    for (const json& v : e) {
      if (!v.is_number()) fail(ErrorKind::parse, "matrix entry components must be numbers");
      flat.push_back(v.get<double>());
    }
  }

  ParsedMatrix out;
  if (width == 2) {
    out.field = Field::complex_field;
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i)
      m(i / cols, i % cols) = Cx(flat[2 * i], flat[2 * i + 1]);
    out.c = std::move(m);
  } else {
    out.field = Field::quaternionic;
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i)
      m(i / cols, i % cols) =
          Quaternion(flat[4 * i], flat[4 * i + 1], flat[4 * i + 2], flat[4 * i + 3]);
    out.q = std::move(m);
  }
  return out;
}

CMatrix parse_cmatrix(const std::string& text) {
  ParsedMatrix p = parse_matrix(text);
  if (p.field != Field::complex_field)
    fail(ErrorKind::parse, "expected a complex matrix ([re,im] entries)");
  return std::move(*p.c);
}

QMatrix parse_qmatrix(const std::string& text) {
  ParsedMatrix p = parse_matrix(text);
  if (p.field != Field::quaternionic)
    fail(ErrorKind::parse, "expected a quaternionic matrix ([w,x,y,z] entries)");
  return std::move(*p.q);
}

std::string matrix_to_json(const CMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      entries.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return finish(json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}});
}

std::string matrix_to_json(const QMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Quaternion& q = m(i, j);
      entries.push_back(json::array({q.w, q.x, q.y, q.z}));
    }
  return finish(json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}});
}

std::string genericity_report_json(const std::string& h1_json, const std::string& h2_json,
                                   const Tolerances& tol) {
  const ParsedMatrix m1 = parse_matrix(h1_json);
  const ParsedMatrix m2 = parse_matrix(h2_json);
  if (m1.field != m2.field)
    fail(ErrorKind::invalid_argument, "the two forms must share a scalar field");

  const HermitianForm h1 = m1.field == Field::complex_field
                               ? HermitianForm::complex_form(*m1.c)
                               : HermitianForm::quaternionic_form(*m1.q);
  const HermitianForm h2 = m2.field == Field::complex_field
                               ? HermitianForm::complex_form(*m2.c)
                               : HermitianForm::quaternionic_form(*m2.q);
  const GenericityReport rep = genericity_report(h1, h2, tol);

  json witness;
  if (rep.witness_available) {
    witness = json::array();
    if (rep.field == Field::complex_field)
      for (const Cx& v : rep.witness_c) witness.push_back(json::array({v.real(), v.imag()}));
    else
      for (const Quaternion& v : rep.witness_q)
        witness.push_back(json::array({v.w, v.x, v.y, v.z}));
  }

  return finish(json{{"field", field_name(rep.field)},
                     {"dim", rep.dim},
                     {"spectrum", rep.spectrum},
                     {"cluster_means", rep.cluster_means},
                     {"degeneracies", rep.degeneracies},
                     {"signature", rep.degeneracies},
                     {"distinct_spectrum", rep.distinct_spectrum},
                     {"cyclic", rep.cyclic},
                     {"witness_available", rep.witness_available},
                     {"witness", witness},
                     {"commutant_real_dim", rep.commutant_real_dim},
                     {"bicommutant_real_dim", rep.bicommutant_real_dim},
                     {"def3_holds", rep.def3_holds},
                     {"group_label", rep.group_label},
                     {"selfadjoint_defect_h1", rep.selfadjoint_defect_h1},
                     {"selfadjoint_defect_h2", rep.selfadjoint_defect_h2},
                     {"tolerances", tolerances_json(tol)}});
}

namespace {

CMatrix draw_matrix(Rng& rng, std::size_t n, const CMatrix*) { return rng.cmatrix(n, n); }
QMatrix draw_matrix(Rng& rng, std::size_t n, const QMatrix*) { return rng.qmatrix(n, n); }

DeformedAlgebraC make_algebra(CMatrix k, const Tolerances& tol) {
  return make_deformed_c(std::move(k), tol);
}
DeformedAlgebraQ make_algebra(QMatrix k, const Tolerances& tol) {
  return make_deformed_q(std::move(k), tol);
}

AdjointPairC make_pair(CMatrix g, const Tolerances& tol) {
  return make_adjoint_pair_c(std::move(g), tol);
}
AdjointPairQ make_pair(QMatrix g, const Tolerances& tol) {
  return make_adjoint_pair_q(std::move(g), tol);
}

template <class Mat>
const std::vector<Mat>& subalgebra_basis(const SubalgebraResult& s) {
  if constexpr (std::is_same_v<Mat, CMatrix>)
    return s.basis_c;
  else
    return s.basis_q;
}

template <class Mat>
json deform_report_core(const Mat& k, const std::optional<Mat>& g, const std::optional<Mat>& h,
                        std::uint64_t seed, std::size_t trials, Field field,
                        const Tolerances& tol) {
  const std::size_t n = k.rows();
  if (k.cols() != n) fail(ErrorKind::invalid_argument, "the pivot matrix must be square");
  const auto alg = make_algebra(k, tol);
  const Mat unit = deformed_identity(alg);

  Rng rng(seed);
  double unit_defect = 0, assoc_defect = 0, iso_defect = 0;
  const Mat* tag = nullptr;
  for (std::size_t t = 0; t < trials; ++t) {
    const Mat a = draw_matrix(rng, n, tag);
    const Mat b = draw_matrix(rng, n, tag);
    const Mat c = draw_matrix(rng, n, tag);
    unit_defect = std::max(unit_defect, (deformed_product(unit, a, alg) - a).max_abs());
    unit_defect = std::max(unit_defect, (deformed_product(a, unit, alg) - a).max_abs());
    assoc_defect =
        std::max(assoc_defect, (deformed_product(deformed_product(a, b, alg), c, alg) -
                                deformed_product(a, deformed_product(b, c, alg), alg))
                                   .max_abs());
    iso_defect = std::max(iso_defect, (iso_phi(a * b, alg) -
                                       deformed_product(iso_phi(a, alg), iso_phi(b, alg), alg))
                                          .max_abs());
  }

  const SubalgebraResult s_plain = subalgebra_s(k, false, tol);
  const SubalgebraResult s_def = subalgebra_s(k, true, tol);
  std::vector<RVec> fa, fb;
  for (const Mat& m : subalgebra_basis<Mat>(s_plain)) fa.push_back(flatten(m));
  for (const Mat& m : subalgebra_basis<Mat>(s_def)) fb.push_back(flatten(m));

  json out{{"field", field_name(field)},
           {"dim", n},
           {"condition", alg.condition},
           {"seed", seed},
           {"trials", trials},
           {"unit_defect", unit_defect},
           {"associativity_defect", assoc_defect},
           {"isomorphism_defect", iso_defect},
           {"s_dim", s_plain.real_dim},
           {"s_k_dim", s_def.real_dim},
           {"span_defect", span_defect(fa, fb)}};

  if (g) {
    const auto pair = make_pair(*g, tol);
    double involution = 0, antihomo = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const Mat a = draw_matrix(rng, n, tag);
      const Mat b = draw_matrix(rng, n, tag);
      involution = std::max(involution, (second_adjoint(second_adjoint(a, pair), pair) - a).max_abs());
      antihomo = std::max(antihomo, (second_adjoint(a * b, pair) -
                                     second_adjoint(b, pair) * second_adjoint(a, pair))
                                        .max_abs());
    }
    out["star"] = json{{"present", true}, {"involution_defect", involution},
                       {"antihomomorphism_defect", antihomo}};
  } else {
    out["star"] = json{{"present", false}};
  }

  if (h) {
    const DerivationCheck dc = derivation_check(*h, k, static_cast<int>(trials), seed + 1, tol);
    out["derivation"] = json{{"present", true},
                             {"is_derivation", dc.is_derivation},
                             {"max_defect", dc.max_defect},
                             {"oracle_gap", dc.oracle_gap},
                             {"hk_commutator", dc.hk_commutator}};
  } else {
    out["derivation"] = json{{"present", false}};
  }

  out["tolerances"] = tolerances_json(tol);
  return out;
}

}  // namespace

std::string deform_report_json(const std::string& k_json,
                               const std::optional<std::string>& g_json,
                               const std::optional<std::string>& h_json, std::uint64_t seed,
                               std::size_t trials, const Tolerances& tol) {
  if (trials == 0) fail(ErrorKind::invalid_argument, "trial count must be positive");
  const ParsedMatrix k = parse_matrix(k_json);
  if (k.field == Field::complex_field) {
    std::optional<CMatrix> g, h;
    if (g_json) g = parse_cmatrix(*g_json);
    if (h_json) h = parse_cmatrix(*h_json);
    return finish(deform_report_core(*k.c, g, h, seed, trials, k.field, tol));
  }
  std::optional<QMatrix> g, h;
  if (g_json) g = parse_qmatrix(*g_json);
  if (h_json) h = parse_qmatrix(*h_json);
  return finish(deform_report_core(*k.q, g, h, seed, trials, k.field, tol));
}

std::string geometry_report_json(double lambda, std::size_t points, std::uint64_t seed,
                                 const Tolerances& tol) {
  if (points == 0) fail(ErrorKind::invalid_argument, "sample count must be positive");
  if (lambda < 0) fail(ErrorKind::invalid_argument, "the deformation parameter must be >= 0");

  const MetricField g = deformed_metric(lambda, 1);
  const TwoFormField w = deformed_symplectic(lambda, 1);
  const TensorField11 jj = deformed_complex_structure(lambda, 1);
  RMatrix rot(2, 2);
  rot(0, 1) = 1;
  rot(1, 0) = -1;
  const VectorField gamma = linear_vector_field(rot);
  const TwoFormField lw = lie_derivative(gamma, w, tol);
  const MetricField lg = lie_derivative(gamma, g, tol);
  const TensorField11 lj = lie_derivative(gamma, jj, tol);

  RMatrix ws(2, 2);
  ws(0, 1) = 1;
  ws(1, 0) = -1;
  const BracketContext flat1 = standard_bracket_context(1);
  const ScalarField qc{2, [](const Point& x) { return x[0]; }};
  const ScalarField pc{2, [](const Point& x) { return x[1]; }};

  double inv_omega = 0, inv_metric = 0, inv_j = 0;
  double pb_metric = 0, pb_symplectic = 0, pb_bracket = 0;
  double roundtrip = 0, jsquare = 0, admissibility = 0;

  Rng rng(seed);
  for (std::size_t t = 0; t < points; ++t) {
    const Point p = rng.point(2, 2.0);
    inv_omega = std::max(inv_omega, lw.eval(p).max_abs());
    inv_metric = std::max(inv_metric, lg.eval(p).max_abs());
    inv_j = std::max(inv_j, lj.eval(p).max_abs());

    pb_metric = std::max(
        pb_metric, (g.eval(p) - numeric_pullback_cov2(RMatrix::identity(2), p, lambda, tol)).max_abs());
    pb_symplectic =
        std::max(pb_symplectic, (w.eval(p) - numeric_pullback_cov2(ws, p, lambda, tol)).max_abs());

    // coordinate bracket, once directly and once through the inverse chart
    const double closed = 1.0 / deformed_area_factor(p[0], p[1], lambda);
    const Point y = lambda_chart(p, lambda);
    const ScalarField q_back{2, [lambda, &tol](const Point& x) {
                               return inverse_lambda_chart(x, lambda, tol)[0];
                             }};
    const ScalarField p_back{2, [lambda, &tol](const Point& x) {
                               return inverse_lambda_chart(x, lambda, tol)[1];
                             }};
    const double numeric = poisson_bracket(q_back, p_back, flat1).eval(y);
    pb_bracket = std::max(pb_bracket, std::abs(numeric - closed));

    const Point back = inverse_lambda_chart(lambda_chart(p, lambda), lambda, tol);
    double rt = 0;
    for (int i = 0; i < 2; ++i) rt = std::max(rt, std::abs(back[i] - p[i]));
    roundtrip = std::max(roundtrip, rt);

    const RMatrix jp = jj.eval(p);
    jsquare = std::max(jsquare, (jp * jp + RMatrix::identity(2)).max_abs());
    admissibility = std::max(admissibility, (jp.transpose() * w.eval(p) - g.eval(p)).max_abs());
  }

  // the four-dimensional bracket comparison of two quadratic observables
  const StandardStructures flat4 = standard_structures(2);
  const ComplexScalarField f0 =
      quadratic_function(realify_complex(pauli(0)), flat4.triple.g, flat4.triple.omega);
  const ComplexScalarField f3 =
      quadratic_function(realify_complex(pauli(3)), flat4.triple.g, flat4.triple.omega);
  const ComplexScalarField f03 = quadratic_function(realify_complex(pauli(0) * pauli(3) * Cx(2)),
                                                    flat4.triple.g, flat4.triple.omega);
  const ComplexScalarField br_flat = hermitian_bracket(f0, f3, standard_bracket_context(2));
  const ComplexScalarField br_def =
      hermitian_bracket(f0, f3, deformed_bracket_context(lambda, 2));
  double flat_defect = 0, deformed_defect = 0;
  for (std::size_t t = 0; t < points; ++t) {
    const Point p = rng.point(4, 1.5);
    flat_defect = std::max(flat_defect, std::abs(br_flat.eval(p) - f03.eval(p)));
    deformed_defect = std::max(deformed_defect, std::abs(br_def.eval(p) - f03.eval(p)));
  }

  return finish(json{
      {"lambda", lambda},
      {"points", points},
      {"seed", seed},
      {"invariance", json{{"omega", inv_omega}, {"metric", inv_metric}, {"complex_structure", inv_j}}},
      {"pullback",
       json{{"metric", pb_metric}, {"symplectic", pb_symplectic}, {"bracket", pb_bracket}}},
      {"chart", json{{"roundtrip", roundtrip}, {"jsquare", jsquare}, {"admissibility", admissibility}}},
      {"reference_point",
       json{{"area_factor", deformed_area_factor(1, 0, lambda)},
            {"bracket_coefficient", 1.0 / deformed_area_factor(1, 0, lambda)}}},
      {"bracket_comparison", json{{"flat", flat_defect}, {"deformed", deformed_defect}}},
      {"tolerances", tolerances_json(tol)}});
}

std::string darboux_table_json(const std::string& family, double s_max, std::size_t samples,
                               const Tolerances& tol) {
  if (!(s_max > 0)) fail(ErrorKind::invalid_argument, "s_max must be positive");
  if (samples < 2) fail(ErrorKind::invalid_argument, "need at least two samples");

  std::vector<double> coeffs;
  std::function<double(double)> density;
  if (family == "unit") {
    density = [](double) { return 1.0; };
  } else if (family.rfind("poly:", 0) == 0) {
    const std::string list = family.substr(5);
    std::size_t pos = 0;
    while (pos <= list.size()) {
      const std::size_t comma = std::min(list.find(',', pos), list.size());
      const std::string tokstr = list.substr(pos, comma - pos);
      try {
        std::size_t used = 0;
        const double v = std::stod(tokstr, &used);
        if (used != tokstr.size()) throw std::invalid_argument(tokstr);
        coeffs.push_back(v);
      } catch (const std::exception&) {
        fail(ErrorKind::parse, "bad polynomial coefficient '" + tokstr + "'");
      }
      pos = comma + 1;
    }
    if (coeffs.empty()) fail(ErrorKind::parse, "empty polynomial coefficient list");
    density = [coeffs](double s) {
      double acc = 0;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * s + coeffs[k];
      return acc;
    };
  } else {
    fail(ErrorKind::parse, "unknown density family '" + family + "' (use unit or poly:c0,c1,...)");
  }

  json rows = json::array();
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = s_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    rows.push_back(json{{"s", s}, {"f", darboux_profile(density, s, tol)}});
  }

  json out{{"family", family}, {"s_max", s_max}, {"count", samples}, {"samples", rows},
           {"tolerances", tolerances_json(tol)}};
  if (!coeffs.empty()) out["coefficients"] = coeffs;
  return finish(out);
}

namespace {

std::vector<std::pair<double, double>> drive_table(const json& v, const char* name) {
  std::vector<std::pair<double, double>> knots;
  if (v.is_number()) {
    knots.emplace_back(0.0, v.get<double>());
    return knots;
  }
  if (v.is_array() && !v.empty()) {
    for (const json& row : v) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
        fail(ErrorKind::parse, std::string(name) + ": table rows must be [time, value]");
      knots.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return knots;
  }
  fail(ErrorKind::parse, std::string(name) + " must be a number or a [[t,v],...] table");
}

}  // namespace

QdynSimulation qdyn_simulate_json(const std::string& drive_json, double a, Cx z,
                                  double total_time, double dt, const Tolerances& tol) {
  const json j = parse_text(drive_json);
  if (!j.is_object() || !j.contains("omega") || !j.contains("Omega0") || !j.contains("Omega1"))
    fail(ErrorKind::parse, "drive JSON needs omega, Omega0, Omega1");

  Drive drive;
  try {
    drive = Drive::piecewise(drive_table(j["omega"], "omega"), drive_table(j["Omega0"], "Omega0"),
                             drive_table(j["Omega1"], "Omega1"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::invalid_argument) fail(ErrorKind::parse, e.what());
    throw;
  }

  const CommutantG g = commutant_matrix(a, z);
  const Trajectory tr = evolve(drive, total_time, dt, tol);

  std::string csv = "t,ReF,ImF,ReL,ImL,P,P_prime\n";
  csv.reserve(tr.states.size() * 96 + csv.size());
  double max_biunitarity = 0;
  char line[224];
  for (const CKState& s : tr.states) {
    const TransitionProbabilities pr = transition_probabilities(s, g);
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", s.t,
                  s.f.real(), s.f.imag(), s.l.real(), s.l.imag(), pr.p, pr.p_prime);
    csv += line;
    max_biunitarity = std::max(max_biunitarity, check_biunitary(s.matrix(), g));
  }

  const CKState& last = tr.states.back();
  const TransitionProbabilities pl = transition_probabilities(last, g);
  const json summary{
      {"a", a},
      {"z", json::array({z.real(), z.imag()})},
      {"total_time", total_time},
      {"dt", dt},
      {"steps", tr.states.size() - 1},
      {"max_unitarity_defect", tr.max_unitarity_defect},
      {"max_ck_defect", tr.max_ck_defect},
      {"max_biunitarity_defect", max_biunitarity},
      {"final",
       json{{"t", last.t},
            {"f", json::array({last.f.real(), last.f.imag()})},
            {"l", json::array({last.l.real(), last.l.imag()})},
            {"p", pl.p},
            {"p_prime", pl.p_prime}}},
      {"tolerances", tolerances_json(tol)}};

  return {std::move(csv), finish(summary)};
}

}  // namespace biham
