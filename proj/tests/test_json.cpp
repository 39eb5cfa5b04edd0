#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "biham/errors.hpp"
#include "biham/json_io.hpp"

using namespace biham;
using nlohmann::json;

namespace {

std::string cmat2(double a, double b, double c, double d) {
  std::ostringstream os;
  os << "{\"rows\":2,\"cols\":2,\"entries\":[[" << a << ",0],[" << b << ",0],[" << c << ",0],["
     << d << ",0]]}";
  return os.str();
}

int line_count(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("matrix parsing round-trips both scalar fields") {
  const std::string ctext = "{\"rows\":2,\"cols\":1,\"entries\":[[1,2],[3,-4]]}";
  ParsedMatrix pc = parse_matrix(ctext);
  CHECK(pc.field == Field::complex_field);
  REQUIRE(pc.c.has_value());
  CHECK(pc.c->rows() == 2);
  CHECK(pc.c->cols() == 1);
  CHECK((*pc.c)(0, 0) == Cx(1, 2));
  CHECK((*pc.c)(1, 0) == Cx(3, -4));

  ParsedMatrix back = parse_matrix(matrix_to_json(*pc.c));
  CHECK(back.field == Field::complex_field);
  CHECK((*back.c - *pc.c).max_abs() == 0);

  const std::string qtext = "{\"rows\":1,\"cols\":2,\"entries\":[[1,0,0,0],[0.5,-1,2,3]]}";
  ParsedMatrix pq = parse_matrix(qtext);
  CHECK(pq.field == Field::quaternionic);
  REQUIRE(pq.q.has_value());
  CHECK((*pq.q)(0, 1).w == 0.5);
  CHECK((*pq.q)(0, 1).z == 3.0);

  ParsedMatrix qback = parse_matrix(matrix_to_json(*pq.q));
  CHECK(qback.field == Field::quaternionic);
  CHECK((*qback.q - *pq.q).max_abs() == 0);
}

TEST_CASE("malformed matrix text is rejected as a parse error") {
  auto expect_parse = [](const std::string& text) {
    try {
      parse_matrix(text);
      FAIL_CHECK("no error for: " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse);
    }
  };
  expect_parse("not json at all");
  expect_parse("[1,2,3]");
  expect_parse("{\"rows\":2,\"cols\":2}");
  expect_parse("{\"rows\":0,\"cols\":1,\"entries\":[]}");
  expect_parse("{\"rows\":2,\"cols\":1,\"entries\":[[1,0]]}");
  expect_parse("{\"rows\":1,\"cols\":2,\"entries\":[[1,0],[1,0,0,0]]}");
  expect_parse("{\"rows\":1,\"cols\":1,\"entries\":[[1,0,0]]}");
  expect_parse("{\"rows\":1,\"cols\":1,\"entries\":[[1,\"x\"]]}");

  try {
    parse_cmatrix("{\"rows\":1,\"cols\":1,\"entries\":[[1,0,0,0]]}");
    FAIL_CHECK("quaternionic text accepted as complex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
  }
}

TEST_CASE("pair report carries signature, label, and is deterministic") {
  const std::string h1 = cmat2(1, 0, 0, 1);
  const std::string h2 = cmat2(1, 0, 0, 2);
  const std::string text = genericity_report_json(h1, h2, Tolerances{});
  const json rep = json::parse(text);

  CHECK(rep["field"] == "complex");
  CHECK(rep["dim"] == 2);
  CHECK(rep["signature"] == json::array({1, 1}));
  CHECK(rep["degeneracies"] == rep["signature"]);
  CHECK(rep["group_label"] == "U(1)xU(1)");
  CHECK(rep["cyclic"] == true);
  CHECK(rep["def3_holds"] == true);
  CHECK(rep["commutant_real_dim"] == 4);
  CHECK(rep["witness_available"] == true);
  CHECK(rep["witness"].is_array());
  CHECK(rep["tolerances"]["cond_limit"].get<double>() == 1e8);

  CHECK(genericity_report_json(h1, h2, Tolerances{}) == text);

  const std::string hq = "{\"rows\":2,\"cols\":2,\"entries\":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[1,0,0,0]]}";
  try {
    genericity_report_json(h1, hq, Tolerances{});
    FAIL_CHECK("mixed-field pair accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
  }
}

TEST_CASE("deformation report checks the algebra laws and optional blocks") {
  const std::string k = cmat2(1, 0, 0, 1);
  const std::string g = cmat2(1, 0, 0, 2);
  const std::string text = deform_report_json(k, g, k, 99, 25, Tolerances{});
  const json rep = json::parse(text);

  CHECK(rep["field"] == "complex");
  CHECK(rep["condition"].get<double>() == doctest::Approx(1.0));
  CHECK(rep["unit_defect"].get<double>() < 1e-12);
  CHECK(rep["associativity_defect"].get<double>() < 1e-12);
  CHECK(rep["isomorphism_defect"].get<double>() < 1e-12);
  CHECK(rep["s_dim"] == rep["s_k_dim"]);
  CHECK(rep["span_defect"].get<double>() < 1e-10);
  CHECK(rep["star"]["present"] == true);
  CHECK(rep["star"]["involution_defect"].get<double>() < 1e-12);
  CHECK(rep["star"]["antihomomorphism_defect"].get<double>() < 1e-12);
  CHECK(rep["derivation"]["present"] == true);
  CHECK(rep["derivation"]["is_derivation"] == true);
  CHECK(rep["derivation"]["hk_commutator"].get<double>() < 1e-14);

  CHECK(deform_report_json(k, g, k, 99, 25, Tolerances{}) == text);
  CHECK(deform_report_json(k, g, k, 100, 25, Tolerances{}) != text);

  const json bare = json::parse(deform_report_json(k, std::nullopt, std::nullopt, 7, 10, Tolerances{}));
  CHECK(bare["star"]["present"] == false);
  CHECK(bare["derivation"]["present"] == false);

  // a non-commuting direction must be flagged
  const json skew = json::parse(
      deform_report_json(cmat2(1, 0, 0, 2), std::nullopt, cmat2(0, 1, 1, 0), 7, 10, Tolerances{}));
  CHECK(skew["derivation"]["is_derivation"] == false);
  CHECK(skew["derivation"]["max_defect"].get<double>() > 1e-3);
}

TEST_CASE("geometry report reproduces the closed-form reference values") {
  const double lambda = 0.3;
  const std::string text = geometry_report_json(lambda, 20, 4242, Tolerances{});
  const json rep = json::parse(text);

  CHECK(rep["invariance"]["omega"].get<double>() < 1e-6);
  CHECK(rep["invariance"]["metric"].get<double>() < 1e-6);
  CHECK(rep["invariance"]["complex_structure"].get<double>() < 1e-6);
  CHECK(rep["pullback"]["metric"].get<double>() < 1e-6);
  CHECK(rep["pullback"]["symplectic"].get<double>() < 1e-6);
  CHECK(rep["pullback"]["bracket"].get<double>() < 1e-6);
  CHECK(rep["chart"]["roundtrip"].get<double>() < 1e-10);
  CHECK(rep["chart"]["jsquare"].get<double>() < 1e-9);
  CHECK(rep["chart"]["admissibility"].get<double>() < 1e-9);

  const double c = (1 + lambda * 0.5) * (1 + 3 * lambda * 0.5);
  CHECK(rep["reference_point"]["area_factor"].get<double>() == doctest::Approx(c).epsilon(1e-12));
  CHECK(rep["reference_point"]["bracket_coefficient"].get<double>() ==
        doctest::Approx(1 / c).epsilon(1e-12));

  CHECK(rep["bracket_comparison"]["flat"].get<double>() < 1e-6);
  CHECK(rep["bracket_comparison"]["deformed"].get<double>() > 1e-3);

  CHECK(geometry_report_json(lambda, 20, 4242, Tolerances{}) == text);
}

TEST_CASE("darboux table handles both families and rejects bad input") {
  const json lin = json::parse(darboux_table_json("poly:1,4,3", 4.0, 9, Tolerances{}));
  REQUIRE(lin["samples"].size() == 9);
  for (const json& row : lin["samples"]) {
    const double s = row["s"].get<double>();
    CHECK(std::abs(row["f"].get<double>() - s) < 1e-8);
  }
  CHECK(lin["coefficients"] == json::array({1.0, 4.0, 3.0}));

  const json unit = json::parse(darboux_table_json("unit", 2.0, 5, Tolerances{}));
  for (const json& row : unit["samples"]) CHECK(std::abs(row["f"].get<double>()) < 1e-12);

  auto expect_kind = [](const std::string& family, ErrorKind want) {
    try {
      darboux_table_json(family, 1.0, 3, Tolerances{});
      FAIL_CHECK("no error for family " << family);
    } catch (const Error& e) {
      CHECK(e.kind() == want);
    }
  };
  expect_kind("gauss", ErrorKind::parse);
  expect_kind("poly:", ErrorKind::parse);
  expect_kind("poly:1,zz", ErrorKind::parse);
  expect_kind("poly:-1", ErrorKind::domain);
}

TEST_CASE("two-level simulation emits CSV plus a summary that matches the oracle") {
  const std::string drive = "{\"omega\":0,\"Omega0\":1,\"Omega1\":0}";
  const QdynSimulation sim = qdyn_simulate_json(drive, 1.0, Cx(0, 0.5), 0.1, 1e-3, Tolerances{});

  CHECK(sim.csv.rfind("t,ReF,ImF,ReL,ImL,P,P_prime\n", 0) == 0);
  CHECK(line_count(sim.csv) == 102);  // header + 101 states

  const json sum = json::parse(sim.summary);
  CHECK(sum["steps"] == 100);
  const double ct = std::cos(0.1), st = std::sin(0.1);
  CHECK(std::abs(sum["final"]["f"][0].get<double>() - ct) < 1e-9);
  CHECK(std::abs(sum["final"]["f"][1].get<double>()) < 1e-9);
  CHECK(std::abs(sum["final"]["l"][0].get<double>()) < 1e-9);
  CHECK(std::abs(sum["final"]["l"][1].get<double>() + st) < 1e-9);
  CHECK(std::abs(sum["final"]["p"].get<double>() - st * st) < 1e-9);
  CHECK(std::abs(sum["final"]["p_prime"].get<double>() - (0.25 * ct * ct + st * st)) < 1e-8);
  CHECK(sum["max_ck_defect"].get<double>() < 1e-12);
  CHECK(sum["max_biunitarity_defect"].get<double>() < 1e-10);

  const QdynSimulation again = qdyn_simulate_json(drive, 1.0, Cx(0, 0.5), 0.1, 1e-3, Tolerances{});
  CHECK(again.csv == sim.csv);
  CHECK(again.summary == sim.summary);

  const std::string table =
      "{\"omega\":[[0,0],[0.05,2]],\"Omega0\":0.5,\"Omega1\":[[0,0.25]]}";
  const QdynSimulation stepped = qdyn_simulate_json(table, 2.0, Cx(0, 1), 0.1, 1e-3, Tolerances{});
  CHECK(json::parse(stepped.summary)["steps"] == 100);

  auto expect_kind = [](const std::string& text, double a, Cx z, ErrorKind want) {
    try {
      qdyn_simulate_json(text, a, z, 0.1, 1e-3, Tolerances{});
      FAIL_CHECK("no error for drive " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == want);
    }
  };
  expect_kind("{\"omega\":0,\"Omega0\":1}", 1.0, Cx(0, 0.5), ErrorKind::parse);
  expect_kind("{\"omega\":\"x\",\"Omega0\":1,\"Omega1\":0}", 1.0, Cx(0, 0.5), ErrorKind::parse);
  expect_kind("{\"omega\":[[1,0],[0,1]],\"Omega0\":1,\"Omega1\":0}", 1.0, Cx(0, 0.5),
              ErrorKind::parse);
  expect_kind(drive, 0.5, Cx(0, 1), ErrorKind::domain);
}
