#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <biham.h>

namespace {

struct Session {
  biham_session* s = biham_session_new();
  ~Session() { biham_session_free(s); }
};

struct Out {
  char* p = nullptr;
  ~Out() { biham_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

const char* kId2 = "{\"rows\":2,\"cols\":2,\"entries\":[[1,0],[0,0],[0,0],[1,0]]}";
const char* kDiag12 = "{\"rows\":2,\"cols\":2,\"entries\":[[1,0],[0,0],[0,0],[2,0]]}";

}  // namespace

TEST_CASE("session lifecycle and version") {
  CHECK(std::strcmp(biham_version(), "1.0.0") == 0);
  Session s;
  REQUIRE(s.s != nullptr);
  CHECK(std::string(biham_last_error(s.s)).empty());
  biham_session_free(nullptr);  // must be a no-op
  biham_free(nullptr);          // likewise
}

TEST_CASE("generic report round-trip through the C surface") {
  Session s;
  Out out;
  REQUIRE(biham_generic_report(s.s, kId2, kDiag12, &out.p) == BIHAM_OK);
  const std::string text = out.str();
  CHECK(text.find("\"signature\"") != std::string::npos);
  CHECK(text.find("U(1)xU(1)") != std::string::npos);
  CHECK(text.find("\"tolerances\"") != std::string::npos);

  Out again;
  REQUIRE(biham_generic_report(s.s, kId2, kDiag12, &again.p) == BIHAM_OK);
  CHECK(again.str() == text);  // byte-identical reruns
}

TEST_CASE("error paths map onto the status enum") {
  Session s;
  Out out;
  CHECK(biham_generic_report(s.s, "{oops", kDiag12, &out.p) == BIHAM_PARSE);
  CHECK(!std::string(biham_last_error(s.s)).empty());
  CHECK(out.p == nullptr);

  const char* quat = "{\"rows\":2,\"cols\":2,\"entries\":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[1,0,0,0]]}";
  CHECK(biham_generic_report(s.s, kId2, quat, &out.p) == BIHAM_INVALID_ARGUMENT);

  const char* skew = "{\"rows\":2,\"cols\":2,\"entries\":[[0,0],[1,0],[-1,0],[0,0]]}";
  CHECK(biham_generic_report(s.s, skew, kDiag12, &out.p) == BIHAM_INVALID_ARGUMENT);

  CHECK(biham_generic_report(s.s, nullptr, kDiag12, &out.p) == BIHAM_INVALID_ARGUMENT);
  CHECK(biham_generic_report(nullptr, kId2, kDiag12, &out.p) == BIHAM_INVALID_ARGUMENT);

  // a successful call clears the stored message
  Out ok;
  REQUIRE(biham_generic_report(s.s, kId2, kDiag12, &ok.p) == BIHAM_OK);
  CHECK(std::string(biham_last_error(s.s)).empty());
}

TEST_CASE("configure adjusts tolerances and rejects bad keys") {
  Session s;
  CHECK(biham_configure(s.s, "no_such_knob", 1.0) == BIHAM_INVALID_ARGUMENT);
  CHECK(biham_configure(s.s, nullptr, 1.0) == BIHAM_INVALID_ARGUMENT);
  CHECK(biham_configure(s.s, "cond_limit", -3.0) == BIHAM_INVALID_ARGUMENT);
  CHECK(biham_configure(s.s, "cond_limit", 10.0) == BIHAM_OK);

  // with the tightened gate an ill-conditioned pivot must be refused
  const char* stiff = "{\"rows\":2,\"cols\":2,\"entries\":[[1,0],[0,0],[0,0],[1e-06,0]]}";
  Out out;
  CHECK(biham_deform_report(s.s, stiff, nullptr, nullptr, 5, 4, &out.p) == BIHAM_NUMERIC);
  CHECK(biham_configure(s.s, "cond_limit", 1e8) == BIHAM_OK);
  CHECK(biham_deform_report(s.s, stiff, nullptr, nullptr, 5, 4, &out.p) == BIHAM_OK);
}

TEST_CASE("deform report honors the optional blocks") {
  Session s;
  Out bare;
  REQUIRE(biham_deform_report(s.s, kId2, nullptr, nullptr, 11, 8, &bare.p) == BIHAM_OK);
  CHECK(bare.str().find("\"present\": false") != std::string::npos);

  Out full;
  REQUIRE(biham_deform_report(s.s, kId2, kDiag12, kId2, 11, 8, &full.p) == BIHAM_OK);
  CHECK(full.str().find("\"involution_defect\"") != std::string::npos);
  CHECK(full.str().find("\"is_derivation\": true") != std::string::npos);
}

TEST_CASE("geometry and darboux endpoints") {
  Session s;
  Out geo;
  REQUIRE(biham_geometry_report(s.s, 0.2, 5, 77, &geo.p) == BIHAM_OK);
  CHECK(geo.str().find("\"invariance\"") != std::string::npos);
  CHECK(biham_geometry_report(s.s, -0.5, 5, 77, &geo.p) == BIHAM_INVALID_ARGUMENT);

  Out tab;
  REQUIRE(biham_darboux_table(s.s, "poly:1,4,3", 2.0, 5, &tab.p) == BIHAM_OK);
  CHECK(tab.str().find("\"samples\"") != std::string::npos);
  CHECK(biham_darboux_table(s.s, "gauss", 2.0, 5, &tab.p) == BIHAM_PARSE);
  CHECK(biham_darboux_table(s.s, "poly:-1", 2.0, 5, &tab.p) == BIHAM_DOMAIN);
}

TEST_CASE("two-level simulation endpoint") {
  Session s;
  Out csv, summary;
  const char* drive = "{\"omega\":0,\"Omega0\":1,\"Omega1\":0}";
  REQUIRE(biham_qdyn_simulate(s.s, drive, 1.0, 0.0, 0.5, 0.2, 1e-3, &csv.p, &summary.p) ==
          BIHAM_OK);
  CHECK(csv.str().rfind("t,ReF,ImF,ReL,ImL,P,P_prime\n", 0) == 0);
  CHECK(summary.str().find("\"max_biunitarity_defect\"") != std::string::npos);

  CHECK(biham_qdyn_simulate(s.s, drive, 0.5, 0.0, 1.0, 0.2, 1e-3, &csv.p, &summary.p) ==
        BIHAM_DOMAIN);
  CHECK(biham_qdyn_simulate(s.s, "[]", 1.0, 0.0, 0.5, 0.2, 1e-3, &csv.p, &summary.p) ==
        BIHAM_PARSE);
}

TEST_CASE("acceptance battery through the C surface") {
  Session s;
  Out out;
  size_t failed = 123;
  REQUIRE(biham_acceptance_run(s.s, 20260822, &out.p, &failed) == BIHAM_OK);
  const std::string text = out.str();
  CHECK(failed == 2);
  CHECK(text.find("PASS 1 ") != std::string::npos);
  CHECK(text.find("FAIL 6 ") != std::string::npos);
  CHECK(text.find("FAIL 10 ") != std::string::npos);
  CHECK(text.find("8/10 checks passed") != std::string::npos);
}
