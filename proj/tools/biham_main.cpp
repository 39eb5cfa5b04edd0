#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <biham.h>

namespace {

struct Session {
  biham_session* s = biham_session_new();
  ~Session() { biham_session_free(s); }
};

struct Out {
  char* p = nullptr;
  ~Out() { biham_free(p); }
};

int exit_code_for(biham_status st) { return st == BIHAM_PARSE ? 2 : 1; }

int report_failure(biham_session* s, biham_status st) {
  std::cerr << "error: " << biham_last_error(s) << "\n";
  return exit_code_for(st);
}

// "-" means stdin; any read failure is an invocation problem (exit 2)
bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    text = os.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return false;
  }
  std::ostringstream os;
  os << in.rdbuf();
  text = os.str();
  return true;
}

int write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 1;
  }
  out << text;
  return 0;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() > 0) return value;
  if (const char* env = std::getenv("BIHAM_SEED")) return std::strtoull(env, nullptr, 10);
  return 20260822;
}

// a bare number stays a number; anything else is passed through as a JSON
// table and validated downstream
std::string drive_piece(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() && end && *end == '\0') {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  return text;
}

bool parse_complex_pair(const std::string& text, double& re, double& im) {
  char extra = 0;
  return std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &extra) == 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-Hamiltonian structures toolkit"};
  app.require_subcommand(1);

  std::string h1_path, h2_path, out_path;
  CLI::App* generic = app.add_subcommand(
      "generic-report", "spectral/commutant report for a pair of positive Hermitian forms");
  generic->add_option("--h1", h1_path, "first form (JSON file, - for stdin)")->required();
  generic->add_option("--h2", h2_path, "second form (JSON file, - for stdin)")->required();
  generic->add_option("-o,--output", out_path, "output path (default stdout)");

  std::string k_path, g_path, ham_path, d_out;
  std::uint64_t d_seed = 0;
  std::size_t d_trials = 50;
  CLI::App* deform = app.add_subcommand("deform", "deformed-product report for a pivot matrix");
  deform->add_option("--k", k_path, "pivot matrix K (JSON file, - for stdin)")->required();
  deform->add_option("--g", g_path, "positive Hermitian metric for the adjoint block");
  deform->add_option("-H,--hamiltonian", ham_path, "Hamiltonian for the derivation block");
  deform->add_option("--trials", d_trials, "randomized trials per law");
  CLI::Option* d_seed_opt = deform->add_option("--seed", d_seed, "seed for the randomized laws");
  deform->add_option("-o,--output", d_out, "output path (default stdout)");

  double lambda = 0.3;
  std::size_t points = 50;
  std::uint64_t g_seed = 0;
  std::string geo_out;
  CLI::App* geo = app.add_subcommand("geometry-demo",
                                     "invariance and pullback diagnostics for the deformed "
                                     "structures");
  geo->add_option("--lambda", lambda, "deformation parameter (>= 0)");
  geo->add_option("--points", points, "number of sample points");
  CLI::Option* g_seed_opt = geo->add_option("--seed", g_seed, "seed for the sample points");
  geo->add_option("-o,--output", geo_out, "output path (default stdout)");

  std::string family, dar_out;
  double s_max = 4.0;
  std::size_t samples = 17;
  CLI::App* dar = app.add_subcommand("darboux", "flat-coordinate profile for a density family");
  dar->add_option("--family", family, "density family: unit or poly:c0,c1,...")->required();
  dar->add_option("--smax", s_max, "upper end of the radial range");
  dar->add_option("--samples", samples, "number of table rows");
  dar->add_option("-o,--output", dar_out, "output path (default stdout)");

  std::string omega = "0", omega0 = "0", omega1 = "0", z_text = "0,0";
  double q_a = 1.0, q_t = 0.0, q_dt = 1e-3;
  std::string csv_out, summary_out;
  CLI::App* qdyn = app.add_subcommand("qdyn-sim", "integrate the two-level system and check it "
                                                  "against a commutant element");
  qdyn->add_option("--omega", omega, "level splitting: number or [[t,v],...] step table");
  qdyn->add_option("--Omega0", omega0, "coupling, real part: number or step table");
  qdyn->add_option("--Omega1", omega1, "coupling, imaginary part: number or step table");
  qdyn->add_option("--a", q_a, "commutant diagonal (a > |z|)");
  qdyn->add_option("--z", z_text, "commutant off-diagonal as re,im");
  qdyn->add_option("--T", q_t, "total evolution time")->required();
  qdyn->add_option("--dt", q_dt, "integrator step");
  qdyn->add_option("-o,--output", csv_out, "CSV output path (default stdout)");
  qdyn->add_option("--summary", summary_out,
                   "summary JSON path (default stderr when CSV uses stdout)");

  std::uint64_t c_seed = 0;
  CLI::App* check = app.add_subcommand("paper-check", "run the built-in acceptance checks");
  CLI::Option* c_seed_opt = check->add_option("--seed", c_seed, "seed for the randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Session session;
  if (!session.s) {
    std::cerr << "error: cannot create session\n";
    return 1;
  }

  if (generic->parsed()) {
    std::string h1, h2;
    if (!read_input(h1_path, h1) || !read_input(h2_path, h2)) return 2;
    Out out;
    const biham_status st = biham_generic_report(session.s, h1.c_str(), h2.c_str(), &out.p);
    if (st != BIHAM_OK) return report_failure(session.s, st);
    return write_output(out_path, out.p);
  }

  if (deform->parsed()) {
    std::string k, g, h;
    if (!read_input(k_path, k)) return 2;
    if (!g_path.empty() && !read_input(g_path, g)) return 2;
    if (!ham_path.empty() && !read_input(ham_path, h)) return 2;
    Out out;
    const biham_status st = biham_deform_report(
        session.s, k.c_str(), g_path.empty() ? nullptr : g.c_str(),
        ham_path.empty() ? nullptr : h.c_str(), resolve_seed(d_seed_opt, d_seed), d_trials,
        &out.p);
    if (st != BIHAM_OK) return report_failure(session.s, st);
    return write_output(d_out, out.p);
  }

  if (geo->parsed()) {
    Out out;
    const biham_status st = biham_geometry_report(session.s, lambda, points,
                                                  resolve_seed(g_seed_opt, g_seed), &out.p);
    if (st != BIHAM_OK) return report_failure(session.s, st);
    return write_output(geo_out, out.p);
  }

  if (dar->parsed()) {
    Out out;
    const biham_status st =
        biham_darboux_table(session.s, family.c_str(), s_max, samples, &out.p);
    if (st != BIHAM_OK) return report_failure(session.s, st);
    return write_output(dar_out, out.p);
  }

  if (qdyn->parsed()) {
    double z_re = 0, z_im = 0;
    if (!parse_complex_pair(z_text, z_re, z_im)) {
      std::cerr << "error: --z expects re,im\n";
      return 2;
    }
    const std::string drive = "{\"omega\":" + drive_piece(omega) +
                              ",\"Omega0\":" + drive_piece(omega0) +
                              ",\"Omega1\":" + drive_piece(omega1) + "}";
    Out csv, summary;
    const biham_status st = biham_qdyn_simulate(session.s, drive.c_str(), q_a, z_re, z_im, q_t,
                                                q_dt, &csv.p, &summary.p);
    if (st != BIHAM_OK) return report_failure(session.s, st);
    if (const int rc = write_output(csv_out, csv.p)) return rc;
    if (!summary_out.empty()) return write_output(summary_out, summary.p);
    if (!csv_out.empty()) {
      std::cout << summary.p;
    } else {
      std::cerr << summary.p;
    }
    return 0;
  }

  if (check->parsed()) {
    Out out;
    std::size_t failed = 0;
    const biham_status st =
        biham_acceptance_run(session.s, resolve_seed(c_seed_opt, c_seed), &out.p, &failed);
    if (st != BIHAM_OK) return report_failure(session.s, st);
    std::cout << out.p;
    return failed ? 1 : 0;
  }

  return 2;
}
