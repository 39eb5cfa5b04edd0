#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "biham/eig.hpp"
#include "biham/errors.hpp"
#include "biham/rng.hpp"
#include "biham/twolevel.hpp"

using namespace biham;

namespace {

constexpr double kPi = 3.14159265358979323846;

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double cdist(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

CKState unit_state(double t, Cx f, Cx l) {
  const double n = std::sqrt(std::norm(f) + std::norm(l));
  return CKState{t, f / n, l / n};
}

}  // namespace

TEST_CASE("su(2) basis matrices") {
  const auto [j1, j2, j3] = su2_generators();

  CHECK(j1(0, 1) == Cx(0, 0.5));
  CHECK(j1(1, 0) == Cx(0, 0.5));
  CHECK(j1(0, 0) == Cx(0, 0));
  CHECK(j2(0, 1) == Cx(0.5, 0));
  CHECK(j2(1, 0) == Cx(-0.5, 0));
  CHECK(j3(0, 0) == Cx(0, 0.5));
  CHECK(j3(1, 1) == Cx(0, -0.5));

  // cyclic commutators with a minus sign
  CHECK(cdist(commutator(j1, j2), j3 * Cx(-1)) == 0);
  CHECK(cdist(commutator(j2, j3), j1 * Cx(-1)) == 0);
  CHECK(cdist(commutator(j3, j1), j2 * Cx(-1)) == 0);

  // each squares to -I/4 and is anti-Hermitian
  for (const CMatrix* j : {&j1, &j2, &j3}) {
    CHECK(cdist(*j * *j, CMatrix::identity(2) * Cx(-0.25)) == 0);
    CHECK(cdist(j->adjoint(), *j * Cx(-1)) == 0);
  }
}

TEST_CASE("drive matrix") {
  // pure splitting: i diag(1, -1)
  const CMatrix m3 = hamiltonian_matrix(Drive::constants(2, 0, 0), 0);
  CHECK(m3(0, 0) == Cx(0, 1));
  CHECK(m3(1, 1) == Cx(0, -1));
  CHECK(m3(0, 1) == Cx(0, 0));

  // pure real coupling: i on the off-diagonal
  const CMatrix m1 = hamiltonian_matrix(Drive::constants(0, 1, 0), 0);
  CHECK(m1(0, 1) == Cx(0, 1));
  CHECK(m1(1, 0) == Cx(0, 1));

  // matches the generator combination entry for entry
  const auto [j1, j2, j3] = su2_generators();
  Rng rng(70);
  for (int t = 0; t < 20; ++t) {
    const double w = rng.uniform(-3, 3), o0 = rng.uniform(-3, 3), o1 = rng.uniform(-3, 3);
    const CMatrix m = hamiltonian_matrix(Drive::constants(w, o0, o1), 0.0);
    const CMatrix combo = j1 * Cx(2 * o0) + j2 * Cx(2 * o1) + j3 * Cx(w);
    CHECK(cdist(m, combo) == 0);
    CHECK(cdist(m.adjoint(), m * Cx(-1)) == 0);
  }
}

TEST_CASE("piecewise drive tables") {
  const Drive d = Drive::piecewise({{0.0, 1.0}, {1.0, 2.0}, {2.5, -1.0}}, {{0.0, 0.5}},
                                   {{0.0, 0.0}});
  CHECK(d.omega(-1.0) == 1.0);  // before the table: first value
  CHECK(d.omega(0.0) == 1.0);
  CHECK(d.omega(0.99) == 1.0);
  CHECK(d.omega(1.0) == 2.0);
  CHECK(d.omega(2.5) == -1.0);
  CHECK(d.omega(100.0) == -1.0);

  CHECK_THROWS_AS((void)Drive::piecewise({}, {{0.0, 1.0}}, {{0.0, 1.0}}), Error);
  CHECK_THROWS_AS((void)Drive::piecewise({{1.0, 1.0}, {0.5, 2.0}}, {{0.0, 1.0}}, {{0.0, 1.0}}),
                  Error);
}

TEST_CASE("evolution of a constant resonant coupling") {
  // w = 0, coupling 1: the propagator entries are cos and -i sin
  const Trajectory tr = evolve(Drive::constants(0, 1, 0), 2.0, 1e-4);
  REQUIRE(tr.states.size() == 20001);
  CHECK(tr.max_unitarity_defect < 1e-9);
  CHECK(tr.max_ck_defect < 1e-9);

  for (std::size_t i : {0u, 5000u, 12345u, 20000u}) {
    const CKState& s = tr.states[i];
    CHECK(std::abs(s.f - Cx(std::cos(s.t), 0)) < 1e-6);
    CHECK(std::abs(s.l - Cx(0, -std::sin(s.t))) < 1e-6);
    CHECK(std::norm(s.f) + std::norm(s.l) == doctest::Approx(1.0).epsilon(1e-9));
  }

  // zero-length evolution: the identity state alone
  const Trajectory none = evolve(Drive::constants(3, 1, 2), 0.0, 1e-3);
  REQUIRE(none.states.size() == 1);
  CHECK(none.states[0].f == Cx(1, 0));
  CHECK(none.states[0].l == Cx(0, 0));

  CHECK_THROWS_AS((void)evolve(Drive::constants(0, 1, 0), 1.0, 0.0), Error);
  CHECK_THROWS_AS((void)evolve(Drive::constants(0, 1, 0), -1.0, 1e-3), Error);
}

TEST_CASE("closed-form propagator for constant controls") {
  CHECK(cdist(constant_oracle(1.7, Cx(0.3, -0.4), 0.0), CMatrix::identity(2)) == 0);

  // resonant quarter period: full population transfer
  const CMatrix u = constant_oracle(0, Cx(1, 0), kPi / 2);
  CHECK(std::abs(u(0, 0)) < 1e-15);
  CHECK(std::abs(u(0, 1) - Cx(0, -1)) < 1e-14);
  CHECK(std::abs(u(1, 0) - Cx(0, -1)) < 1e-14);

  // vanishing energy scale: first-order limit
  const CMatrix tiny = constant_oracle(0, Cx(1e-13, 0), 0.5);
  CHECK(std::abs(tiny(0, 0) - Cx(1, 0)) < 1e-12);
  CHECK(std::abs(tiny(1, 0) - Cx(0, -0.5e-13)) < 1e-26);

  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const CMatrix v = constant_oracle(rng.uniform(-2, 2), Cx(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                                      rng.uniform(0, 5));
    CHECK(cdist(v.adjoint() * v, CMatrix::identity(2)) < 1e-14);
    // the closed form lands in the two-parameter shape
    CHECK(std::abs(v(0, 0) - std::conj(v(1, 1))) < 1e-15);
    CHECK(std::abs(v(0, 1) + std::conj(v(1, 0))) < 1e-15);
  }
}

TEST_CASE("integrator agrees with the closed form") {
  Rng rng(72);
  for (int trial = 0; trial < 5; ++trial) {
    const double w = rng.uniform(-2, 2), o0 = rng.uniform(-2, 2), o1 = rng.uniform(-2, 2);
    const double total = rng.uniform(0.5, 2.0);
    const Trajectory tr = evolve(Drive::constants(w, o0, o1), total, 1e-4);
    const CKState& last = tr.states.back();
    CHECK(cdist(last.matrix(), constant_oracle(w, Cx(o0, o1), last.t)) < 1e-6);
    // and halfway along
    const CKState& mid = tr.states[tr.states.size() / 2];
    CHECK(cdist(mid.matrix(), constant_oracle(w, Cx(o0, o1), mid.t)) < 1e-6);
    CHECK(tr.max_unitarity_defect < 1e-9);
  }
}

TEST_CASE("shape preservation under a discontinuous drive") {
  const Drive d = Drive::piecewise({{0.0, 1.0}, {0.5, -2.0}, {1.1, 0.3}},
                                   {{0.0, 0.8}, {0.7, -0.4}}, {{0.0, 0.0}, {0.9, 1.5}});
  const Trajectory tr = evolve(d, 2.0, 1e-3);
  // the two-parameter shape survives the jumps exactly; raw unitarity drift
  // at a jump is one step of truncation and is renormalized away
  CHECK(tr.max_ck_defect < 1e-9);
  CHECK(tr.max_unitarity_defect < 1e-3);
  for (const CKState& s : tr.states)
    CHECK(std::norm(s.f) + std::norm(s.l) == doctest::Approx(1.0).epsilon(1e-9));

  // independent oracle: chain the constant-drive closed forms segment by
  // segment (segments of constancy: [0,.5) [.5,.7) [.7,.9) [.9,1.1) [1.1,2])
  const CMatrix product = constant_oracle(0.3, Cx(-0.4, 1.5), 2.0 - 1.1) *
                          constant_oracle(-2.0, Cx(-0.4, 1.5), 1.1 - 0.9) *
                          constant_oracle(-2.0, Cx(-0.4, 0.0), 0.9 - 0.7) *
                          constant_oracle(-2.0, Cx(0.8, 0.0), 0.7 - 0.5) *
                          constant_oracle(1.0, Cx(0.8, 0.0), 0.5);
  CHECK(cdist(tr.states.back().matrix(), product) < 5e-3);
}

TEST_CASE("quaternionic commutant family") {
  const CommutantG g = commutant_matrix(2.0, Cx(0, 1));
  const QMatrix m = g.matrix();
  CHECK(m(0, 0) == Quaternion(2));
  CHECK(m(1, 1) == Quaternion(2));
  CHECK(m(0, 1) == Quaternion(0, 0, 0, -1));  // j * i = -k
  CHECK(m(1, 0) == Quaternion(0, 0, 0, 1));
  CHECK((m - m.adjoint()).max_abs() == 0);

  const QEigResult eig = quat_hermitian_eig(m);
  REQUIRE(eig.eigenvalues.size() == 2);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));

  // no coupling: a scalar matrix
  const QMatrix scalar = commutant_matrix(1.5, Cx(0, 0)).matrix();
  CHECK(scalar(0, 1) == Quaternion(0));
  CHECK(scalar(0, 0) == Quaternion(1.5));

  CHECK_THROWS_AS((void)commutant_matrix(1.0, Cx(1, 0)), Error);
  bool domain = false;
  try {
    (void)commutant_matrix(0.5, Cx(0, 1));
  } catch (const Error& e) {
    domain = e.kind() == ErrorKind::domain;
  }
  CHECK(domain);
}

TEST_CASE("every two-parameter unitary commutes with the family") {
  Rng rng(73);
  const CommutantG g = commutant_matrix(1.0, Cx(0.5, 0));
  for (int t = 0; t < 25; ++t) {
    const CKState s = unit_state(0, rng.cnormal(), rng.cnormal());
    CHECK(check_biunitary(s.matrix(), g) < 1e-12);
  }

  // a unitary outside the shape does not
  CMatrix off(2, 2);
  off(0, 0) = Cx(1, 0);
  off(1, 1) = Cx(0, 1);
  CHECK(check_biunitary(off, g) > 0.1);

  // along an actual evolution
  const Trajectory tr = evolve(Drive::constants(0.7, 0.4, -0.2), 1.0, 1e-3);
  double worst = 0;
  for (std::size_t i = 0; i < tr.states.size(); i += 100)
    worst = std::max(worst, check_biunitary(tr.states[i].matrix(), g));
  CHECK(worst < 1e-10);
}

TEST_CASE("transition probabilities in both descriptions") {
  const CommutantG g = commutant_matrix(1.0, Cx(0, 0.5));

  // at the start the quaternionic description already sees |z|^2
  const CKState start{0, Cx(1, 0), Cx(0, 0)};
  const TransitionProbabilities p0 = transition_probabilities(start, g);
  CHECK(p0.p == 0.0);
  CHECK(p0.p_prime == doctest::Approx(0.25).epsilon(1e-12));

  // full transfer: both descriptions saturate
  const CKState full{kPi / 2, Cx(0, 0), Cx(0, -1)};
  const TransitionProbabilities pf = transition_probabilities(full, g);
  CHECK(pf.p == doctest::Approx(1.0));
  CHECK(pf.p_prime == doctest::Approx(1.0).epsilon(1e-12));

  // scalar family: the two descriptions coincide
  const CommutantG scalar = commutant_matrix(1.3, Cx(0, 0));
  Rng rng(74);
  for (int t = 0; t < 20; ++t) {
    const CKState s = unit_state(0, rng.cnormal(), rng.cnormal());
    const TransitionProbabilities pr = transition_probabilities(s, scalar);
    CHECK(pr.p_prime == doctest::Approx(pr.p).epsilon(1e-12));
  }

  // first-principles amplitude matches the closed form for arbitrary (a, z)
  for (int t = 0; t < 30; ++t) {
    const Cx z(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double a = std::abs(z) + rng.uniform(0.1, 2.0);
    const CommutantG gg = commutant_matrix(a, z);
    const CKState s = unit_state(0, rng.cnormal(), rng.cnormal());
    const TransitionProbabilities pr = transition_probabilities(s, gg);
    const double closed =
        (std::norm(z) * std::norm(s.f) + a * a * std::norm(s.l)) / (a * a);
    CHECK(pr.p_prime == doctest::Approx(closed).epsilon(1e-12));
    CHECK(pr.p >= 0);
    CHECK(pr.p <= 1 + 1e-12);
    CHECK(pr.p_prime >= 0);
    CHECK(pr.p_prime <= 1 + 1e-12);
    // the quaternionic description never reports less
    CHECK(pr.p_prime - pr.p == doctest::Approx(std::norm(z) / (a * a) * std::norm(s.f))
                                   .epsilon(1e-10));
    CHECK(pr.p_prime + 1e-12 >= pr.p);
  }
}

TEST_CASE("fixed transform diagonalizes the quaternionic picture") {
  const QMatrix d = diagonalize_d();
  CHECK((d * d.adjoint() - QMatrix::identity(2)).max_abs() < 1e-15);

  const Trajectory tr = evolve(Drive::constants(1.1, 0.6, -0.3), 1.0, 1e-3);
  std::vector<CKState> sample;
  for (std::size_t i = 0; i < tr.states.size(); i += 200) sample.push_back(tr.states[i]);

  const CommutantG g = commutant_matrix(2.0, Cx(0, 1));
  const DiagonalizationReport rep = diagonalization_report(sample, g);
  CHECK(rep.dd_defect < 1e-15);
  CHECK(rep.propagator_defect < 1e-9);
  CHECK(rep.commutant_defect < 1e-12);

  // each conjugated generator is a scalar diagonal; the actual scalars are
  // -k/2, -j/2, +i/2, which again satisfy [u_l, u_m] = -eps u_n
  for (int k = 0; k < 3; ++k) CHECK(rep.generator_scalar_defects[k] < 1e-15);
  const Quaternion u1 = rep.generator_images[0], u2 = rep.generator_images[1],
                   u3 = rep.generator_images[2];
  CHECK((u1 - Quaternion(0, 0, 0, -0.5)).norm() < 1e-15);
  CHECK((u2 - Quaternion(0, 0, -0.5, 0)).norm() < 1e-15);
  CHECK((u3 - Quaternion(0, 0.5, 0, 0)).norm() < 1e-15);
  CHECK((u1 * u2 - u2 * u1 + u3).norm() < 1e-15);
  CHECK((u2 * u3 - u3 * u2 + u1).norm() < 1e-15);
  CHECK((u3 * u1 - u1 * u3 + u2).norm() < 1e-15);

  // the nominal targets diag(i,i)/diag(j,j)/diag(k,k) are missed by a fixed
  // margin: a unitary conjugation preserves norm, and the generators have
  // half the norm of those targets
  CHECK(rep.generator_defects[0] == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(rep.generator_defects[1] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(rep.generator_defects[2] == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));

  // the commutant target diag(a+|z|, a-|z|) needs z on the positive
  // imaginary axis; a real z misses it by a finite margin
  const DiagonalizationReport off =
      diagonalization_report(sample, commutant_matrix(2.0, Cx(1, 0)));
  CHECK(off.commutant_defect > 0.1);
  CHECK(off.dd_defect < 1e-15);

  // explicit check of the diagonal value: D G D' for a=2, z=i is diag(3, 1)
  const QMatrix dgd = d * g.matrix() * d.adjoint();
  CHECK((dgd(0, 0) - Quaternion(3)).norm() < 1e-14);
  CHECK((dgd(1, 1) - Quaternion(1)).norm() < 1e-14);
  CHECK(dgd(0, 1).norm() < 1e-14);
}
