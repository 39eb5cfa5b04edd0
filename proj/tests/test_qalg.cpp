#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "biham/eig.hpp"
#include "biham/errors.hpp"
#include "biham/forms.hpp"
#include "biham/matrix.hpp"
#include "biham/rng.hpp"

using namespace biham;

namespace {

double cmat_dist(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }
double qmat_dist(const QMatrix& a, const QMatrix& b) { return (a - b).max_abs(); }

// brute-force 2x2 complex determinant for cross-checks
Cx det2(const CMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

TEST_CASE("quaternion arithmetic basics") {
  const Quaternion i = Quaternion::unit_i(), j = Quaternion::unit_j(), k = Quaternion::unit_k();

  CHECK(i * j == k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(j * i == -k);
  CHECK((i * i).w == doctest::Approx(-1.0));

  const Quaternion a{1, 2, 3, 4}, b{5, 6, 7, 8};
  const Quaternion ab = a * b;
  CHECK(ab.w == doctest::Approx(-60));
  CHECK(ab.x == doctest::Approx(12));
  CHECK(ab.y == doctest::Approx(30));
  CHECK(ab.z == doctest::Approx(24));
  // multiplication is not commutative; conj reverses the order
  CHECK(abs_dist((a * b).conj(), b.conj() * a.conj()) < 1e-14);
  CHECK(abs_dist(a * b, b * a) > 1.0);

  const Quaternion u{1, 1, 1, 1};
  const Quaternion ui = inverse(u);
  CHECK(ui.w == doctest::Approx(0.25));
  CHECK(ui.x == doctest::Approx(-0.25));
  CHECK(ui.y == doctest::Approx(-0.25));
  CHECK(ui.z == doctest::Approx(-0.25));
  CHECK(abs_dist(u * ui, Quaternion(1.0)) < 1e-15);
  CHECK(abs_dist(ui * u, Quaternion(1.0)) < 1e-15);

  // |pq| = |p||q|
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Quaternion p = rng.qnormal(), q = rng.qnormal();
    CHECK((p * q).norm() == doctest::Approx(p.norm() * q.norm()).epsilon(1e-12));
  }
}

TEST_CASE("split round-trip and j-commutation") {
  Rng rng(12);
  for (int t = 0; t < 25; ++t) {
    const Quaternion q = rng.qnormal();
    const auto [c1, c2] = q.split();
    // q = c1 + c2 * j
    const Quaternion rebuilt = Quaternion(c1) + Quaternion(c2) * Quaternion::unit_j();
    CHECK(abs_dist(q, rebuilt) < 1e-15);
    // j c = conj(c) j
    const Cx c = rng.cnormal();
    CHECK(abs_dist(Quaternion::unit_j() * Quaternion(c),
                   Quaternion(std::conj(c)) * Quaternion::unit_j()) < 1e-15);
  }
}

TEST_CASE("complex counterpart of single units") {
  QMatrix mj(1, 1);
  mj(0, 0) = Quaternion::unit_j();
  const CMatrix cj = counterpart(mj);
  CHECK(cj(0, 0) == Cx(0));
  CHECK(cj(0, 1) == Cx(1));
  CHECK(cj(1, 0) == Cx(-1));
  CHECK(cj(1, 1) == Cx(0));

  QMatrix mi(1, 1), mk(1, 1);
  mi(0, 0) = Quaternion::unit_i();
  mk(0, 0) = Quaternion::unit_k();
  CHECK(cmat_dist(counterpart(mi) * counterpart(mj), counterpart(mk)) < 1e-15);
}

TEST_CASE("counterpart is a *-ring homomorphism") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 3;
    const QMatrix m = rng.qmatrix(n, n), p = rng.qmatrix(n, n);
    CHECK(cmat_dist(counterpart(m * p), counterpart(m) * counterpart(p)) < 1e-12);
    CHECK(cmat_dist(counterpart(m + p), counterpart(m) + counterpart(p)) < 1e-14);
    CHECK(cmat_dist(counterpart(m.adjoint()), counterpart(m).adjoint()) < 1e-14);
    CHECK(qmat_dist(from_counterpart(counterpart(m)), m) < 1e-15);
  }
  CHECK(cmat_dist(counterpart(QMatrix::identity(3)), CMatrix::identity(6)) < 1e-15);
}

TEST_CASE("complex rank") {
  CMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 4;
  CHECK(rank(a) == 1);
  CHECK(rank(CMatrix::identity(4)) == 4);
  CHECK(rank(CMatrix(3, 3)) == 0);
}

TEST_CASE("quaternionic rank via counterpart") {
  // columns (1, j) and (i, j i) = (i, -k): right multiples of one column
  QMatrix m(2, 2);
  m(0, 0) = Quaternion(1.0);
  m(1, 0) = Quaternion::unit_j();
  m(0, 1) = Quaternion::unit_i();
  m(1, 1) = Quaternion::unit_j() * Quaternion::unit_i();
  CHECK(qrank(m) == 1);

  CHECK(qrank(QMatrix::identity(3)) == 3);

  // weighted Krylov of diag(1,2) with weights (1, j) has full rank
  const QMatrix k = weighted_krylov({1.0, 2.0}, {Quaternion(1.0), Quaternion::unit_j()});
  CHECK(qrank(k) == 2);

  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const QMatrix r = rng.qmatrix(3, 3);
    CHECK(qrank(r) == rank(counterpart(r)) / 2);
  }
}

TEST_CASE("lu determinant and solve") {
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    const CMatrix a = rng.cmatrix(4, 4), b = rng.cmatrix(4, 2);
    const CMatrix x = solve(a, b);
    CHECK(cmat_dist(a * x, b) < 1e-11);
    CHECK(cmat_dist(a * inverse(a), CMatrix::identity(4)) < 1e-11);
  }
  const CMatrix a2 = rng.cmatrix(2, 2);
  CHECK(std::abs(det(a2) - det2(a2)) < 1e-13);
  // singular input is refused
  CMatrix s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 1;
  s(1, 0) = 1;
  s(1, 1) = 1;
  CHECK_THROWS_AS((void)solve(s, CMatrix::identity(2)), Error);
}

TEST_CASE("hermitian_eig frozen small cases") {
  // [[0,1],[1,0]]: characteristic polynomial l^2 - 1
  CMatrix a(2, 2);
  a(0, 1) = 1;
  a(1, 0) = 1;
  const EigResult e = hermitian_eig(a);
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

  // [[2,i],[-i,2]]: characteristic polynomial (2-l)^2 - 1 -> {1, 3}
  CMatrix b(2, 2);
  b(0, 0) = 2;
  b(1, 1) = 2;
  b(0, 1) = Cx(0, 1);
  b(1, 0) = Cx(0, -1);
  const EigResult eb = hermitian_eig(b);
  CHECK(eb.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eb.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));

  // refuse non-Hermitian input
  CMatrix c(2, 2);
  c(0, 1) = 1;
  CHECK_THROWS_AS((void)hermitian_eig(c), Error);
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
  Rng rng(16);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 4;  // up to 5x5
    const CMatrix a = rng.hermitian(n);
    const EigResult e = hermitian_eig(a);
    CMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.eigenvalues[i];
    CHECK(cmat_dist(e.vectors * d * e.vectors.adjoint(), a) < 1e-9);
    CHECK(cmat_dist(e.vectors.adjoint() * e.vectors, CMatrix::identity(n)) < 1e-12);
    CHECK(e.residual < 1e-10 * std::max(1.0, a.frobenius()));
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(e.eigenvalues[i] <= e.eigenvalues[i + 1]);
  }
}

TEST_CASE("quat_hermitian_eig two-level frozen case") {
  // [[2, -k],[k, 2]] (= a I + off-diagonal j*i block with a=2): eigenvalues 1 and 3
  QMatrix g(2, 2);
  g(0, 0) = Quaternion(2.0);
  g(1, 1) = Quaternion(2.0);
  g(0, 1) = -Quaternion::unit_k();
  g(1, 0) = Quaternion::unit_k();
  REQUIRE(is_qhermitian(g));
  const QEigResult e = quat_hermitian_eig(g);
  REQUIRE(e.eigenvalues.size() == 2);
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));

  // counterpart spectrum is the same list doubled
  const EigResult ce = hermitian_eig(counterpart(g));
  CHECK(ce.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(ce.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(ce.eigenvalues[2] == doctest::Approx(3.0));
  CHECK(ce.eigenvalues[3] == doctest::Approx(3.0));
}

TEST_CASE("quat_hermitian_eig reconstruction, orthonormality, doubling") {
  Rng rng(17);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 2 + t % 2;
    const QMatrix g = rng.qhermitian(n);
    const QEigResult e = quat_hermitian_eig(g);
    REQUIRE(e.eigenvalues.size() == n);

    // G V = V diag(l)
    QMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = Quaternion(e.eigenvalues[i]);
    CHECK(qmat_dist(g * e.vectors, e.vectors * d) < 1e-9);
    CHECK(qmat_dist(e.vectors.adjoint() * e.vectors, QMatrix::identity(n)) < 1e-10);
    CHECK(qmat_dist(e.vectors * d * e.vectors.adjoint(), g) < 1e-9);

    // doubling against the counterpart spectrum
    const EigResult ce = hermitian_eig(counterpart(g));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(e.eigenvalues[i] == doctest::Approx(ce.eigenvalues[2 * i]).epsilon(1e-9));
      CHECK(e.eigenvalues[i] == doctest::Approx(ce.eigenvalues[2 * i + 1]).epsilon(1e-9));
    }
  }
}

TEST_CASE("weighted Krylov counterpart determinant: frozen instance") {
  // nodes (0,1,3), weights (1, j, 1+k): prod |mu|^2 = 2, V = 1*3*2 = 6 -> det 72
  const QVec mu{Quaternion(1.0), Quaternion::unit_j(), Quaternion(1, 0, 0, 1)};
  const CounterpartDet r = vandermonde_counterpart_det({0.0, 1.0, 3.0}, mu);
  CHECK(r.closed_form == doctest::Approx(72.0));
  CHECK(r.brute_force == doctest::Approx(72.0).epsilon(1e-10));
  CHECK(r.imag_leak < 1e-10);
  CHECK(r.relative_gap < 1e-10);
}

TEST_CASE("weighted Krylov counterpart determinant: random instances") {
  Rng rng(18);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 3;
    std::vector<double> lambda(n);
    for (auto& l : lambda) l = rng.uniform(-2.0, 2.0);
    // keep nodes separated so the closed form is well scaled
    std::sort(lambda.begin(), lambda.end());
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (lambda[i + 1] - lambda[i] < 0.05) ok = false;
    if (!ok) continue;
    QVec mu(n);
    for (auto& q : mu) q = rng.qnormal();
    const CounterpartDet r = vandermonde_counterpart_det(lambda, mu);
    CHECK(r.relative_gap < 1e-8);
    CHECK(r.closed_form >= 0.0);
  }
  // degenerate nodes force determinant zero through the Vandermonde factor
  const CounterpartDet z =
      vandermonde_counterpart_det({1.0, 1.0}, {Quaternion(1.0), Quaternion::unit_i()});
  CHECK(z.closed_form == 0.0);
  CHECK(std::abs(z.brute_force) < 1e-12);
}

TEST_CASE("qsolve and qinverse through the counterpart") {
  Rng rng(19);
  for (int t = 0; t < 10; ++t) {
    const QMatrix a = rng.qmatrix(3, 3);
    const QMatrix ai = qinverse(a);
    CHECK(qmat_dist(a * ai, QMatrix::identity(3)) < 1e-10);
    CHECK(qmat_dist(ai * a, QMatrix::identity(3)) < 1e-10);
  }
}
