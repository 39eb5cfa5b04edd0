#include "biham/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "biham/errors.hpp"

namespace biham {

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One unitary plane rotation zeroing a(p,q). For the Hermitian 2x2 block
// [[alpha, g],[conj(g), beta]] with g = |g| u, the rotation
//   J = [[c, -s u],[s conj(u), c]]
// with tan(2*phi) = 2|g| / (alpha - beta) annihilates the off-diagonal entry.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const Cx apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Cx u = apq / g;
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();
  const double tau = (alpha - beta) / (2.0 * g);
  const double sign = (tau >= 0.0) ? 1.0 : -1.0;
  const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t n = a.rows();
  // A <- J' A J ; only rows/cols p and q change
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const Cx akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp + s * std::conj(u) * akq;
    a(k, q) = -s * u * akp + c * akq;
    a(p, k) = std::conj(a(k, p));
    a(q, k) = std::conj(a(k, q));
  }
  const double app = alpha * c * c + beta * s * s + 2.0 * c * s * g;
  const double aqq = alpha * s * s + beta * c * c - 2.0 * c * s * g;
  a(p, p) = app;
  a(q, q) = aqq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Cx vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp + s * std::conj(u) * vkq;
    v(k, q) = -s * u * vkp + c * vkq;
  }
}

}  // namespace

EigResult hermitian_eig(const CMatrix& a_in, const Tolerances& tol) {
  const std::size_t n = a_in.rows();
  if (a_in.cols() != n) fail(ErrorKind::invalid_argument, "hermitian_eig: square matrix required");
  if (!is_hermitian(a_in, tol.hermitian_check_rel))
    fail(ErrorKind::invalid_argument, "hermitian_eig: matrix is not Hermitian within tolerance");

  // enforce exact Hermitian symmetry before iterating
  CMatrix a = (a_in + a_in.adjoint()) * Cx(0.5);
  CMatrix v = CMatrix::identity(n);
  const double norm_a = a.frobenius();
  const double target = tol.jacobi_off_rel * std::max(norm_a, 1e-300);

  const int max_sweeps = 60;
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > max_sweeps) fail(ErrorKind::numeric, "hermitian_eig: Jacobi sweeps did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigResult out;
  out.eigenvalues.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }

  CMatrix h = (a_in + a_in.adjoint()) * Cx(0.5);
  double res = 0;
  for (std::size_t j = 0; j < n; ++j) {
    CVec vj(n);
    for (std::size_t i = 0; i < n; ++i) vj[i] = out.vectors(i, j);
    CVec av = h * vj;
    for (std::size_t i = 0; i < n; ++i) av[i] -= out.eigenvalues[j] * vj[i];
    res = std::max(res, vec_norm(av));
  }
  out.residual = res;
  if (res > tol.eig_residual_rel * std::max(norm_a, 1.0))
    fail(ErrorKind::numeric, "hermitian_eig: residual gate failed");
  return out;
}

std::vector<std::size_t> cluster_degeneracies(const std::vector<double>& eigs, double gap_rel) {
  std::vector<std::size_t> out;
  if (eigs.empty()) return out;
  double radius = 0;
  for (double e : eigs) radius = std::max(radius, std::abs(e));
  const double gap = gap_rel * std::max(radius, 1e-300);
  out.push_back(1);
  for (std::size_t i = 1; i < eigs.size(); ++i) {
    if (eigs[i] - eigs[i - 1] > gap)
      out.push_back(1);
    else
      ++out.back();
  }
  return out;
}

std::vector<double> cluster_values(const std::vector<double>& eigs, double gap_rel) {
  std::vector<double> out;
  const auto degs = cluster_degeneracies(eigs, gap_rel);
  std::size_t idx = 0;
  for (std::size_t d : degs) {
    double s = 0;
    for (std::size_t k = 0; k < d; ++k) s += eigs[idx + k];
    out.push_back(s / static_cast<double>(d));
    idx += d;
  }
  return out;
}

QEigResult quat_hermitian_eig(const QMatrix& g, const Tolerances& tol) {
  const std::size_t n = g.rows();
  if (g.cols() != n) fail(ErrorKind::invalid_argument, "quat_hermitian_eig: square matrix required");
  if (!is_qhermitian(g, tol.hermitian_check_rel))
    fail(ErrorKind::invalid_argument, "quat_hermitian_eig: matrix is not Hermitian within tolerance");

  const CMatrix chi = counterpart(g);
  const EigResult ce = hermitian_eig(chi, tol);

  // counterpart eigenvalues appear with doubled multiplicity; walk the
  // clusters, pull one quaternionic vector back per doubled pair
  const auto degs = cluster_degeneracies(ce.eigenvalues, tol.cluster_gap_rel);
  QEigResult out;
  out.vectors = QMatrix(n, n);
  std::size_t col = 0, idx = 0;
  for (std::size_t d : degs) {
    if (d % 2 != 0)
      fail(ErrorKind::numeric, "quat_hermitian_eig: counterpart multiplicities failed to pair up");
    const std::size_t qmult = d / 2;
    // candidates: complex eigenvector (alpha, beta) -> quaternionic alpha - conj(beta) j
    std::vector<QVec> kept;
    for (std::size_t k = 0; k < d && kept.size() < qmult; ++k) {
      QVec cand(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Cx alpha = ce.vectors(i, idx + k);
        const Cx beta = ce.vectors(i + n, idx + k);
        cand[i] = Quaternion::from_split(alpha, -std::conj(beta));
      }
      // right-module Gram-Schmidt against already kept vectors
      for (const auto& u : kept) {
        const Quaternion proj = qdot(u, cand);
        for (std::size_t i = 0; i < n; ++i) cand[i] -= u[i] * proj;
      }
      const double nn = qvec_norm(cand);
      if (nn < 1e-8) continue;  // quaternionically parallel to a kept vector
      for (auto& q : cand) q = q * (1.0 / nn);
      kept.push_back(std::move(cand));
    }
    if (kept.size() != qmult)
      fail(ErrorKind::numeric, "quat_hermitian_eig: eigenvector reassembly came up short");
    double val = 0;
    for (std::size_t k = 0; k < d; ++k) val += ce.eigenvalues[idx + k];
    val /= static_cast<double>(d);
    for (const auto& vct : kept) {
      out.eigenvalues.push_back(val);
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, col) = vct[i];
      ++col;
    }
    idx += d;
  }

  double res = 0;
  const double norm_g = g.frobenius();
  for (std::size_t j = 0; j < n; ++j) {
    QVec vj(n);
    for (std::size_t i = 0; i < n; ++i) vj[i] = out.vectors(i, j);
    QVec gv = g * vj;
    for (std::size_t i = 0; i < n; ++i) gv[i] -= vj[i] * out.eigenvalues[j];
    res = std::max(res, qvec_norm(gv));
  }
  out.residual = res;
  if (res > tol.eig_residual_rel * std::max(norm_g, 1.0) * 10)
    fail(ErrorKind::numeric, "quat_hermitian_eig: residual gate failed");
  return out;
}

}  // namespace biham
