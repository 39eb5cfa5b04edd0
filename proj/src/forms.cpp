#include "biham/forms.hpp"

#include <cmath>
#include <sstream>

#include "biham/errors.hpp"
#include "biham/realify.hpp"

namespace biham {

namespace {

// H^{+-1/2} from a positive-definite eigendecomposition; also validates
// positivity.
CMatrix c_power_half(const EigResult& e, double expo, const char* who) {
  const std::size_t n = e.eigenvalues.size();
  CMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (e.eigenvalues[i] <= 0)
      fail(ErrorKind::invalid_argument, std::string(who) + ": form is not positive definite");
    d(i, i) = std::pow(e.eigenvalues[i], expo);
  }
  return e.vectors * d * e.vectors.adjoint();
}

QMatrix q_power_half(const QEigResult& e, double expo, const char* who) {
  const std::size_t n = e.eigenvalues.size();
  QMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (e.eigenvalues[i] <= 0)
      fail(ErrorKind::invalid_argument, std::string(who) + ": form is not positive definite");
    d(i, i) = Quaternion(std::pow(e.eigenvalues[i], expo));
  }
  return e.vectors * d * e.vectors.adjoint();
}

}  // namespace

ConnectingOperator connecting_operator(const HermitianForm& h1, const HermitianForm& h2,
                                       const Tolerances& tol) {
  if (h1.field != h2.field) fail(ErrorKind::invalid_argument, "forms live over different scalar fields");
  if (h1.dim() != h2.dim()) fail(ErrorKind::invalid_argument, "forms have different dimensions");

  ConnectingOperator g;
  g.field = h1.field;
  if (h1.field == Field::complex_field) {
    if (!is_hermitian(h1.hc, tol.hermitian_check_rel) || !is_hermitian(h2.hc, tol.hermitian_check_rel))
      fail(ErrorKind::invalid_argument, "forms must be Hermitian");
    const EigResult e1 = hermitian_eig(h1.hc, tol);
    const CMatrix r1i = c_power_half(e1, -0.5, "h1");  // also checks positivity of h1
    const EigResult e2 = hermitian_eig(h2.hc, tol);
    for (double v : e2.eigenvalues)
      if (v <= 0) fail(ErrorKind::invalid_argument, "h2: form is not positive definite");
    g.gc = solve(h1.hc, h2.hc);
    // G is Hermitian under h1; diagonalize the similar Hermitian pencil matrix
    const CMatrix m = r1i * h2.hc * r1i;
    const EigResult em = hermitian_eig(m, tol);
    g.spectrum = em.eigenvalues;
    g.eigvecs_c = r1i * em.vectors;  // h1-orthonormal eigenvectors of G
  } else {
    if (!is_qhermitian(h1.hq, tol.hermitian_check_rel) || !is_qhermitian(h2.hq, tol.hermitian_check_rel))
      fail(ErrorKind::invalid_argument, "forms must be Hermitian");
    const QEigResult e1 = quat_hermitian_eig(h1.hq, tol);
    const QMatrix r1i = q_power_half(e1, -0.5, "h1");
    const QEigResult e2 = quat_hermitian_eig(h2.hq, tol);
    for (double v : e2.eigenvalues)
      if (v <= 0) fail(ErrorKind::invalid_argument, "h2: form is not positive definite");
    g.gq = qsolve(h1.hq, h2.hq);
    const QMatrix m = r1i * h2.hq * r1i;
    const QEigResult em = quat_hermitian_eig(m, tol);
    g.spectrum = em.eigenvalues;
    g.eigvecs_q = r1i * em.vectors;
  }
  g.degeneracies = cluster_degeneracies(g.spectrum, tol.cluster_gap_rel);
  g.cluster_means = cluster_values(g.spectrum, tol.cluster_gap_rel);
  return g;
}

std::string biunitary_label(const std::vector<std::size_t>& degeneracies, Field field) {
  std::ostringstream os;
  for (std::size_t i = 0; i < degeneracies.size(); ++i) {
    if (i) os << "x";
    os << "U(" << degeneracies[i];
    if (field == Field::quaternionic) os << ",Q";
    os << ")";
  }
  return os.str();
}

CVec cyclic_vector_c(const ConnectingOperator& g, const Tolerances&) {
  if (g.field != Field::complex_field) fail(ErrorKind::invalid_argument, "complex operator expected");
  if (!g.distinct_spectrum())
    fail(ErrorKind::domain, "no cyclic vector exists: spectrum is degenerate");
  const std::size_t n = g.dim();
  CVec x(n, Cx(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) x[i] += g.eigvecs_c(i, j);
  return x;
}

QVec cyclic_vector_q(const ConnectingOperator& g, const Tolerances&) {
  if (g.field != Field::quaternionic) fail(ErrorKind::invalid_argument, "quaternionic operator expected");
  if (!g.distinct_spectrum())
    fail(ErrorKind::domain, "no cyclic vector exists: spectrum is degenerate");
  const std::size_t n = g.dim();
  QVec x(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) x[i] += g.eigvecs_q(i, j);
  return x;
}

namespace {

// Krylov columns x0, Gx0, ..., G^{n-1}x0, column-normalized (normalization
// does not change the rank but tames the conditioning of high powers).
CMatrix krylov_c(const CMatrix& g, const CVec& x0) {
  const std::size_t n = g.rows();
  CMatrix k(n, n);
  CVec v = x0;
  for (std::size_t m = 0; m < n; ++m) {
    const double nv = vec_norm(v);
    const double scale = (nv > 0) ? 1.0 / nv : 1.0;
    for (std::size_t i = 0; i < n; ++i) k(i, m) = v[i] * scale;
    v = g * v;
  }
  return k;
}

QMatrix krylov_q(const QMatrix& g, const QVec& x0) {
  const std::size_t n = g.rows();
  QMatrix k(n, n);
  QVec v = x0;
  for (std::size_t m = 0; m < n; ++m) {
    const double nv = qvec_norm(v);
    const double scale = (nv > 0) ? 1.0 / nv : 1.0;
    for (std::size_t i = 0; i < n; ++i) k(i, m) = v[i] * scale;
    v = g * v;
  }
  return k;
}

}  // namespace

CyclicResult is_cyclic(const ConnectingOperator& g, const CVec* x0_c, const QVec* x0_q,
                       const Tolerances& tol) {
  CyclicResult out;
  const std::size_t n = g.dim();
  if (g.field == Field::complex_field) {
    CVec x;
    if (x0_c != nullptr) {
      if (x0_c->size() != n) fail(ErrorKind::invalid_argument, "witness has wrong dimension");
      x = *x0_c;
    } else {
      if (!g.distinct_spectrum()) return out;  // provably no witness
      x = cyclic_vector_c(g, tol);
    }
    out.cyclic = rank(krylov_c(g.gc, x), tol.rank_pivot_rel) == n;
    if (out.cyclic || x0_c != nullptr) {
      out.witness_available = true;
      out.witness_c = std::move(x);
    }
  } else {
    QVec x;
    if (x0_q != nullptr) {
      if (x0_q->size() != n) fail(ErrorKind::invalid_argument, "witness has wrong dimension");
      x = *x0_q;
    } else {
      if (!g.distinct_spectrum()) return out;
      x = cyclic_vector_q(g, tol);
    }
    out.cyclic = qrank(krylov_q(g.gq, x), tol.rank_pivot_rel) == n;
    if (out.cyclic || x0_q != nullptr) {
      out.witness_available = true;
      out.witness_q = std::move(x);
    }
  }
  return out;
}

CommutantResult commutant(const ConnectingOperator& g, const Tolerances& tol) {
  CommutantResult out;
  const std::size_t n = g.dim();
  if (g.field == Field::complex_field) {
    const CMatrix gm = g.gc;
    out.basis_c = joint_nullspace(n, {[&gm](const CMatrix& x) { return gm * x - x * gm; }}, tol);
    out.real_dim = static_cast<int>(out.basis_c.size());
  } else {
    const QMatrix gm = g.gq;
    out.basis_q = joint_nullspace_q(n, {[&gm](const QMatrix& x) { return gm * x - x * gm; }}, tol);
    out.real_dim = static_cast<int>(out.basis_q.size());
  }
  return out;
}

int bicommutant_dimension(const ConnectingOperator& g, const CommutantResult& comm,
                          const Tolerances& tol) {
  const std::size_t n = g.dim();
  if (g.field == Field::complex_field) {
    std::vector<CMatMap> maps;
    for (const auto& b : comm.basis_c)
      maps.push_back([b](const CMatrix& x) { return b * x - x * b; });
    return static_cast<int>(joint_nullspace(n, maps, tol).size());
  }
  std::vector<QMatMap> maps;
  for (const auto& b : comm.basis_q)
    maps.push_back([b](const QMatrix& x) { return b * x - x * b; });
  return static_cast<int>(joint_nullspace_q(n, maps, tol).size());
}

GenericityReport genericity_report(const HermitianForm& h1, const HermitianForm& h2,
                                   const Tolerances& tol) {
  const ConnectingOperator g = connecting_operator(h1, h2, tol);
  GenericityReport r;
  r.field = g.field;
  r.dim = g.dim();
  r.spectrum = g.spectrum;
  r.cluster_means = g.cluster_means;
  r.degeneracies = g.degeneracies;
  r.distinct_spectrum = g.distinct_spectrum();
  const CyclicResult cy = is_cyclic(g, nullptr, nullptr, tol);
  r.cyclic = cy.cyclic;
  r.witness_available = cy.witness_available;
  r.witness_c = cy.witness_c;
  r.witness_q = cy.witness_q;
  const CommutantResult cm = commutant(g, tol);
  r.commutant_real_dim = cm.real_dim;
  r.bicommutant_real_dim = bicommutant_dimension(g, cm, tol);
  r.def3_holds = (r.commutant_real_dim == r.bicommutant_real_dim);
  r.group_label = biunitary_label(r.degeneracies, r.field);
  if (g.field == Field::complex_field) {
    const CMatrix a = h1.hc * g.gc;
    r.selfadjoint_defect_h1 = (a - a.adjoint()).max_abs();
    const CMatrix b = h2.hc * g.gc;
    r.selfadjoint_defect_h2 = (b - b.adjoint()).max_abs();
  } else {
    const QMatrix a = h1.hq * g.gq;
    r.selfadjoint_defect_h1 = (a - a.adjoint()).max_abs();
    const QMatrix b = h2.hq * g.gq;
    r.selfadjoint_defect_h2 = (b - b.adjoint()).max_abs();
  }
  return r;
}

QMatrix weighted_krylov(const std::vector<double>& lambda, const QVec& mu) {
  const std::size_t n = lambda.size();
  if (mu.size() != n) fail(ErrorKind::invalid_argument, "weights and nodes must match in length");
  QMatrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    double p = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      m(l, c) = mu[l] * p;
      p *= lambda[l];
    }
  }
  return m;
}

CounterpartDet vandermonde_counterpart_det(const std::vector<double>& lambda, const QVec& mu) {
  const std::size_t n = lambda.size();
  if (mu.size() != n) fail(ErrorKind::invalid_argument, "weights and nodes must match in length");
  for (const auto& q : mu)
    if (q.norm() == 0.0) fail(ErrorKind::invalid_argument, "weights must be nonzero");

  CounterpartDet out;
  double prod = 1.0;
  for (const auto& q : mu) prod *= q.norm2();
  double vand = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) vand *= (lambda[j] - lambda[i]);
  out.closed_form = prod * vand * vand;

  const Cx bf = det(counterpart(weighted_krylov(lambda, mu)));
  out.brute_force = bf.real();
  out.imag_leak = std::abs(bf.imag());
  const double scale = std::max({std::abs(out.closed_form), std::abs(out.brute_force), 1e-300});
  out.relative_gap = std::abs(out.closed_form - out.brute_force) / scale;
  return out;
}

}  // namespace biham
