#include "biham/deform.hpp"

#include <cmath>

#include "biham/eig.hpp"
#include "biham/errors.hpp"
#include "biham/realify.hpp"
#include "biham/rng.hpp"

namespace biham {

namespace {

void require_square(std::size_t rows, std::size_t cols) {
  if (rows != cols) fail(ErrorKind::invalid_argument, "pivot matrix must be square");
}

// condition number sqrt(max/min eigenvalue) of K'K, with a singularity gate
double gated_condition(const CMatrix& ktk, double cond_limit) {
  const EigResult e = hermitian_eig(ktk);
  const double lmax = e.eigenvalues.back(), lmin = e.eigenvalues.front();
  if (lmin <= 0 || std::sqrt(lmax / lmin) > cond_limit)
    fail(ErrorKind::numeric, "pivot matrix is singular or too ill-conditioned");
  return std::sqrt(lmax / lmin);
}

}  // namespace

DeformedAlgebraC make_deformed_c(CMatrix k, const Tolerances& tol) {
  require_square(k.rows(), k.cols());
  const double cond = gated_condition(k.adjoint() * k, tol.cond_limit);
  CMatrix inv = inverse(k);
  return {std::move(k), std::move(inv), cond};
}

DeformedAlgebraQ make_deformed_q(QMatrix k, const Tolerances& tol) {
  require_square(k.rows(), k.cols());
  const CMatrix kc = counterpart(k);
  const double cond = gated_condition(kc.adjoint() * kc, tol.cond_limit);
  QMatrix inv = qinverse(k);
  return {std::move(k), std::move(inv), cond};
}

namespace {

template <class Mat, class Alg>
Mat product_impl(const Mat& a, const Mat& b, const Alg& alg) {
  if (a.cols() != alg.k.rows() || alg.k.cols() != b.rows())
    fail(ErrorKind::invalid_argument, "dimension mismatch in deformed product");
  return a * alg.k * b;
}

}  // namespace

CMatrix deformed_product(const CMatrix& a, const CMatrix& b, const DeformedAlgebraC& alg) {
  return product_impl(a, b, alg);
}
QMatrix deformed_product(const QMatrix& a, const QMatrix& b, const DeformedAlgebraQ& alg) {
  return product_impl(a, b, alg);
}

CMatrix deformed_identity(const DeformedAlgebraC& alg) { return alg.k_inv; }
QMatrix deformed_identity(const DeformedAlgebraQ& alg) { return alg.k_inv; }

CMatrix iso_phi(const CMatrix& a, const DeformedAlgebraC& alg) {
  if (a.rows() != alg.k.rows()) fail(ErrorKind::invalid_argument, "dimension mismatch in iso_phi");
  return alg.k_inv * a;
}
QMatrix iso_phi(const QMatrix& a, const DeformedAlgebraQ& alg) {
  if (a.rows() != alg.k.rows()) fail(ErrorKind::invalid_argument, "dimension mismatch in iso_phi");
  return alg.k_inv * a;
}

CMatrix deformed_bracket(const CMatrix& a, const CMatrix& b, const DeformedAlgebraC& alg) {
  return product_impl(a, b, alg) - product_impl(b, a, alg);
}
QMatrix deformed_bracket(const QMatrix& a, const QMatrix& b, const DeformedAlgebraQ& alg) {
  return product_impl(a, b, alg) - product_impl(b, a, alg);
}

AdjointPairC make_adjoint_pair_c(CMatrix g, const Tolerances& tol) {
  require_square(g.rows(), g.cols());
  if (!is_hermitian(g, tol.hermitian_check_rel))
    fail(ErrorKind::invalid_argument, "adjoint pair needs a Hermitian metric");
  const EigResult e = hermitian_eig(g, tol);
  if (e.eigenvalues.front() <= 0)
    fail(ErrorKind::invalid_argument, "adjoint pair needs a positive metric");
  CMatrix inv = inverse(g);
  return {std::move(g), std::move(inv)};
}

AdjointPairQ make_adjoint_pair_q(QMatrix g, const Tolerances& tol) {
  require_square(g.rows(), g.cols());
  if (!is_qhermitian(g, tol.hermitian_check_rel))
    fail(ErrorKind::invalid_argument, "adjoint pair needs a Hermitian metric");
  const QEigResult e = quat_hermitian_eig(g, tol);
  if (e.eigenvalues.front() <= 0)
    fail(ErrorKind::invalid_argument, "adjoint pair needs a positive metric");
  QMatrix inv = qinverse(g);
  return {std::move(g), std::move(inv)};
}

CMatrix second_adjoint(const CMatrix& a, const AdjointPairC& pair) {
  if (a.rows() != pair.g.rows() || a.cols() != pair.g.cols())
    fail(ErrorKind::invalid_argument, "dimension mismatch in second_adjoint");
  return pair.g_inv * a.adjoint() * pair.g;
}
QMatrix second_adjoint(const QMatrix& a, const AdjointPairQ& pair) {
  if (a.rows() != pair.g.rows() || a.cols() != pair.g.cols())
    fail(ErrorKind::invalid_argument, "dimension mismatch in second_adjoint");
  return pair.g_inv * a.adjoint() * pair.g;
}

SubalgebraResult subalgebra_s(const CMatrix& k, bool use_deformed, const Tolerances& tol) {
  require_square(k.rows(), k.cols());
  const std::size_t n = k.rows();
  CMatMap map;
  if (use_deformed) {
    // [X,K]_K = X K K - K X K
    const CMatrix kk = k * k;
    map = [&k, kk](const CMatrix& x) { return x * kk - k * x * k; };
  } else {
    map = [&k](const CMatrix& x) { return x * k - k * x; };
  }
  SubalgebraResult out;
  out.basis_c = joint_nullspace(n, {map}, tol);
  out.real_dim = static_cast<int>(out.basis_c.size());
  return out;
}

SubalgebraResult subalgebra_s(const QMatrix& k, bool use_deformed, const Tolerances& tol) {
  require_square(k.rows(), k.cols());
  const std::size_t n = k.rows();
  QMatMap map;
  if (use_deformed) {
    const QMatrix kk = k * k;
    map = [&k, kk](const QMatrix& x) { return x * kk - k * x * k; };
  } else {
    map = [&k](const QMatrix& x) { return x * k - k * x; };
  }
  SubalgebraResult out;
  out.basis_q = joint_nullspace_q(n, {map}, tol);
  out.real_dim = static_cast<int>(out.basis_q.size());
  return out;
}

namespace {

// The deformed product is A K B whether or not K is invertible, so the
// Leibniz test takes K directly instead of going through the gated algebra.
template <class Mat, class Draw>
DerivationCheck derivation_impl(const Mat& h, const Mat& k, int trials, Draw draw) {
  const Mat hk = h * k - k * h;
  DerivationCheck out;
  out.hk_commutator = hk.max_abs();
  for (int t = 0; t < trials; ++t) {
    const Mat a = draw(), b = draw();
    const Mat ab = a * k * b;
    const Mat defect =
        (h * ab - ab * h) - (h * a - a * h) * k * b - a * k * (h * b - b * h);
    out.max_defect = std::max(out.max_defect, defect.max_abs());
    out.oracle_gap = std::max(out.oracle_gap, (defect - a * hk * b).max_abs());
  }
  // threshold chosen so commuting pairs pass with rounding noise to spare
  out.is_derivation = out.max_defect < 1e-10;
  return out;
}

}  // namespace

DerivationCheck derivation_check(const CMatrix& h, const CMatrix& k, int trials,
                                 std::uint64_t seed, const Tolerances&) {
  if (h.rows() != k.rows() || h.cols() != k.cols() || h.rows() != h.cols())
    fail(ErrorKind::invalid_argument, "dimension mismatch in derivation_check");
  Rng rng(seed);
  const std::size_t n = k.rows();
  return derivation_impl(h, k, trials, [&] { return rng.cmatrix(n, n); });
}

DerivationCheck derivation_check(const QMatrix& h, const QMatrix& k, int trials,
                                 std::uint64_t seed, const Tolerances&) {
  if (h.rows() != k.rows() || h.cols() != k.cols() || h.rows() != h.cols())
    fail(ErrorKind::invalid_argument, "dimension mismatch in derivation_check");
  Rng rng(seed);
  const std::size_t n = k.rows();
  return derivation_impl(h, k, trials, [&] { return rng.qmatrix(n, n); });
}

}  // namespace biham
