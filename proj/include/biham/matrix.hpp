#pragma once

#include <cstddef>
#include <vector>

#include "biham/config.hpp"
#include "biham/quaternion.hpp"

namespace biham {

using CVec = std::vector<Cx>;
using QVec = std::vector<Quaternion>;
using RVec = std::vector<double>;

/// Dense row-major complex matrix. Small and unapologetically simple; every
/// dimension in this library is tiny (n <= 64), so no blocking, no views.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Cx& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Cx& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  double frobenius() const;
  double max_abs() const;
  Cx trace() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(const Cx& s);

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Cx> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(CMatrix a, const Cx& s);
CMatrix operator*(const Cx& s, CMatrix a);
CVec operator*(const CMatrix& a, const CVec& v);

Cx det(const CMatrix& a);
CMatrix solve(const CMatrix& a, const CMatrix& b);  // a x = b, partial-pivot LU
CMatrix inverse(const CMatrix& a);
std::size_t rank(const CMatrix& a, double pivot_rel = Tolerances{}.rank_pivot_rel);
bool is_hermitian(const CMatrix& a, double rel = Tolerances{}.hermitian_check_rel);

Cx cdot(const CVec& u, const CVec& v);  // sum conj(u_i) v_i
double vec_norm(const CVec& v);

/// Dense row-major quaternionic matrix acting on a right module: (M v)_i =
/// sum_j M(i,j) v_j and M (v q) = (M v) q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  /// Entrywise embedding of a complex matrix (y = z = 0 parts).
  static QMatrix embed(const CMatrix& m);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Quaternion& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Quaternion& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  QMatrix adjoint() const;  // conjugate transpose
  double frobenius() const;
  double max_abs() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Quaternion> a_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(QMatrix a, const Quaternion& s);  // entrywise right scalar
QVec operator*(const QMatrix& a, const QVec& v);

/// Complex counterpart: for M = A + B j (entrywise split, see quaternion.hpp)
/// returns the 2n x 2m block matrix [[A, B], [-conj(B), conj(A)]].
/// This is a *-ring homomorphism: counterpart(MN) = counterpart(M) counterpart(N)
/// and counterpart(M') = counterpart(M)'.
CMatrix counterpart(const QMatrix& m);
/// Inverse of `counterpart` (reads the top blocks; callers must hand it a
/// matrix that actually has counterpart structure).
QMatrix from_counterpart(const CMatrix& c);

std::size_t qrank(const QMatrix& m, double pivot_rel = Tolerances{}.rank_pivot_rel);
QMatrix qsolve(const QMatrix& a, const QMatrix& b);  // via the counterpart
QMatrix qinverse(const QMatrix& a);
bool is_qhermitian(const QMatrix& a, double rel = Tolerances{}.hermitian_check_rel);

Quaternion qdot(const QVec& u, const QVec& v);  // sum conj(u_i) v_i, quaternion-valued
double qvec_norm(const QVec& v);

/// Dense row-major real matrix; workhorse for geometry and for realified
/// null-space computations.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static RMatrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const double& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  RMatrix transpose() const;
  double frobenius() const;
  double max_abs() const;

  RMatrix& operator+=(const RMatrix& o);
  RMatrix& operator-=(const RMatrix& o);
  RMatrix& operator*=(double s);

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<double> a_;
};

RMatrix operator+(RMatrix a, const RMatrix& b);
RMatrix operator-(RMatrix a, const RMatrix& b);
RMatrix operator*(const RMatrix& a, const RMatrix& b);
RMatrix operator*(RMatrix a, double s);
RMatrix operator*(double s, RMatrix a);
RVec operator*(const RMatrix& a, const RVec& v);

RMatrix rsolve(const RMatrix& a, const RMatrix& b);
RVec rsolve(const RMatrix& a, const RVec& b);
RMatrix rinverse(const RMatrix& a);

/// Null-space basis of a (possibly rectangular) real matrix, via row-echelon
/// reduction with partial pivoting. Pivots below pivot_rel * (largest pivot
/// seen) are treated as zero. Returned vectors are orthonormalized.
std::vector<RVec> nullspace(RMatrix a, double pivot_rel = Tolerances{}.rank_pivot_rel);

/// Orthonormalize a set of real vectors in place (modified Gram-Schmidt),
/// dropping near-zero remainders. Returns the resulting basis.
std::vector<RVec> orthonormalize(std::vector<RVec> vs, double drop_tol = 1e-12);

/// max_i || v_i - proj_span(B) v_i || over the (orthonormal) basis B: how far
/// span(A) sticks out of span(B).
double span_defect(const std::vector<RVec>& a, const std::vector<RVec>& b);

}  // namespace biham
