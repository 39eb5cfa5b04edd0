#include "biham/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "biham/errors.hpp"

namespace biham {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) fail(ErrorKind::invalid_argument, msg);
}

}  // namespace

// ---------------------------------------------------------------- CMatrix

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m(r_, c_);
  for (std::size_t i = 0; i < r_ * c_; ++i) m.a_[i] = std::conj(a_[i]);
  return m;
}

double CMatrix::frobenius() const {
  double s = 0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double s = 0;
  for (const auto& v : a_) s = std::max(s, std::abs(v));
  return s;
}

Cx CMatrix::trace() const {
  Cx s = 0;
  for (std::size_t i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
  return s;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch in +");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch in -");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(const Cx& s) {
  for (auto& v : a_) v *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, const Cx& s) { return a *= s; }
CMatrix operator*(const Cx& s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require(a.cols() == b.rows(), "matrix shape mismatch in *");
  CMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Cx aik = a(i, k);
      if (aik == Cx(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

CVec operator*(const CMatrix& a, const CVec& v) {
  require(a.cols() == v.size(), "matrix/vector shape mismatch");
  CVec out(a.rows(), Cx(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

Cx cdot(const CVec& u, const CVec& v) {
  require(u.size() == v.size(), "vector length mismatch");
  Cx s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double vec_norm(const CVec& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

namespace {

// LU with partial pivoting, in place; returns pivot permutation sign and the
// row permutation. Singularity is reported via a zero pivot flag.
struct Lu {
  CMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
  double max_pivot = 0, min_pivot = 0;
};

Lu lu_decompose(CMatrix a) {
  const std::size_t n = a.rows();
  require(a.cols() == n, "square matrix required");
  Lu out;
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) best = std::abs(a(i, k)), piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(out.perm[k], out.perm[piv]);
      out.sign = -out.sign;
    }
    const double p = std::abs(a(k, k));
    out.max_pivot = std::max(out.max_pivot, p);
    out.min_pivot = (k == 0) ? p : std::min(out.min_pivot, p);
    if (p == 0.0) {
      out.singular = true;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Cx f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  out.lu = std::move(a);
  return out;
}

}  // namespace

Cx det(const CMatrix& a) {
  Lu f = lu_decompose(a);
  Cx d = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
  return d;
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
  require(a.rows() == b.rows(), "solve: shape mismatch");
  Lu f = lu_decompose(a);
  const std::size_t n = a.rows();
  if (f.singular || f.min_pivot < 1e-14 * std::max(1.0, f.max_pivot))
    fail(ErrorKind::numeric, "solve: matrix is singular to working precision");
  CMatrix x(n, b.cols());
  for (std::size_t col = 0; col < b.cols(); ++col) {
    CVec y(n);
    for (std::size_t i = 0; i < n; ++i) {
      Cx s = b(f.perm[i], col);
      for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Cx s = y[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x(j, col);
      x(ii, col) = s / f.lu(ii, ii);
    }
  }
  return x;
}

CMatrix inverse(const CMatrix& a) { return solve(a, CMatrix::identity(a.rows())); }

std::size_t rank(const CMatrix& a, double pivot_rel) {
  CMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rk = 0;
  double max_pivot = 0;
  std::vector<double> pivots;
  for (std::size_t col = 0; col < cols && rk < rows; ++col) {
    std::size_t piv = rk;
    double best = std::abs(m(rk, col));
    for (std::size_t i = rk + 1; i < rows; ++i)
      if (std::abs(m(i, col)) > best) best = std::abs(m(i, col)), piv = i;
    if (best == 0.0) continue;
    max_pivot = std::max(max_pivot, best);
    if (best < pivot_rel * max_pivot) continue;
    if (piv != rk)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(rk, j), m(piv, j));
    for (std::size_t i = rk + 1; i < rows; ++i) {
      const Cx f = m(i, col) / m(rk, col);
      for (std::size_t j = col; j < cols; ++j) m(i, j) -= f * m(rk, j);
    }
    pivots.push_back(best);
    ++rk;
  }
  // re-count against the final largest pivot (early small pivots may only
  // look significant before a later large one shows up)
  std::size_t out = 0;
  for (double p : pivots)
    if (p >= pivot_rel * max_pivot) ++out;
  return out;
}

bool is_hermitian(const CMatrix& a, double rel) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).max_abs() <= rel * std::max(1.0, a.max_abs());
}

// ---------------------------------------------------------------- QMatrix

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
  return m;
}

QMatrix QMatrix::embed(const CMatrix& c) {
  QMatrix m(c.rows(), c.cols());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) m(i, j) = Quaternion(c(i, j));
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix m(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j).conj();
  return m;
}

double QMatrix::frobenius() const {
  double s = 0;
  for (const auto& v : a_) s += v.norm2();
  return std::sqrt(s);
}

double QMatrix::max_abs() const {
  double s = 0;
  for (const auto& v : a_) s = std::max(s, v.norm());
  return s;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch in +");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch in -");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  require(a.cols() == b.rows(), "matrix shape mismatch in *");
  QMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += a(i, k) * b(k, j);
  return m;
}

QMatrix operator*(QMatrix a, const Quaternion& s) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) * s;
  return a;
}

QVec operator*(const QMatrix& a, const QVec& v) {
  require(a.cols() == v.size(), "matrix/vector shape mismatch");
  QVec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

CMatrix counterpart(const QMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  CMatrix out(2 * r, 2 * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const auto [c1, c2] = m(i, j).split();
      out(i, j) = c1;
      out(i, j + c) = c2;
      out(i + r, j) = -std::conj(c2);
      out(i + r, j + c) = std::conj(c1);
    }
  return out;
}

QMatrix from_counterpart(const CMatrix& cm) {
  require(cm.rows() % 2 == 0 && cm.cols() % 2 == 0, "counterpart matrix must have even dimensions");
  const std::size_t r = cm.rows() / 2, c = cm.cols() / 2;
  QMatrix out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      out(i, j) = Quaternion::from_split(cm(i, j), cm(i, j + c));
  return out;
}

std::size_t qrank(const QMatrix& m, double pivot_rel) {
  // rank over the quaternions is half the complex rank of the counterpart
  return rank(counterpart(m), pivot_rel) / 2;
}

QMatrix qsolve(const QMatrix& a, const QMatrix& b) {
  return from_counterpart(solve(counterpart(a), counterpart(b)));
}

QMatrix qinverse(const QMatrix& a) { return qsolve(a, QMatrix::identity(a.rows())); }

bool is_qhermitian(const QMatrix& a, double rel) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).max_abs() <= rel * std::max(1.0, a.max_abs());
}

Quaternion qdot(const QVec& u, const QVec& v) {
  require(u.size() == v.size(), "vector length mismatch");
  Quaternion s;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i].conj() * v[i];
  return s;
}

double qvec_norm(const QVec& v) {
  double s = 0;
  for (const auto& q : v) s += q.norm2();
  return std::sqrt(s);
}

// ---------------------------------------------------------------- RMatrix

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix m(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

double RMatrix::frobenius() const {
  double s = 0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double RMatrix::max_abs() const {
  double s = 0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

RMatrix& RMatrix::operator+=(const RMatrix& o) {
  require(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch in +");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

RMatrix& RMatrix::operator-=(const RMatrix& o) {
  require(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch in -");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

RMatrix& RMatrix::operator*=(double s) {
  for (auto& v : a_) v *= s;
  return *this;
}

RMatrix operator+(RMatrix a, const RMatrix& b) { return a += b; }
RMatrix operator-(RMatrix a, const RMatrix& b) { return a -= b; }
RMatrix operator*(RMatrix a, double s) { return a *= s; }
RMatrix operator*(double s, RMatrix a) { return a *= s; }

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  require(a.cols() == b.rows(), "matrix shape mismatch in *");
  RMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

RVec operator*(const RMatrix& a, const RVec& v) {
  require(a.cols() == v.size(), "matrix/vector shape mismatch");
  RVec out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

RMatrix rsolve(const RMatrix& a, const RMatrix& b) {
  require(a.rows() == a.cols() && a.rows() == b.rows(), "rsolve: shape mismatch");
  const std::size_t n = a.rows();
  RMatrix m = a, x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (std::abs(m(piv, k)) < 1e-300) fail(ErrorKind::numeric, "rsolve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      double s = x(ii, j);
      for (std::size_t k2 = ii + 1; k2 < n; ++k2) s -= m(ii, k2) * x(k2, j);
      x(ii, j) = s / m(ii, ii);
    }
  }
  return x;
}

RVec rsolve(const RMatrix& a, const RVec& b) {
  RMatrix bm(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) bm(i, 0) = b[i];
  RMatrix xm = rsolve(a, bm);
  RVec x(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) x[i] = xm(i, 0);
  return x;
}

RMatrix rinverse(const RMatrix& a) { return rsolve(a, RMatrix::identity(a.rows())); }

std::vector<RVec> nullspace(RMatrix a, double pivot_rel) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t rk = 0;
  double max_pivot = 0;
  for (std::size_t col = 0; col < cols && rk < rows; ++col) {
    std::size_t piv = rk;
    double best = std::abs(a(rk, col));
    for (std::size_t i = rk + 1; i < rows; ++i)
      if (std::abs(a(i, col)) > best) best = std::abs(a(i, col)), piv = i;
    max_pivot = std::max(max_pivot, best);
    if (best == 0.0 || best < pivot_rel * max_pivot) continue;
    if (piv != rk)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(rk, j), a(piv, j));
    const double d = a(rk, col);
    for (std::size_t j = col; j < cols; ++j) a(rk, j) /= d;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rk) continue;
      const double f = a(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < cols; ++j) a(i, j) -= f * a(rk, j);
    }
    pivot_col.push_back(col);
    ++rk;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<RVec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RVec v(cols, 0.0);
    v[free] = 1.0;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return orthonormalize(std::move(basis));
}

std::vector<RVec> orthonormalize(std::vector<RVec> vs, double drop_tol) {
  std::vector<RVec> out;
  for (auto& v : vs) {
    for (const auto& u : out) {
      double proj = 0;
      for (std::size_t i = 0; i < v.size(); ++i) proj += u[i] * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * u[i];
    }
    double n2 = 0;
    for (double x : v) n2 += x * x;
    const double n = std::sqrt(n2);
    if (n <= drop_tol) continue;
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
  }
  return out;
}

double span_defect(const std::vector<RVec>& a, const std::vector<RVec>& b) {
  double worst = 0;
  for (const auto& v : a) {
    RVec res = v;
    for (const auto& u : b) {
      double proj = 0;
      for (std::size_t i = 0; i < v.size(); ++i) proj += u[i] * res[i];
      for (std::size_t i = 0; i < v.size(); ++i) res[i] -= proj * u[i];
    }
    double n2 = 0;
    for (double x : res) n2 += x * x;
    worst = std::max(worst, std::sqrt(n2));
  }
  return worst;
}

}  // namespace biham
