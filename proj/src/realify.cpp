#include "biham/realify.hpp"

namespace biham {

RVec flatten(const CMatrix& m) {
  RVec v(2 * m.rows() * m.cols());
  std::size_t k = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      v[k++] = m(i, j).real();
      v[k++] = m(i, j).imag();
    }
  return v;
}

RVec flatten(const QMatrix& m) {
  RVec v(4 * m.rows() * m.cols());
  std::size_t k = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Quaternion& q = m(i, j);
      v[k++] = q.w;
      v[k++] = q.x;
      v[k++] = q.y;
      v[k++] = q.z;
    }
  return v;
}

CMatrix unflatten_c(const RVec& v, std::size_t rows, std::size_t cols) {
  CMatrix m(rows, cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = Cx(v[k], v[k + 1]);
      k += 2;
    }
  return m;
}

QMatrix unflatten_q(const RVec& v, std::size_t rows, std::size_t cols) {
  QMatrix m(rows, cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = Quaternion(v[k], v[k + 1], v[k + 2], v[k + 3]);
      k += 4;
    }
  return m;
}

namespace {

template <typename Mat, typename Map, typename Unflatten>
std::vector<Mat> joint_nullspace_impl(std::size_t n, std::size_t slots, const std::vector<Map>& maps,
                                      const Tolerances& tol, Unflatten unflatten) {
  const std::size_t dim = slots * n * n;
  RMatrix big(maps.size() * dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    RVec e(dim, 0.0);
    e[col] = 1.0;
    const Mat basis = unflatten(e, n, n);
    for (std::size_t m = 0; m < maps.size(); ++m) {
      const RVec img = flatten(maps[m](basis));
      for (std::size_t row = 0; row < dim; ++row) big(m * dim + row, col) = img[row];
    }
  }
  std::vector<Mat> out;
  for (const auto& v : nullspace(std::move(big), tol.rank_pivot_rel)) out.push_back(unflatten(v, n, n));
  return out;
}

}  // namespace

std::vector<CMatrix> joint_nullspace(std::size_t n, const std::vector<CMatMap>& maps,
                                     const Tolerances& tol) {
  return joint_nullspace_impl<CMatrix>(n, 2, maps, tol, unflatten_c);
}

std::vector<QMatrix> joint_nullspace_q(std::size_t n, const std::vector<QMatMap>& maps,
                                       const Tolerances& tol) {
  return joint_nullspace_impl<QMatrix>(n, 4, maps, tol, unflatten_q);
}

}  // namespace biham
