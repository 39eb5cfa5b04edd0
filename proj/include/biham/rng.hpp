#pragma once

#include <cstdint>
#include <random>

#include "biham/matrix.hpp"

namespace biham {

/// Seeded generator for test/report inputs. One seed fully determines every
/// draw, so reports produced with the same seed are byte-identical.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(eng_);
  }
  double normal() {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(eng_);
  }
  std::uint64_t integer() { return eng_(); }

  Cx cnormal() { return {normal(), normal()}; }
  Quaternion qnormal() { return {normal(), normal(), normal(), normal()}; }

  CMatrix cmatrix(std::size_t r, std::size_t c) {
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = cnormal();
    return m;
  }
  CMatrix hermitian(std::size_t n) {
    CMatrix a = cmatrix(n, n);
    return (a + a.adjoint()) * Cx(0.5);
  }
  /// B'B + n/2 I: comfortably positive, condition number O(n).
  CMatrix positive_definite(std::size_t n) {
    CMatrix b = cmatrix(n, n);
    CMatrix h = b.adjoint() * b;
    for (std::size_t i = 0; i < n; ++i) h(i, i) += 0.5 * static_cast<double>(n);
    return (h + h.adjoint()) * Cx(0.5);
  }

  QMatrix qmatrix(std::size_t r, std::size_t c) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = qnormal();
    return m;
  }
  QMatrix qhermitian(std::size_t n) {
    QMatrix a = qmatrix(n, n);
    QMatrix h = a + a.adjoint();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) = h(i, j) * 0.5;
    return h;
  }
  QMatrix qpositive_definite(std::size_t n) {
    QMatrix b = qmatrix(n, n);
    QMatrix h = b.adjoint() * b;
    for (std::size_t i = 0; i < n; ++i) h(i, i) += Quaternion(0.5 * static_cast<double>(n));
    return h;
  }

  RVec point(std::size_t dim, double radius) {
    RVec p(dim);
    for (auto& x : p) x = uniform(-radius, radius);
    return p;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace biham
