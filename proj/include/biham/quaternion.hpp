#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <utility>

namespace biham {

using Cx = std::complex<double>;

/// Real quaternion q = w + x i + y j + z k.
///
/// Vectors over these scalars form RIGHT modules everywhere in this library:
/// matrices act from the left, scalars multiply components from the right.
///
/// Symplectic split convention: q = c1 + c2 * j with c1 = w + i x and
/// c2 = y + i z (note j * c = conj(c) * j for complex c, so the same
/// decomposition can be written with j on the left at the price of a
/// conjugation). The complex counterpart of a matrix follows this split.
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  explicit Quaternion(double real) : w(real) {}
  explicit Quaternion(const Cx& c) : w(c.real()), x(c.imag()) {}

  static Quaternion from_split(const Cx& c1, const Cx& c2) {
    return {c1.real(), c1.imag(), c2.real(), c2.imag()};
  }
  std::pair<Cx, Cx> split() const { return {Cx(w, x), Cx(y, z)}; }

  static Quaternion unit_i() { return {0, 1, 0, 0}; }
  static Quaternion unit_j() { return {0, 0, 1, 0}; }
  static Quaternion unit_k() { return {0, 0, 0, 1}; }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }

// Hamilton product: i j = k, j k = i, k i = j.
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion operator*(const Quaternion& a, double s) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
inline Quaternion operator*(double s, const Quaternion& a) { return a * s; }
inline Quaternion operator*(const Quaternion& a, const Cx& c) { return a * Quaternion(c); }
inline Quaternion operator*(const Cx& c, const Quaternion& a) { return Quaternion(c) * a; }

inline Quaternion inverse(const Quaternion& q) {
  const double n2 = q.norm2();
  return q.conj() * (1.0 / n2);
}

inline bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

inline double abs_dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.w << "," << q.x << "," << q.y << "," << q.z << ")";
}

}  // namespace biham
