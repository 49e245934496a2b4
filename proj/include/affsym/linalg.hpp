#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace affsym {

using Vec3 = std::array<double, 3>;

/// Row-major dim x dim matrix, dim in {2, 3}. Unused entries stay zero.
struct Mat {
  int dim = 2;
  std::array<double, 9> a{};

  double& operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }

  static Mat identity(int dim) {
    Mat m;
    m.dim = dim;
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat rotation2d(double theta) {
    Mat m = identity(2);
    double c = std::cos(theta), s = std::sin(theta);
    m(0, 0) = c;
    m(0, 1) = -s;
    m(1, 0) = s;
    m(1, 1) = c;
    return m;
  }

  /// Rodrigues rotation about a unit axis (3-D).
  static Mat rotation3d(const Vec3& axis, double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    double x = axis[0], y = axis[1], z = axis[2];
    Mat m;
    m.dim = 3;
    m(0, 0) = c + x * x * (1 - c);
    m(0, 1) = x * y * (1 - c) - z * s;
    m(0, 2) = x * z * (1 - c) + y * s;
    m(1, 0) = y * x * (1 - c) + z * s;
    m(1, 1) = c + y * y * (1 - c);
    m(1, 2) = y * z * (1 - c) - x * s;
    m(2, 0) = z * x * (1 - c) - y * s;
    m(2, 1) = z * y * (1 - c) + x * s;
    m(2, 2) = c + z * z * (1 - c);
    return m;
  }

  Mat transpose() const {
    Mat t;
    t.dim = dim;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  double det() const {
    if (dim == 2) return a[0] * a[4] - a[1] * a[3];
    return a[0] * (a[4] * a[8] - a[5] * a[7]) -
           a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }

  Mat inverse() const {
    double d = det();
    if (std::fabs(d) < 1e-300) throw std::domain_error("Mat: singular matrix");
    Mat inv;
    inv.dim = dim;
    if (dim == 2) {
      inv(0, 0) = a[4] / d;
      inv(0, 1) = -a[1] / d;
      inv(1, 0) = -a[3] / d;
      inv(1, 1) = a[0] / d;
      return inv;
    }
    const Mat& m = *this;
    inv(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
    inv(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
    inv(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
    inv(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
    inv(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
    inv(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
    inv(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
    inv(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
    inv(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
    return inv;
  }

  Vec3 apply(const Vec3& v) const {
    Vec3 r{};
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Mat operator*(const Mat& o) const {
    Mat r;
    r.dim = dim;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double s = 0;
        for (int k = 0; k < dim; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }
};

inline double dot(const Vec3& a, const Vec3& b, int dim) {
  double s = 0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec3& a, int dim) { return std::sqrt(dot(a, a, dim)); }

inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

inline Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 normalized(const Vec3& a, int dim) {
  double n = norm2(a, dim);
  if (n == 0.0) throw std::domain_error("linalg: cannot normalize zero vector");
  return scaled(a, 1.0 / n);
}

/// Orthogonal matrix mapping `direction` (unit) onto the last coordinate axis.
inline Mat rotation_to_last_axis(const Vec3& direction, int dim) {
  if (dim == 2) {
    // R maps u to e_2: rotate by (pi/2 - angle(u)).
    double ang = std::atan2(direction[1], direction[0]);
    return Mat::rotation2d(M_PI / 2 - ang);
  }
  Vec3 u = direction;
  Vec3 ez{0, 0, 1};
  double c = dot(u, ez, 3);
  if (c > 1.0 - 1e-14) return Mat::identity(3);
  if (c < -1.0 + 1e-14) {
    Mat m = Mat::identity(3);
    m(0, 0) = 1;
    m(1, 1) = -1;
    m(2, 2) = -1;
    return m;
  }
  Vec3 axis = normalized(Vec3{u[1] * ez[2] - u[2] * ez[1],
                              u[2] * ez[0] - u[0] * ez[2],
                              u[0] * ez[1] - u[1] * ez[0]},
                         3);
  return Mat::rotation3d(axis, std::acos(c));
}

}  // namespace affsym
