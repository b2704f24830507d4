// Beltrami-Klein model of hyperbolic 3-space: points are in the open unit
// ball, geodesics are Euclidean chords.

#pragma once

#include "origami/precision.hpp"

#include <array>

namespace origami {

template <class T>
struct Vec3 {
  T x{}, y{}, z{};

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(const T& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

  T& operator[](int k) { return k == 0 ? x : (k == 1 ? y : z); }
  const T& operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }
};

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

using Point3 = Vec3<Rational>;
using ScalarPoint = Vec3<Scalar>;

Point3 make_point(const char* x, const char* y, const char* z);
ScalarPoint to_scalar(const Point3& p, int digits);
Point3 to_rational(const ScalarPoint& p);

/// Metric tensor at X applied to (V, W): (a <V,W> + <X,V><X,W>) / a^2, a = 1 - |X|^2.
Rational klein_inner(const Point3& X, const Point3& V, const Point3& W);

/// Same formula in floating point, without the ball check.
Scalar klein_inner(const ScalarPoint& X, const ScalarPoint& V, const ScalarPoint& W);

struct Cos2Sign {
  Rational A;  // squared cosine of the angle at X
  int sigma;   // sign of the metric inner product
};

/// Squared cosine and sign of the hyperbolic angle at X in the triangle XYZ.
Cos2Sign cos2_and_sign(const Point3& X, const Point3& Y, const Point3& Z);

/// Angle at X: arccos(sigma sqrt(A)), at the given precision.
Scalar angle(const Point3& X, const Point3& Y, const Point3& Z, int digits = kDefaultDigits);

/// Floating-point angle for the search path (coordinates already rounded).
Scalar angle(const ScalarPoint& X, const ScalarPoint& Y, const ScalarPoint& Z);

/// Certified hyperbolic distance through the closed form in a, b, c, Delta.
Bound distance(const Point3& X, const Point3& Y, const Rational& target_width = pow10(-30),
               int digits = kDefaultDigits);

/// Inner quantities of the distance formula.
struct DistanceParts {
  Bound numerator;    // sqrt(Delta) - b - 2c
  Rational denominator;  // 4c^2 + 4ac + 4bc
};
DistanceParts distance_parts(const Point3& X, const Point3& Y, int digits = kDefaultDigits);

/// 1 / (1 - r^2)^2: bounds |V|_X^2 / |V|^2 for every |X| <= r.
Rational norm_comparison_factor(const Rational& r);

bool in_open_ball(const Point3& p);

}  // namespace origami
