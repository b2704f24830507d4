#include "origami/klein.hpp"

namespace origami {

Point3 make_point(const char* x, const char* y, const char* z) {
  return {parse_rational(x), parse_rational(y), parse_rational(z)};
}

ScalarPoint to_scalar(const Point3& p, int digits) {
  return {Scalar(p.x, digits), Scalar(p.y, digits), Scalar(p.z, digits)};
}

Point3 to_rational(const ScalarPoint& p) { return {p.x.to_rational(), p.y.to_rational(), p.z.to_rational()}; }

bool in_open_ball(const Point3& p) { return dot(p, p) < 1; }

Rational klein_inner(const Point3& X, const Point3& V, const Point3& W) {
  Rational a = 1 - dot(X, X);
  if (a <= 0) throw InputError("klein_inner: base point outside the open unit ball");
  Rational r = (a * dot(V, W) + dot(X, V) * dot(X, W)) / (a * a);
  r.canonicalize();
  return r;
}

Scalar klein_inner(const ScalarPoint& X, const ScalarPoint& V, const ScalarPoint& W) {
  Scalar a = Scalar(1L, X.x.digits()) - dot(X, X);
  return (a * dot(V, W) + dot(X, V) * dot(X, W)) / (a * a);
}

Cos2Sign cos2_and_sign(const Point3& X, const Point3& Y, const Point3& Z) {
  if (!in_open_ball(X) || !in_open_ball(Y) || !in_open_ball(Z)) {
    throw InputError("cos2_and_sign: point outside the open unit ball");
  }
  if (Y == X || Z == X) throw InputError("cos2_and_sign: degenerate triangle");
  Point3 V = Y - X;
  Point3 W = Z - X;
  Rational vw = klein_inner(X, V, W);
  Rational vv = klein_inner(X, V, V);
  Rational ww = klein_inner(X, W, W);
  Rational A = vw * vw / (vv * ww);
  A.canonicalize();
  return {A, sgn(vw)};
}

Scalar angle(const Point3& X, const Point3& Y, const Point3& Z, int digits) {
  Cos2Sign cs = cos2_and_sign(X, Y, Z);
  Scalar c = sqrt_bounds(cs.A, pow10(-digits - 5), digits + 5).midpoint();
  if (cs.sigma < 0) c = -c;
  if (cs.sigma == 0) c = Scalar(0L, digits + 5);
  return arccos_hp(c).with_digits(digits);
}

Scalar angle(const ScalarPoint& X, const ScalarPoint& Y, const ScalarPoint& Z) {
  ScalarPoint V = Y - X;
  ScalarPoint W = Z - X;
  Scalar vw = klein_inner(X, V, W);
  Scalar vv = klein_inner(X, V, V);
  Scalar ww = klein_inner(X, W, W);
  Scalar c = vw / sqrt(vv * ww);
  Scalar one(1L, c.digits());
  if (c > one) c = one;
  if (c < -one) c = -one;
  return arccos_hp(c);
}

DistanceParts distance_parts(const Point3& X, const Point3& Y, int digits) {
  if (!in_open_ball(X) || !in_open_ball(Y)) throw InputError("distance: point outside the open unit ball");
  if (X == Y) throw InputError("distance: coincident points");
  Point3 D = Y - X;
  Rational a = dot(D, D);
  Rational b = 2 * dot(X, D);
  Rational c = dot(X, X) - 1;
  Rational delta = b * b - 4 * a * c;
  Bound s = sqrt_bounds(delta, pow10(-digits + 5), digits);
  Rational shift = -b - 2 * c;
  Bound num = Bound::enclose(s.lo().to_rational() + shift, s.hi().to_rational() + shift, digits);
  Rational den = 4 * c * c + 4 * a * c + 4 * b * c;
  den.canonicalize();
  return {num, den};
}

Bound distance(const Point3& X, const Point3& Y, const Rational& target_width, int digits) {
  DistanceParts p = distance_parts(X, Y, digits);
  if (p.numerator.lo().sign() <= 0 || p.denominator <= 0) throw InputError("distance: degenerate logarithm");
  Bound ln_lo = ln_bounds(p.numerator.lo().to_rational(), target_width, digits);
  Bound ln_hi = ln_bounds(p.numerator.hi().to_rational(), target_width, digits);
  Bound ln_den = ln_bounds(p.denominator, target_width, digits);
  Bound half = Bound::enclose(Rational(1, 2), digits);
  Bound lo = Bound(ln_lo.lo(), ln_lo.lo()) - half * Bound(ln_den.hi(), ln_den.hi());
  Bound hi = Bound(ln_hi.hi(), ln_hi.hi()) - half * Bound(ln_den.lo(), ln_den.lo());
  return Bound(lo.lo(), hi.hi());
}

Rational norm_comparison_factor(const Rational& r) {
  if (r <= 0 || r >= 1) throw InputError("norm_comparison_factor: r must lie in (0, 1)");
  Rational s = 1 - r * r;
  Rational f = 1 / (s * s);
  f.canonicalize();
  return f;
}

}  // namespace origami
