// Arbitrary-precision scalars, exact rationals and certified enclosures.
//
// Scalar wraps an MPFR float whose precision is given in decimal digits and
// travels with the value. Rational and Integer are GMP's exact types. Bound is
// a closed interval [lo, hi] of Scalars; every arithmetic operation rounds to
// nearest and then widens each endpoint by one unit in the last place, so the
// true result of an operation on enclosed reals stays enclosed.

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace origami {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kDefaultDigits = 400;

/// Raised when an operation's precondition on its inputs does not hold.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "-12.5e-3", "7", ".25" or "3/8" exactly. Locale independent.
Rational parse_rational(std::string_view text);

/// Exact decimal when the reduced denominator is 2^a 5^b, otherwise "p/q".
std::string format_rational(const Rational& q);

/// Truncates toward zero to `decimals` places after the point.
Rational truncate_decimal(const Rational& q, int decimals);

Rational pow10(int exponent);

class Scalar {
 public:
  explicit Scalar(int digits = kDefaultDigits);
  Scalar(long value, int digits);
  Scalar(const Rational& value, int digits);
  Scalar(const Scalar& other);
  Scalar(Scalar&& other) noexcept;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&& other) noexcept;
  ~Scalar();

  static Scalar parse(std::string_view text, int digits);
  static mpfr_prec_t bits_for_digits(int digits);

  int digits() const { return digits_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  /// Exact value of the binary float as a dyadic rational.
  Rational to_rational() const;
  /// Shortest decimal string that parses back to the same Scalar.
  std::string to_string() const;
  /// `sig` significant decimal digits, scientific notation.
  std::string to_string(int sig) const;
  double to_double() const;

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

  Scalar next_up() const;
  Scalar next_down() const;
  Scalar with_digits(int digits) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  friend Scalar operator*(Scalar lhs, long rhs);
  friend Scalar operator*(long lhs, Scalar rhs) { return std::move(rhs) * lhs; }
  friend Scalar operator/(Scalar lhs, long rhs);
  friend Scalar operator+(Scalar lhs, long rhs);
  friend Scalar operator-(Scalar lhs, long rhs);

  friend bool operator==(const Scalar& a, const Scalar& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return b <= a; }

  /// Exact comparison against a rational: negative, zero or positive.
  int compare(const Rational& q) const;

 private:
  mpfr_t value_;
  int digits_;
};

Scalar sqrt(const Scalar& x);
Scalar abs(const Scalar& x);
Scalar max(const Scalar& a, const Scalar& b);

/// pi to the given number of digits, from Machin's arctan formula.
Scalar pi(int digits);

class Bound {
 public:
  Bound(Scalar lo, Scalar hi);
  /// Outward-rounded enclosure of an exact rational.
  static Bound enclose(const Rational& q, int digits);
  static Bound enclose(const Rational& lo, const Rational& hi, int digits);

  const Scalar& lo() const { return lo_; }
  const Scalar& hi() const { return hi_; }
  int digits() const { return lo_.digits(); }
  Scalar midpoint() const;
  Scalar width() const;

  bool contains(const Rational& q) const;
  bool contains(const Scalar& x) const;
  bool contains_zero() const;
  bool overlaps(const Bound& other) const;
  /// True when [lo, hi] is inside the closed interval [a, b].
  bool within(const Rational& a, const Rational& b) const;

  Bound operator-() const;
  friend Bound operator+(const Bound& a, const Bound& b);
  friend Bound operator-(const Bound& a, const Bound& b);
  friend Bound operator*(const Bound& a, const Bound& b);
  /// Throws InputError when the divisor contains zero.
  friend Bound operator/(const Bound& a, const Bound& b);

 private:
  Scalar lo_;
  Scalar hi_;
};

Bound square(const Bound& x);

// ---- Certified transcendental enclosures ----------------------------------

/// S_n(x) = sum_{k=0}^{n} x^k / k!, exactly.
Rational taylor_exp_partial(const Rational& x, int n);
/// S_n(x) evaluated at the precision of x.
Scalar taylor_exp_partial(const Scalar& x, int n);

/// Taylor remainder cap a^{n+1} 3^a / (n+1)! valid for |x| <= a.
Rational exp_remainder(int a, int n);

/// [S_n(x) - R, S_n(x) + R] with R = exp_remainder(a, n); contains e^x.
Bound exp_bounds(const Rational& x, int a, int n = 20, int digits = kDefaultDigits);
Bound exp_bounds(const Scalar& x, int a, int n = 20);

/// [a, b] with e^a <= x <= e^b certified through exp_bounds and b - a <= target_width.
Bound ln_bounds(const Rational& x, const Rational& target_width, int digits = kDefaultDigits);

/// [x1, x2] with x1^2 <= x <= x2^2 checked by exact squaring.
Bound sqrt_bounds(const Rational& x, const Rational& target_width, int digits = kDefaultDigits);
Bound sqrt_bounds(const Scalar& x, const Rational& target_width);

struct HypBounds {
  Bound sinh;
  Bound cosh;
  Bound tanh;
};

/// sinh, cosh, tanh on |x| <= 3 from S_20 with error radii 1e-8, 1e-8, 1e-6.
HypBounds hyp_bounds(const Rational& x, int digits = kDefaultDigits);
HypBounds hyp_bounds(const Scalar& x);

/// arccos at the precision of x, accurate to about 10^(2 - digits).
/// Not certified; used by the search path only.
Scalar arccos_hp(const Scalar& x);

}  // namespace origami
