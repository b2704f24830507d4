#include "origami/precision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace origami {

namespace {

constexpr mpfr_prec_t kGuardBits = 16;

Integer ipow(long base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Widen an inexact round-to-nearest result by one ulp in the given direction.
void widen_down(Scalar& s, int ternary) {
  if (ternary != 0) mpfr_nextbelow(s.get());
}
void widen_up(Scalar& s, int ternary) {
  if (ternary != 0) mpfr_nextabove(s.get());
}

}  // namespace

// ---- decimal strings ---------------------------------------------------------

Rational pow10(int exponent) {
  Integer p = ipow(10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p);
  Rational r(Integer(1), p);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) {
    throw InputError("cannot parse number '" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  std::size_t end = text.size();
  while (end > pos && (text[end - 1] == ' ' || text[end - 1] == '\t')) --end;
  std::string_view s = text.substr(pos, end - pos);
  if (s.empty()) fail("empty");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den.get_den() != 1 || num.get_den() != 1) fail("fraction parts must be integers");
    if (den == 0) fail("zero denominator");
    Rational r = num / den;
    r.canonicalize();
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail("no digits");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') fail("unexpected character");
    ++i;
    bool exp_negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      exp_negative = s[i] == '-';
      ++i;
    }
    if (i >= s.size()) fail("empty exponent");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail("bad exponent");
      exponent = exponent * 10 + (s[i] - '0');
      if (exponent > 100000000) fail("exponent out of range");
    }
    if (exp_negative) exponent = -exponent;
  }
  Integer mantissa(digits, 10);
  Rational r(mantissa);
  r *= pow10(static_cast<int>(exponent - frac_digits));
  if (negative) r = -r;
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& q_in) {
  Rational q = q_in;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  Integer den = q.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(5).get_mpz_t());
  if (den != 1) return q.get_num().get_str() + "/" + q.get_den().get_str();
  unsigned long k = std::max(twos, fives);
  Integer scaled = q.get_num() * ipow(10, k) / q.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string d = scaled.get_str();
  if (d.size() <= k) d.insert(0, k - d.size() + 1, '0');
  d.insert(d.size() - k, ".");
  return negative ? "-" + d : d;
}

Rational truncate_decimal(const Rational& q, int decimals) {
  Rational scaled = q * pow10(decimals);
  Integer t;
  mpz_tdiv_q(t.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r = Rational(t) / pow10(decimals);
  r.canonicalize();
  return r;
}

// ---- Scalar --------------------------------------------------------------------

mpfr_prec_t Scalar::bits_for_digits(int digits) {
  if (digits < 1) throw InputError("precision must be at least 1 digit");
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + kGuardBits;
}

Scalar::Scalar(int digits) : digits_(digits) {
  mpfr_init2(value_, bits_for_digits(digits));
  mpfr_set_zero(value_, 1);
}

Scalar::Scalar(long value, int digits) : Scalar(digits) { mpfr_set_si(value_, value, MPFR_RNDN); }

Scalar::Scalar(const Rational& value, int digits) : Scalar(digits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Scalar::Scalar(const Scalar& other) : digits_(other.digits_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Scalar::Scalar(Scalar&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
    digits_ = other.digits_;
  }
  return *this;
}

Scalar& Scalar::operator=(Scalar&& other) noexcept {
  mpfr_swap(value_, other.value_);
  std::swap(digits_, other.digits_);
  return *this;
}

Scalar::~Scalar() { mpfr_clear(value_); }

Scalar Scalar::parse(std::string_view text, int digits) { return Scalar(parse_rational(text), digits); }

Rational Scalar::to_rational() const {
  if (!mpfr_number_p(value_)) throw InputError("non-finite scalar");
  if (mpfr_zero_p(value_)) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), value_);
  Rational r(m);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

namespace {
std::string format_mantissa(mpfr_srcptr v, std::size_t n) {
  if (mpfr_zero_p(v)) return "0";
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, n, v, MPFR_RNDN);
  std::string m(raw);
  mpfr_free_str(raw);
  bool negative = !m.empty() && m[0] == '-';
  if (negative) m.erase(0, 1);
  while (m.size() > 1 && m.back() == '0') m.pop_back();
  std::string out = negative ? "-" : "";
  out += m[0];
  if (m.size() > 1) {
    out += '.';
    out.append(m, 1, std::string::npos);
  }
  long e10 = static_cast<long>(exp) - 1;
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}
}  // namespace

std::string Scalar::to_string() const { return format_mantissa(value_, 0); }

std::string Scalar::to_string(int sig) const {
  return format_mantissa(value_, static_cast<std::size_t>(std::max(sig, 1)));
}

double Scalar::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

Scalar Scalar::next_up() const {
  Scalar r(*this);
  mpfr_nextabove(r.value_);
  return r;
}

Scalar Scalar::next_down() const {
  Scalar r(*this);
  mpfr_nextbelow(r.value_);
  return r;
}

Scalar Scalar::with_digits(int digits) const {
  Scalar r(digits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

namespace {
// Raise lhs to the larger of the two precisions before an in-place operation.
void promote(Scalar& lhs, const Scalar& rhs) {
  if (rhs.digits() > lhs.digits()) lhs = lhs.with_digits(rhs.digits());
}
}  // namespace

Scalar& Scalar::operator+=(const Scalar& rhs) {
  promote(*this, rhs);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  promote(*this, rhs);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  promote(*this, rhs);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw InputError("division by zero");
  promote(*this, rhs);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar operator*(Scalar lhs, long rhs) {
  mpfr_mul_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
  return lhs;
}

Scalar operator/(Scalar lhs, long rhs) {
  if (rhs == 0) throw InputError("division by zero");
  mpfr_div_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
  return lhs;
}

Scalar operator+(Scalar lhs, long rhs) {
  mpfr_add_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
  return lhs;
}

Scalar operator-(Scalar lhs, long rhs) {
  mpfr_sub_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
  return lhs;
}

int Scalar::compare(const Rational& q) const { return mpfr_cmp_q(value_, q.get_mpq_t()); }

Scalar sqrt(const Scalar& x) {
  if (x.sign() < 0) throw InputError("square root of a negative number");
  Scalar r(x.digits());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

namespace {

// arctan(1/m) for integer m > 1 by its alternating series; the error after
// stopping is below the first omitted term, which is below 2^-bits.
Scalar arctan_inverse(long m, int digits, mpfr_prec_t bits) {
  Scalar sum(0L, digits);
  Scalar term = Scalar(1L, digits) / m;  // 1/m^(2k+1)
  const long m2 = m * m;
  for (long k = 0;; ++k) {
    Scalar t = term / (2 * k + 1);
    if (k % 2 == 0) {
      sum += t;
    } else {
      sum -= t;
    }
    term = term / m2;
    if (term.is_zero() || mpfr_get_exp(term.get()) < -bits) break;
  }
  return sum;
}

}  // namespace

Scalar pi(int digits) {
  static std::mutex mutex;
  static std::map<int, Scalar> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(digits); it != cache.end()) return it->second;
  }
  const int work = digits + 10;
  const mpfr_prec_t bits = Scalar::bits_for_digits(work);
  Scalar p = arctan_inverse(5, work, bits) * 16L - arctan_inverse(239, work, bits) * 4L;
  Scalar result = p.with_digits(digits);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(digits, result);
  return result;
}

// ---- Bound ----------------------------------------------------------------------

Bound::Bound(Scalar lo, Scalar hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_.digits() > lo_.digits()) lo_ = lo_.with_digits(hi_.digits());
  if (lo_.digits() > hi_.digits()) hi_ = hi_.with_digits(lo_.digits());
  if (!(lo_ <= hi_)) throw InputError("bound with lo > hi");
}

Bound Bound::enclose(const Rational& q, int digits) { return enclose(q, q, digits); }

Bound Bound::enclose(const Rational& lo, const Rational& hi, int digits) {
  Scalar l(digits), h(digits);
  mpfr_set_q(l.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(h.get(), hi.get_mpq_t(), MPFR_RNDU);
  return Bound(std::move(l), std::move(h));
}

Scalar Bound::midpoint() const {
  Scalar m = lo_ + hi_;
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

Scalar Bound::width() const {
  Scalar w(digits());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

bool Bound::contains(const Rational& q) const { return lo_.compare(q) <= 0 && hi_.compare(q) >= 0; }

bool Bound::contains(const Scalar& x) const { return lo_ <= x && x <= hi_; }

bool Bound::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

bool Bound::overlaps(const Bound& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }

bool Bound::within(const Rational& a, const Rational& b) const {
  return lo_.compare(a) >= 0 && hi_.compare(b) <= 0;
}

Bound Bound::operator-() const { return Bound(-hi_, -lo_); }

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

struct Rounded {
  Scalar value;
  int ternary;
};

Rounded apply(BinaryOp op, const Scalar& a, const Scalar& b) {
  Scalar r(std::max(a.digits(), b.digits()));
  int t = op(r.get(), a.get(), b.get(), MPFR_RNDN);
  return {std::move(r), t};
}

Bound from_candidates(Rounded* c, int count) {
  int lo = 0;
  int hi = 0;
  for (int i = 1; i < count; ++i) {
    if (c[i].value < c[lo].value || (c[i].value == c[lo].value && c[i].ternary != 0)) lo = i;
    if (c[i].value > c[hi].value || (c[i].value == c[hi].value && c[i].ternary != 0)) hi = i;
  }
  Scalar l = c[lo].value;
  Scalar h = c[hi].value;
  widen_down(l, c[lo].ternary);
  widen_up(h, c[hi].ternary);
  return Bound(std::move(l), std::move(h));
}

}  // namespace

Bound operator+(const Bound& a, const Bound& b) {
  Rounded l = apply(mpfr_add, a.lo(), b.lo());
  Rounded h = apply(mpfr_add, a.hi(), b.hi());
  widen_down(l.value, l.ternary);
  widen_up(h.value, h.ternary);
  return Bound(std::move(l.value), std::move(h.value));
}

Bound operator-(const Bound& a, const Bound& b) {
  Rounded l = apply(mpfr_sub, a.lo(), b.hi());
  Rounded h = apply(mpfr_sub, a.hi(), b.lo());
  widen_down(l.value, l.ternary);
  widen_up(h.value, h.ternary);
  return Bound(std::move(l.value), std::move(h.value));
}

Bound operator*(const Bound& a, const Bound& b) {
  Rounded c[4] = {apply(mpfr_mul, a.lo(), b.lo()), apply(mpfr_mul, a.lo(), b.hi()),
                  apply(mpfr_mul, a.hi(), b.lo()), apply(mpfr_mul, a.hi(), b.hi())};
  return from_candidates(c, 4);
}

Bound operator/(const Bound& a, const Bound& b) {
  if (b.contains_zero()) throw InputError("division by a bound containing zero");
  Rounded c[4] = {apply(mpfr_div, a.lo(), b.lo()), apply(mpfr_div, a.lo(), b.hi()),
                  apply(mpfr_div, a.hi(), b.lo()), apply(mpfr_div, a.hi(), b.hi())};
  return from_candidates(c, 4);
}

Bound square(const Bound& x) {
  if (x.lo().sign() >= 0) return x * x;
  if (x.hi().sign() <= 0) return (-x) * (-x);
  Scalar m = max(-x.lo(), x.hi());
  Bound s = Bound(m, m) * Bound(m, m);
  return Bound(Scalar(0L, x.digits()), s.hi());
}

// ---- exp family -------------------------------------------------------------

Rational taylor_exp_partial(const Rational& x, int n) {
  if (n < 0) throw InputError("Taylor order must be non-negative");
  Rational acc(1);
  for (int k = n; k >= 1; --k) {
    acc = 1 + x * acc / k;
  }
  acc.canonicalize();
  return acc;
}

Scalar taylor_exp_partial(const Scalar& x, int n) {
  if (n < 0) throw InputError("Taylor order must be non-negative");
  Scalar acc(1L, x.digits());
  for (int k = n; k >= 1; --k) {
    acc = x * acc / static_cast<long>(k) + 1L;
  }
  return acc;
}

Rational exp_remainder(int a, int n) {
  if (a < 0 || n < 0) throw InputError("exp remainder needs a, n >= 0");
  Rational r(ipow(a, static_cast<unsigned long>(n) + 1) * ipow(3, static_cast<unsigned long>(a)),
             factorial(static_cast<unsigned long>(n) + 1));
  r.canonicalize();
  return r;
}

namespace {

// Encloses S_n(x) for x inside the bound `x` by Horner's rule in Bound arithmetic.
Bound taylor_enclosure(const Bound& x, int n) {
  const int d = x.digits();
  Bound one = Bound::enclose(Rational(1), d);
  Bound acc = one;
  for (int k = n; k >= 1; --k) {
    acc = one + x * acc / Bound::enclose(Rational(k), d);
  }
  return acc;
}

Bound exp_from(const Bound& x, int a, int n) {
  if (n < 0) throw InputError("Taylor order must be non-negative");
  Bound s = taylor_enclosure(x, n);
  Bound r = Bound::enclose(exp_remainder(a, n), x.digits());
  Bound lo = s - r;
  Bound hi = s + r;
  return Bound(lo.lo(), hi.hi());
}

}  // namespace

Bound exp_bounds(const Rational& x, int a, int n, int digits) {
  if (a < 1) throw InputError("exp_bounds needs a positive integer a");
  if (abs(x) > a) throw InputError("exp_bounds: |x| exceeds a");
  return exp_from(Bound::enclose(x, digits), a, n);
}

Bound exp_bounds(const Scalar& x, int a, int n) {
  if (a < 1) throw InputError("exp_bounds needs a positive integer a");
  if (abs(x) > Scalar(static_cast<long>(a), x.digits())) throw InputError("exp_bounds: |x| exceeds a");
  return exp_from(Bound(x, x), a, n);
}

namespace {

// Smallest order n >= 20 whose remainder cap is below `cap`.
int order_for(int a, const Rational& cap) {
  int n = 20;
  Rational r = exp_remainder(a, n);
  while (r >= cap) {
    ++n;
    r = r * a / (n + 1);
  }
  return n;
}

int ceil_abs(const Rational& x) {
  Rational ax = abs(x);
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), ax.get_num_mpz_t(), ax.get_den_mpz_t());
  return std::max(1, static_cast<int>(c.get_si()));
}

}  // namespace

Bound ln_bounds(const Rational& x, const Rational& target_width, int digits) {
  if (x <= 0) throw InputError("ln_bounds: argument must be positive");
  if (target_width <= 0) throw InputError("ln_bounds: target width must be positive");
  if (target_width < pow10(2 - digits)) throw InputError("ln_bounds: target width below working precision");

  // Integer bracket with e^lo <= x <= e^hi, certified by exp_bounds.
  auto exp_at = [&](const Rational& t, const Rational& cap) {
    int a = ceil_abs(t);
    return exp_bounds(t, a, order_for(a, cap), digits);
  };
  const Rational coarse(1, 1000);
  long hi = 0;
  while (exp_at(Rational(hi), coarse).lo().compare(x) < 0) ++hi;
  long lo = hi - 1;
  while (exp_at(Rational(lo), coarse).hi().compare(x) > 0) --lo;

  // The remainder must be small against the local slope e^t >= 3^min(lo,0).
  Rational slope_floor = lo >= 0 ? Rational(1) : Rational(1) / Rational(ipow(3, static_cast<unsigned long>(-lo)));
  const Rational cap = target_width * slope_floor / 16;

  Rational a(lo);
  Rational b(hi);
  while (b - a > target_width) {
    Rational mid = (a + b) / 2;
    Bound e = exp_at(mid, cap);
    if (e.hi().compare(x) <= 0) {
      a = mid;
    } else if (e.lo().compare(x) >= 0) {
      b = mid;
    } else {
      Rational left = mid - target_width / 4;
      Rational right = mid + target_width / 4;
      if (exp_at(left, cap).hi().compare(x) > 0 || exp_at(right, cap).lo().compare(x) < 0) {
        throw InputError("ln_bounds: precision exhausted before reaching the target width");
      }
      a = std::max(a, left);
      b = std::min(b, right);
      break;
    }
  }
  a.canonicalize();
  b.canonicalize();
  return Bound::enclose(a, b, digits);
}

Bound sqrt_bounds(const Rational& x, const Rational& target_width, int digits) {
  if (x < 0) throw InputError("sqrt_bounds: negative argument");
  if (x == 0) return Bound(Scalar(0L, digits), Scalar(0L, digits));
  if (target_width <= 0) throw InputError("sqrt_bounds: target width must be positive");
  for (int d = digits;; d += std::max(10, d / 2)) {
    Scalar lo(d), hi(d), t(d);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_sqrt(lo.get(), t.get(), MPFR_RNDD);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
    mpfr_sqrt(hi.get(), t.get(), MPFR_RNDU);
    // Exact verification of x1^2 <= x <= x2^2.
    while (true) {
      Rational l = lo.to_rational();
      if (l * l <= x) break;
      lo = lo.next_down();
    }
    while (true) {
      Rational h = hi.to_rational();
      if (h * h >= x) break;
      hi = hi.next_up();
    }
    if (hi.to_rational() - lo.to_rational() <= target_width) return Bound(std::move(lo), std::move(hi));
    if (d > 100000) throw InputError("sqrt_bounds: target width unreachable");
  }
}

Bound sqrt_bounds(const Scalar& x, const Rational& target_width) {
  return sqrt_bounds(x.to_rational(), target_width, x.digits());
}

HypBounds hyp_bounds(const Rational& x, int digits) {
  if (abs(x) > 3) throw InputError("hyp_bounds: |x| must be at most 3");
  Rational sp = taylor_exp_partial(x, 20);
  Rational sm = taylor_exp_partial(Rational(-x), 20);
  Rational s = (sp - sm) / 2;
  Rational c = (sp + sm) / 2;
  Rational t = s / c;
  const Rational r8 = pow10(-8);
  const Rational r6 = pow10(-6);
  return HypBounds{Bound::enclose(s - r8, s + r8, digits), Bound::enclose(c - r8, c + r8, digits),
                   Bound::enclose(t - r6, t + r6, digits)};
}

HypBounds hyp_bounds(const Scalar& x) { return hyp_bounds(x.to_rational(), x.digits()); }

// ---- arccos -------------------------------------------------------------------

namespace {

// arcsin by its Maclaurin series, for |y| <= 1/2.
Scalar arcsin_series(const Scalar& y, mpfr_prec_t bits) {
  const int d = y.digits();
  Scalar y2 = y * y;
  Scalar power = y;           // y^(2k+1)
  Scalar coeff(1L, d);        // (2k)! / (4^k (k!)^2)
  Scalar sum(0L, d);
  for (long k = 0;; ++k) {
    Scalar term = coeff * power / (2 * k + 1);
    sum += term;
    if (term.is_zero() || mpfr_get_exp(term.get()) < -bits) break;
    power *= y2;
    coeff = coeff * (2 * k + 1) / (2 * k + 2);
  }
  return sum;
}

}  // namespace

Scalar arccos_hp(const Scalar& x) {
  const int digits = x.digits();
  const int work = digits + 10;
  const mpfr_prec_t bits = Scalar::bits_for_digits(work);
  Scalar one(1L, work);
  Scalar xw = x.with_digits(work);
  if (abs(xw) > one) throw InputError("arccos_hp: |x| > 1");
  Scalar half = one / 2L;
  Scalar p = pi(work);
  Scalar result(work);
  if (xw > half) {
    Scalar s = sqrt((one - xw) / 2L);
    result = arcsin_series(s, bits) * 2L;
  } else if (xw < -half) {
    Scalar s = sqrt((one + xw) / 2L);
    result = p - arcsin_series(s, bits) * 2L;
  } else {
    result = p / 2L - arcsin_series(xw, bits);
  }
  return result.with_digits(digits);
}

}  // namespace origami
