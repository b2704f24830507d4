#include "doctest.h"
#include "origami/precision.hpp"

#include <random>

using namespace origami;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Rational random_rational(std::mt19937_64& rng, long range = 1000000) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, 9973);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

// Independent ln oracle: bisection on exact S_200 partial sums with the
// remainder cap a^201 3^a / 201!.
std::pair<Rational, Rational> ln_oracle(const Rational& x, int steps) {
  Rational lo(0), hi(2);
  Rational cap = exp_remainder(2, 200);
  for (int i = 0; i < steps; ++i) {
    Rational mid = (lo + hi) / 2;
    Rational s = taylor_exp_partial(mid, 200);
    if (s + cap <= x) {
      lo = mid;
    } else if (s - cap >= x) {
      hi = mid;
    } else {
      break;
    }
  }
  return {lo, hi};
}

// Certified cosine from the alternating Taylor series; the error is below
// the first omitted term |t|^(2n+2)/(2n+2)!.
Scalar cos_taylor(const Scalar& t) {
  Scalar sum(1L, t.digits());
  Scalar term(1L, t.digits());
  Scalar t2 = t * t;
  for (long k = 1; k < 400; ++k) {
    term = -term * t2 / ((2 * k - 1) * (2 * k));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("decimal strings parse exactly and print canonically") {
  CHECK(q("-12.5e-3") == Rational(-1, 80));
  CHECK(q(".25") == Rational(1, 4));
  CHECK(q("3/8") == Rational(3, 8));
  CHECK(q("7") == 7);
  CHECK(q("1E+2") == 100);
  CHECK(format_rational(Rational(-1, 80)) == "-0.0125");
  CHECK(format_rational(Rational(1, 3)) == "1/3");
  CHECK(format_rational(Rational(42)) == "42");
  CHECK(format_rational(q("0.28688022781563440615364787558404")) == "0.28688022781563440615364787558404");
  CHECK_THROWS_AS(q("1.2.3"), InputError);
  CHECK_THROWS_AS(q(""), InputError);
  CHECK_THROWS_AS(q("1e"), InputError);
  CHECK_THROWS_AS(q("abc"), InputError);
  CHECK_THROWS_AS(q("1/0"), InputError);
  CHECK(truncate_decimal(q("0.123456"), 3) == q("0.123"));
  CHECK(truncate_decimal(q("-0.123456"), 3) == q("-0.123"));
}

TEST_CASE("scalar round trips through its decimal string") {
  std::mt19937_64 rng(7);
  for (int digits : {20, 100, 400}) {
    for (int i = 0; i < 50; ++i) {
      Scalar a(random_rational(rng), digits);
      Scalar b = a / Scalar(random_rational(rng, 97) + Rational(1, 3), digits);
      Scalar back = Scalar::parse(b.to_string(), digits);
      CHECK(back == b);
    }
  }
}

TEST_CASE("scalar operations have relative error at most 10^(1-p)") {
  std::mt19937_64 rng(11);
  for (int digits : {30, 400}) {
    const Rational tol = pow10(1 - digits);
    for (int i = 0; i < 100; ++i) {
      Rational x = random_rational(rng);
      Rational y = random_rational(rng);
      if (y == 0) continue;
      Scalar sx(x, digits), sy(y, digits);
      Rational ex = sx.to_rational(), ey = sy.to_rational();
      auto rel_ok = [&](const Scalar& got, const Rational& exact) {
        Rational err = abs(got.to_rational() - exact);
        return err <= tol * abs(exact);
      };
      CHECK(rel_ok(sx * sy, ex * ey));
      CHECK(rel_ok(sx / sy, ex / ey));
      if (ex + ey != 0) CHECK(rel_ok(sx + sy, ex + ey));
    }
  }
}

TEST_CASE("bound arithmetic contains exact results") {
  std::mt19937_64 rng(3);
  const int digits = 25;
  for (int i = 0; i < 300; ++i) {
    Rational a1 = random_rational(rng), a2 = random_rational(rng);
    Rational b1 = random_rational(rng), b2 = random_rational(rng);
    if (a1 > a2) std::swap(a1, a2);
    if (b1 > b2) std::swap(b1, b2);
    Bound A = Bound::enclose(a1, a2, digits);
    Bound B = Bound::enclose(b1, b2, digits);
    Rational t(static_cast<long>(rng() % 1000), 999);
    Rational wa = a1 + (a2 - a1) * t;
    Rational wb = b2 - (b2 - b1) * t;
    CHECK(A.lo() <= A.hi());
    CHECK((A + B).contains(Rational(wa + wb)));
    CHECK((A - B).contains(Rational(wa - wb)));
    CHECK((A * B).contains(Rational(wa * wb)));
    CHECK(square(A).contains(Rational(wa * wa)));
    if (!B.contains_zero()) {
      CHECK((A / B).contains(Rational(wa / wb)));
    } else {
      CHECK_THROWS_AS(A / B, InputError);
    }
  }
}

TEST_CASE("taylor partial sums") {
  CHECK(taylor_exp_partial(Rational(0), 20) == 1);
  CHECK(taylor_exp_partial(Rational(1), 2) == Rational(5, 2));
  Scalar e2 = taylor_exp_partial(Scalar(2L, 50), 20);
  CHECK(abs(e2 - Scalar::parse("7.38905609893064951", 50)).to_double() < 1e-10);
  CHECK_THROWS_AS(taylor_exp_partial(Rational(1), -1), InputError);
}

TEST_CASE("exp_bounds contain e^x with the stated remainder") {
  const Rational slack = pow10(-390);
  Bound b0 = exp_bounds(Rational(0), 1, 20);
  CHECK(b0.contains(Rational(1)));
  CHECK(b0.width().to_rational() <= 2 * exp_remainder(1, 20) + slack);

  Bound b2 = exp_bounds(Rational(2), 2, 20);
  CHECK(b2.width().to_rational() <= 2 * pow10(-10));
  CHECK(b2.contains(q("7.389056098930650227230427460575")));

  Bound b3 = exp_bounds(Rational(3), 3, 20);
  CHECK(b3.width().to_rational() <= 2 * pow10(-8));
  CHECK(b3.contains(q("20.085536923187667740928529654581")));

  CHECK_THROWS_AS(exp_bounds(Rational(3), 2, 20), InputError);
}

TEST_CASE("exp_bounds ordering is monotone") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Rational x(static_cast<long>(rng() % 6001) - 3000, 1000);
    Rational y = x + Rational(static_cast<long>(rng() % 100), 1000);
    if (abs(y) > 3) continue;
    CHECK(exp_bounds(x, 3, 20, 40).lo() <= exp_bounds(y, 3, 20, 40).hi());
  }
}

TEST_CASE("ln_bounds") {
  Bound l1 = ln_bounds(Rational(1), pow10(-30));
  CHECK(l1.contains(Rational(0)));
  CHECK(l1.width().to_rational() <= pow10(-30));

  Bound l63 = ln_bounds(q("6.3"), pow10(-2));
  CHECK(l63.within(Rational(-2), Rational(2)));

  Bound l2 = ln_bounds(Rational(2), pow10(-30));
  CHECK(l2.width().to_rational() <= pow10(-30));
  auto [olo, ohi] = ln_oracle(Rational(2), 120);
  CHECK(ohi - olo < pow10(-35));
  CHECK(l2.lo().compare(ohi) <= 0);
  CHECK(l2.hi().compare(olo) >= 0);
  CHECK(l2.contains(q("0.6931471805599453094172321214581765680755")));

  CHECK_THROWS_AS(ln_bounds(Rational(0), pow10(-3)), InputError);
  CHECK_THROWS_AS(ln_bounds(Rational(-1), pow10(-3)), InputError);
  CHECK_THROWS_AS(ln_bounds(Rational(2), pow10(-50), 30), InputError);
}

TEST_CASE("ln_bounds of exp round trips") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 15; ++i) {
    Rational x(static_cast<long>(rng() % 4001) - 2000, 1000);
    Bound e = exp_bounds(x, 2, 20, 60);
    Bound l = ln_bounds(e.midpoint().to_rational(), pow10(-12), 60);
    // Some point of l lies within 1e-8 of x.
    CHECK(l.lo().compare(x + pow10(-8)) <= 0);
    CHECK(l.hi().compare(x - pow10(-8)) >= 0);
  }
}

TEST_CASE("sqrt_bounds") {
  Bound s4 = sqrt_bounds(Rational(4), pow10(-30));
  CHECK(s4.lo().compare(Rational(2)) == 0);
  CHECK(s4.hi().compare(Rational(2)) == 0);
  Bound s0 = sqrt_bounds(Rational(0), Rational(1));
  CHECK(s0.lo().is_zero());
  CHECK(s0.hi().is_zero());

  Bound s2 = sqrt_bounds(Rational(2), pow10(-32), 40);
  CHECK(s2.width().to_rational() <= pow10(-32));
  Rational l = s2.lo().to_rational(), h = s2.hi().to_rational();
  CHECK(l * l <= 2);
  CHECK(h * h >= 2);
  // Bisection oracle with exact squaring.
  Rational a(1), b(2);
  for (int i = 0; i < 130; ++i) {
    Rational m = (a + b) / 2;
    (m * m <= 2 ? a : b) = m;
  }
  CHECK(l <= b);
  CHECK(a <= h);
  CHECK(abs(l - q("1.4142135623730950488016887242096980785697")) < pow10(-38));

  // Target finer than the working precision escalates.
  Bound fine = sqrt_bounds(Rational(3), pow10(-60), 20);
  CHECK(fine.width().to_rational() <= pow10(-60));
  CHECK_THROWS_AS(sqrt_bounds(Rational(-1), Rational(1)), InputError);
}

TEST_CASE("hyperbolic enclosures match the printed table") {
  HypBounds h05 = hyp_bounds(q("0.5"));
  CHECK(h05.sinh.within(q("0.521"), q("0.522")));
  CHECK(h05.cosh.within(q("1.127"), q("1.128")));
  CHECK(h05.tanh.within(q("0.462"), q("0.463")));
  HypBounds h21 = hyp_bounds(q("2.1"));
  CHECK(h21.sinh.within(q("4.021"), q("4.022")));
  CHECK(h21.cosh.within(q("4.144"), q("4.145")));
  CHECK(h21.tanh.within(q("0.970"), q("0.971")));
  HypBounds h0 = hyp_bounds(Rational(0));
  CHECK(h0.sinh.contains(Rational(0)));
  CHECK(h0.cosh.contains(Rational(1)));
  CHECK(h0.tanh.contains(Rational(0)));
  CHECK_THROWS_AS(hyp_bounds(q("3.01")), InputError);
}

TEST_CASE("cosh^2 - sinh^2 contains 1") {
  for (int i = 0; i <= 99; ++i) {
    Rational x = Rational(-3) + Rational(6 * i, 99);
    HypBounds h = hyp_bounds(x, 40);
    CHECK((square(h.cosh) - square(h.sinh)).contains(Rational(1)));
  }
}

TEST_CASE("pi and arccos") {
  Scalar p = pi(60);
  CHECK(abs(p - Scalar::parse("3.14159265358979323846264338327950288419716939937510582097494", 60)).to_rational() <
        pow10(-58));
  CHECK(arccos_hp(Scalar(1L, 50)).is_zero());
  CHECK(abs(arccos_hp(Scalar(0L, 50)) - p.with_digits(50) / 2L).to_rational() < pow10(-48));
  CHECK(abs(arccos_hp(Scalar(-1L, 50)) - p.with_digits(50)).to_rational() < pow10(-48));

  // Oracle for arccos(1/2): bisect cos(t) = 1/2 on [1, 1.1] with the Taylor cosine.
  Scalar a = Scalar::parse("1", 60), b = Scalar::parse("1.1", 60);
  Scalar half = Scalar::parse("0.5", 60);
  for (int i = 0; i < 190; ++i) {
    Scalar m = (a + b) / 2L;
    (cos_taylor(m) > half ? a : b) = m;
  }
  Scalar got = arccos_hp(Scalar::parse("0.5", 60));
  CHECK(abs(got - a).to_rational() < pow10(-55));
  CHECK_THROWS_AS(arccos_hp(Scalar::parse("1.0001", 30)), InputError);
}

TEST_CASE("arccos_hp inverts cos on (0, pi)") {
  std::mt19937_64 rng(17);
  const int digits = 100;
  Scalar p = pi(digits);
  for (int i = 0; i < 100; ++i) {
    Rational frac(static_cast<long>(rng() % 999999) + 1, 1000000);
    Scalar theta = p * Scalar(frac, digits);
    Scalar c = cos_taylor(theta.with_digits(130)).with_digits(digits);
    Scalar back = arccos_hp(c);
    CHECK(abs(back - theta).to_rational() <= pow10(-30));
  }
}
