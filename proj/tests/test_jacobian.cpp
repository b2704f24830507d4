#include "doctest.h"
#include "fixtures.hpp"
#include "origami/jacobian/bounds.hpp"
#include "origami/jacobian/defect.hpp"
#include "origami/jacobian/expansion.hpp"

#include <random>

using namespace origami;

namespace {

Rational q(const char* s) { return parse_rational(s); }

const ScalarMatrix& jacobian60() {
  static const ScalarMatrix j = dtheta_analytic(fixtures::candidate(), 60);
  return j;
}

const CrudeBounds& crude() {
  static const CrudeBounds c = crude_bounds(fixtures::candidate());
  return c;
}

// Angle at xi computed directly with MPFR, for differentiation by the test.
Scalar mpfr_angle(const ScalarPoint& xi, const ScalarPoint& xj, const ScalarPoint& xk) {
  ScalarPoint V = xj - xi, W = xk - xi;
  Scalar a = Scalar(1L, xi.x.digits()) - dot(xi, xi);
  auto g = [&](const ScalarPoint& p, const ScalarPoint& r) { return (a * dot(p, r) + dot(xi, p) * dot(xi, r)) / (a * a); };
  Scalar c = g(V, W) / sqrt(g(V, V) * g(W, W));
  Scalar out(xi.x.digits());
  mpfr_acos(out.get(), c.get(), MPFR_RNDN);
  return out;
}

// det(A) by fraction-free elimination with exact rationals.
Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Smallest eigenvalue of symmetric A by scanning det(A - x I) and bisecting at 100 digits.
Rational smallest_eigenvalue_oracle(const RationalMatrix& a) {
  auto f = [&](const Rational& x) {
    RationalMatrix b = a;
    for (std::size_t i = 0; i < b.size(); ++i) b[i][i] -= x;
    return sgn(determinant(b));
  };
  Rational lo(0), step(1, 256);
  int s0 = f(lo);
  if (s0 == 0) return lo;
  Rational hi = lo + step;
  while (f(hi) == s0) {
    lo = hi;
    hi += step;
  }
  if (f(hi) == 0) return hi;
  for (int k = 0; k < 330; ++k) {
    Rational mid = (lo + hi) / 2;
    if (f(mid) == s0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

RationalMatrix diagonal(const std::vector<Rational>& d) {
  RationalMatrix m(d.size(), std::vector<Rational>(d.size(), Rational(0)));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

}  // namespace

TEST_CASE("defect map of the candidate") {
  DefectVector d = theta_map(fixtures::candidate(), 100);
  CHECK(defect_norm(d).compare(pow10(-27)) < 0);
  REQUIRE(d.theta.size() == 10);
  Scalar two_pi = pi(100) * 2L;
  for (int i = 0; i < 10; ++i) {
    CHECK(d.theta[i] + two_pi == cone_angle(fixtures::candidate(), i, 100));
    CHECK(abs(d.z[i].to_rational() - fixtures::candidate().coords[i].z) < pow10(-95));
  }
  // The floating-point route agrees.
  DefectVector f = theta_map(fixtures::candidate().triangulation, to_scalar(fixtures::candidate().coords, 100));
  for (int i = 0; i < 10; ++i) CHECK(abs(f.theta[i] - d.theta[i]).compare(pow10(-90)) < 0);
}

TEST_CASE("defect map is equivariant under relabeling") {
  const EmbeddedSurface& s = fixtures::candidate();
  std::vector<int> perm = {3, 7, 0, 9, 1, 4, 8, 2, 6, 5};
  EmbeddedSurface r = s;
  for (int i = 0; i < 10; ++i) r.coords[perm[i]] = s.coords[i];
  for (Face& f : r.triangulation.faces) {
    for (int& v : f) v = perm[v];
  }
  auto a = theta_map(s.triangulation, to_scalar(s.coords, 50));
  auto b = theta_map(r.triangulation, to_scalar(r.coords, 50));
  for (int i = 0; i < 10; ++i) CHECK(abs(a.theta[i] - b.theta[perm[i]]).compare(pow10(-45)) < 0);
}

TEST_CASE("angle partials match differentiation of an independent angle routine") {
  const EmbeddedSurface& s = fixtures::candidate();
  const int d = 80;
  auto pts = to_scalar(s.coords, d);
  const Scalar h(pow10(-25), d);
  for (int fi = 0; fi < 24; fi += 5) {
    const Face& f = s.triangulation.faces[fi];
    AnglePartials p = angle_partials(pts[f[0]], pts[f[1]], pts[f[2]]);
    for (int l = 0; l < 3; ++l) {
      auto plus = pts, minus = pts;
      plus[f[l]].z += h;
      minus[f[l]].z -= h;
      Scalar fd = (mpfr_angle(plus[f[0]], plus[f[1]], plus[f[2]]) - mpfr_angle(minus[f[0]], minus[f[1]], minus[f[2]])) /
                  (h * 2L);
      CHECK(abs(fd - p.dtheta[l]).compare(pow10(-40)) < 0);
    }
    CHECK(p.dv[2].is_zero());
    CHECK(p.dw[1].is_zero());
  }
}

TEST_CASE("degenerate face angles are rejected") {
  ScalarPoint a = to_scalar(Point3{0, 0, 0}, 40);
  ScalarPoint b = to_scalar(Point3{q("0.1"), 0, 0}, 40);
  ScalarPoint c = to_scalar(Point3{q("0.2"), q("1e-9"), 0}, 40);
  CHECK_THROWS_AS(angle_partials(a, b, c), DegenerateGeometry);
}

TEST_CASE("analytic Jacobian agrees with the printed matrix") {
  const ScalarMatrix& j = jacobian60();
  RationalMatrix m = builtin_expansion_matrix();
  RationalMatrix mt = transpose(m);
  Rational dev = max_deviation(j, mt);
  CHECK(dev < q("0.001"));
  CHECK(max_deviation(j, m) > q("0.1"));
  CHECK(abs(j[0][0].to_rational() - q("-7.526")) < q("0.001"));
  CHECK(abs(j[9][9].to_rational() - q("-11.599")) < q("0.001"));
  CHECK(j[1][9].is_zero());
  CHECK(j[9][1].is_zero());
  CHECK(zero_pattern_matches(fixtures::candidate().triangulation, j));
  CHECK(zero_pattern_matches(fixtures::candidate().triangulation, m));
  CHECK_FALSE(zero_pattern_matches(fixtures::tetrahedron(), m));
}

TEST_CASE("finite differences confirm the analytic Jacobian to second order") {
  const EmbeddedSurface& s = fixtures::candidate();
  ScalarMatrix a = dtheta_analytic(s, 100);
  ScalarMatrix f1 = dtheta_fd(s, pow10(-20), 100);
  ScalarMatrix f2 = dtheta_fd(s, pow10(-20) / 2, 100);
  Rational d1 = max_deviation(f1, a);
  Rational d2 = max_deviation(f2, a);
  CHECK(d1 <= pow10(-25));
  REQUIRE(d2 > 0);
  Rational ratio = d1 / d2;
  CHECK(ratio > q("3.5"));
  CHECK(ratio < q("4.5"));
  CHECK_THROWS_AS(dtheta_fd(s, Rational(0), 40), InputError);
}

TEST_CASE("second partials at the candidate are far below the cap") {
  const EmbeddedSurface& s = fixtures::candidate();
  auto pts = to_scalar(s.coords, 60);
  const Scalar h(pow10(-15), 60);
  Rational worst(0);
  for (int k = 0; k < 10; ++k) {
    auto plus = pts, minus = pts;
    plus[k].z += h;
    minus[k].z -= h;
    ScalarMatrix jp = dtheta_analytic(s.triangulation, plus);
    ScalarMatrix jm = dtheta_analytic(s.triangulation, minus);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) worst = std::max(worst, Rational(abs(((jp[i][j] - jm[i][j]) / (h * 2L)).to_rational())));
    }
  }
  CHECK(worst < 1000);
  CHECK(worst > 0);
}

TEST_CASE("crude bounds for the candidate") {
  const CrudeBounds& c = crude();
  CHECK(c.certified);
  for (const auto& f : c.failures) MESSAGE(f);
  CHECK(c.edge_norm.lo >= q("0.509"));
  CHECK(c.edge_norm.hi <= q("1.561"));
  CHECK(c.tangent_norm.lo >= q("0.5"));
  CHECK(c.tangent_norm.hi <= 13);
  CHECK(c.tangent_cap == q("4.31"));
  CHECK(c.numerator.lo >= q("1.93"));
  CHECK(c.numerator.hi <= q("6.3"));
  CHECK(c.denominator.lo >= q("0.62"));
  CHECK(c.denominator.hi > q("1.99"));  // printed range is slightly too narrow
  CHECK(c.denominator.hi < q("1.9903"));
  CHECK(c.edge_length.lo >= q("0.63"));
  CHECK(c.edge_length.hi <= q("2.08"));
  CHECK(c.length_slack == q("1.6e-17"));
  CHECK(c.cosine.lo >= q("-0.008"));
  CHECK(c.cosine.hi <= q("0.96"));
  CHECK(c.cosine_slack == q("2e-15"));
  CHECK(c.sine_floor == q("0.24"));
  CHECK(c.psi_lipschitz == 70);
  for (const Check& k : c.checks) CHECK_MESSAGE(k.holds, k.name);

  bool denominator_flagged = false;
  for (const Check& k : c.informational) {
    if (!k.holds) denominator_flagged = denominator_flagged || k.name.find("4c^2") != std::string::npos;
  }
  CHECK(denominator_flagged);
}

TEST_CASE("cosine range is consistent with the squared cosines") {
  const CrudeBounds& c = crude();
  for (const LinkValues& lv : alpha_values(fixtures::candidate())) {
    for (std::size_t k = 0; k < lv.values.size(); ++k) {
      if (lv.signs[k] > 0) CHECK(lv.values[k] <= c.cosine.hi * c.cosine.hi);
      if (lv.signs[k] < 0) CHECK(lv.values[k] <= c.cosine.lo * c.cosine.lo);
    }
  }
}

TEST_CASE("crude bounds name what fails") {
  EmbeddedSurface s = fixtures::candidate();
  s.coords[0] = Rational(11, 10) * s.coords[0];
  CrudeBounds c = crude_bounds(s);
  CHECK_FALSE(c.certified);
  bool named = false;
  for (const auto& f : c.failures) named = named || f.find("candidate ball") != std::string::npos;
  CHECK(named);
}

TEST_CASE("second-order constant chain") {
  SecondOrderChain ch = second_partial_bound(crude());
  CHECK(ch.certified);
  CHECK(ch.cap == pow10(14));
  CHECK(ch.printed_total < pow10(14));
  CHECK(ch.corrected_total < pow10(14));
  CHECK(ch.corrected_total > q("9e12"));
  CHECK(ch.corrected_total < q("1.1e13"));

  const char* expected[] = {"a_X floor",        "tangent norm floor",   "tangent norm cap",
                            "sine floor",       "inverse norm",         "|d_i u|",
                            "|d_j u|",          "|d_i v|",              "|d_j v|",
                            "|d_l theta| (printed)", "|d_l theta| (printed cap)", "tangent cap",
                            "|d_l theta|",      "|d_lm u|",             "|d_lm v|",
                            "|d_lm theta| (printed)", "|d_lm theta|"};
  REQUIRE(ch.checks.size() == std::size(expected));
  for (std::size_t k = 0; k < ch.checks.size(); ++k) {
    CHECK(ch.checks[k].name == expected[k]);
    CHECK_MESSAGE(ch.checks[k].holds, ch.checks[k].name);
  }
  // 3.2e6 bound on the first-order angle partial as displayed.
  CHECK(ch.checks[9].lhs <= q("3.2e6"));
  // The a_X floor appears as 0.36.
  CHECK(ch.checks[0].lhs == q("0.36"));

  // Same chain with the loose tangent cap 13 would not fit under 10^14.
  const Rational v = 13, s = q("0.24"), h = q("0.5");
  const Rational dvw = 2 * v * 1000;
  const Rational loose = (2 * v * pow10(7) + 2 * pow10(6) + dvw * pow10(7) + pow10(4)) / (h * h * s) +
                         (dvw + 1000) * (2 * v * v * dvw + 2 * v * v * 1000) / (2 * h * h * h * h * h * h * s * s * s);
  CHECK(loose > pow10(14));

  CrudeBounds broken = crude();
  broken.certified = false;
  CHECK_FALSE(second_partial_bound(broken).certified);
}

TEST_CASE("characteristic polynomial") {
  RationalMatrix a = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  Polynomial p = characteristic_polynomial(a);
  REQUIRE(p.size() == 4);
  CHECK(p[3] == 1);
  for (int x = -3; x <= 6; ++x) {
    RationalMatrix b = a;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) b[i][j] = (i == j ? Rational(x) : Rational(0)) - a[i][j];
    }
    CHECK(evaluate(p, x) == determinant(b));
  }
  Polynomial cube = {-1, 3, -3, 1};  // (x - 1)^3
  CHECK(square_free_part(cube) == Polynomial{-1, 1});
}

TEST_CASE("singular value lower bounds") {
  CHECK(singular_lower_bound(identity_matrix(10)).sigma_min == 1);
  std::vector<Rational> d;
  for (int k = 2; k <= 11; ++k) d.push_back(k);
  CHECK(singular_lower_bound(diagonal(d)).sigma_min == 2);
  CHECK_THROWS_AS(singular_lower_bound(diagonal({Rational(1), q("1.001")})), RootIsolationError);

  SingularValueBound sv = singular_lower_bound(builtin_expansion_matrix());
  CHECK(sv.brackets.size() == 10);
  CHECK(sv.grid_brackets.front().lo == Rational(73, 32));  // 146/64
  CHECK(sv.grid_brackets.front().lo > q("2.25"));
  CHECK(sv.smallest_root_lower > q("2.25"));
  CHECK(sv.sigma_min > q("1.5"));
  for (const RootBracket& b : sv.brackets) {
    CHECK(b.hi - b.lo < pow10(-6));
    if (b.lo != b.hi) CHECK(sgn(evaluate(sv.square_free, b.lo)) * sgn(evaluate(sv.square_free, b.hi)) < 0);
  }
  Rational oracle = smallest_eigenvalue_oracle(multiply(transpose(builtin_expansion_matrix()), builtin_expansion_matrix()));
  CHECK(sv.smallest_root_lower <= oracle);
  CHECK(oracle - sv.smallest_root_lower < pow10(-6));
}

TEST_CASE("singular bound never exceeds the true smallest singular value") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 4;
    RationalMatrix m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational e(static_cast<long>(rng() % 41) - 20, 40);
        e.canonicalize();
        m[i][j] = (i == j ? Rational(2 * i + 1) : Rational(0)) + e;
      }
    }
    SingularValueBound sv = singular_lower_bound(m);
    Rational oracle = smallest_eigenvalue_oracle(multiply(transpose(m), m));
    CHECK(sv.sigma_min * sv.sigma_min <= oracle);
    CHECK(oracle - sv.smallest_root_lower < pow10(-6));
  }
}

TEST_CASE("expansion certificate") {
  RationalMatrix m = builtin_expansion_matrix();
  Rational dev = max_deviation(jacobian60(), transpose(m));
  SecondOrderChain ch = second_partial_bound(crude());
  ExpansionCertificate c = certify_expansion(m, dev, ch);
  for (const auto& f : c.failures) MESSAGE(f);
  CHECK(c.certified);
  CHECK(c.frobenius_cap == q("0.2"));
  CHECK(c.frobenius_cap_sharp == q("0.02"));
  CHECK(c.sigma_min_bound - c.frobenius_cap > 1);
  CHECK(c.angle_sine_bound * c.angle_sine_bound < Rational(3, 4));
  CHECK(c.printed_sine_ratio < q("0.4") / q("1.5"));

  ExpansionParameters strong;
  strong.lambda = 1;
  CHECK_FALSE(certify_expansion(m, dev, ch, strong).certified);

  ExpansionParameters wide;
  wide.radius = 1;
  ExpansionCertificate w = certify_expansion(m, dev, ch, wide);
  CHECK_FALSE(w.certified);
  bool premise = false;
  for (const auto& f : w.failures) premise = premise || f.find("second-order premise") != std::string::npos;
  CHECK(premise);

  CHECK_FALSE(certify_expansion(m, q("0.0011"), ch).certified);
}

TEST_CASE("existence chain") {
  FlatnessCertificate flat = certify_flatness(fixtures::candidate(), fixtures::links());
  EmbedParameters ep;
  ep.limits.extended = 1000000;
  EmbeddingCertificate embed = certify_embeddedness(fixtures::candidate(), ep);
  RationalMatrix m = builtin_expansion_matrix();
  ExpansionCertificate exp =
      certify_expansion(m, max_deviation(jacobian60(), transpose(m)), second_partial_bound(crude()));
  ExistenceReport r = conclude_existence(flat, embed, exp);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.established);
  CHECK(r.solution_radius == q("2e-27"));
  CHECK(r.expansion_radius == q("5e-19"));
  CHECK(r.embedding_slack == q("1e-7"));
  CHECK(r.defect_norm_bound < pow10(-27));
  CHECK_FALSE(r.statement.empty());

  CHECK_FALSE(conclude_existence(flat, embed, exp, pow10(-6)).established);

  EmbedParameters strict;
  EmbeddingCertificate partial = certify_embeddedness(fixtures::candidate(), strict);
  CHECK_FALSE(conclude_existence(flat, partial, exp).established);
}
