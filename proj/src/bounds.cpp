#include "origami/jacobian/bounds.hpp"

#include "origami/certify_flat.hpp"

#include <set>

namespace origami {

namespace {

Rational q(const char* s) { return parse_rational(s); }

Rational power(const Rational& x, int n) {
  Rational r(1);
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

class Ledger {
 public:
  explicit Ledger(std::vector<Check>& checks, std::vector<std::string>& failures)
      : checks_(checks), failures_(failures) {}

  bool require(std::string name, std::string expression, const Rational& lhs, const Rational& rhs,
               bool strict = false) {
    Check c = make_check(std::move(name), std::move(expression), lhs, rhs, strict);
    if (!c.holds) failures_.push_back(c.name + ": " + c.expression);
    checks_.push_back(c);
    return c.holds;
  }

  // lo <= x and x <= hi, as two checks.
  bool within(const std::string& name, const RationalRange& r, const Rational& lo, const Rational& hi) {
    bool a = require(name + " (lower)", format_rational(lo) + " <= " + format_rational(r.lo), lo, r.lo);
    bool b = require(name + " (upper)", format_rational(r.hi) + " <= " + format_rational(hi), r.hi, hi);
    return a && b;
  }

 private:
  std::vector<Check>& checks_;
  std::vector<std::string>& failures_;
};

void widen(RationalRange& r, const Rational& lo, const Rational& hi, bool& first) {
  if (first || lo < r.lo) r.lo = lo;
  if (first || hi > r.hi) r.hi = hi;
  first = false;
}

std::set<std::pair<int, int>> edge_set(const Triangulation& t) {
  std::set<std::pair<int, int>> e;
  for (const Face& f : t.faces) {
    for (int r = 0; r < 3; ++r) e.insert({std::min(f[r], f[(r + 1) % 3]), std::max(f[r], f[(r + 1) % 3])});
  }
  return e;
}

std::string edge_name(int i, int j) { return "edge {" + std::to_string(i) + "," + std::to_string(j) + "}"; }

}  // namespace

Check make_check(std::string name, std::string expression, const Rational& lhs, const Rational& rhs, bool strict) {
  Check c;
  c.name = std::move(name);
  c.expression = std::move(expression);
  c.lhs = lhs;
  c.rhs = rhs;
  c.strict = strict;
  c.holds = strict ? lhs < rhs : lhs <= rhs;
  return c;
}

CrudeBounds crude_bounds(const EmbeddedSurface& s, const Rational& ball_radius, int digits) {
  CrudeBounds cb;
  Ledger L(cb.checks, cb.failures);
  cb.ball_radius = ball_radius;
  const Rational r_hat = q("0.79");
  cb.outer_radius = q("0.8");
  const Rational width = pow10(-(digits - 10));

  // The candidate sits in the closed ball of radius 0.79, so the whole family sits in 0.8.
  Rational max_sq(0);
  for (const Point3& p : s.coords) max_sq = std::max(max_sq, Rational(dot(p, p)));
  L.require("candidate ball", "max |X|^2 <= 0.79^2", max_sq, r_hat * r_hat);
  L.require("perturbed ball", "0.79 + r <= 0.8", r_hat + ball_radius, cb.outer_radius);

  const auto edges = edge_set(s.triangulation);

  // Euclidean edge norms.
  bool first = true;
  for (auto [i, j] : edges) {
    Point3 v = s.coords[j] - s.coords[i];
    Bound n = sqrt_bounds(dot(v, v), width, digits);
    Rational lo = n.lo().to_rational(), hi = n.hi().to_rational();
    widen(cb.edge_norm, lo, hi, first);
    if (lo < q("0.509") || hi > q("1.561")) cb.failures.push_back(edge_name(i, j) + ": Euclidean norm outside [0.509, 1.561]");
  }
  L.within("Euclidean edge norms", cb.edge_norm, q("0.509"), q("1.561"));

  // Tangent norms over the ball: |V| <= |V|_X <= |V| / (1 - 0.8^2).
  const Rational a_min = 1 - cb.outer_radius * cb.outer_radius;
  const Rational factor = norm_comparison_factor(cb.outer_radius);
  L.require("comparison factor", "1/(1-0.8^2)^2 <= 8", factor, 8);
  cb.tangent_norm = {cb.edge_norm.lo - 2 * ball_radius, (cb.edge_norm.hi + 2 * ball_radius) / a_min};
  cb.tangent_norm.lo.canonicalize();
  cb.tangent_norm.hi.canonicalize();
  L.within("tangent norms", cb.tangent_norm, q("0.5"), 13);
  cb.tangent_cap = round_up_sig(cb.tangent_norm.hi, 3);

  // Distance formula pieces and the logarithm's domain.
  first = true;
  bool first_den = true;
  for (auto [i, j] : edges) {
    DistanceParts p = distance_parts(s.coords[i], s.coords[j], digits);
    widen(cb.numerator, p.numerator.lo().to_rational(), p.numerator.hi().to_rational(), first);
    widen(cb.denominator, p.denominator, p.denominator, first_den);
  }
  L.within("ln argument: sqrt(Delta) - b - 2c", cb.numerator, q("0.6"), q("6.3"));
  L.within("ln argument: 4c^2 + 4ac + 4bc", cb.denominator, q("0.6"), q("6.3"));
  Bound e1 = exp_bounds(Rational(1), 1, 20, digits);
  L.require("e lower bound", "2.7 <= e", q("2.7"), e1.lo().to_rational());
  L.require("e^-2 <= 0.6", "2^-2 <= 0.6", q("0.25"), q("0.6"));
  L.require("e^2 >= 6.3", "6.3 <= 7.2 <= 2.7^2", q("7.2"), q("2.7") * q("2.7"));
  L.require("e^2 >= 6.3 (chain)", "6.3 <= 7.2", q("6.3"), q("7.2"));
  {
    std::vector<std::string> unused;
    Ledger info(cb.informational, unused);
    info.within("printed range sqrt(Delta) - b - 2c", cb.numerator, q("1.93"), q("6.3"));
    info.within("printed range 4c^2 + 4ac + 4bc", cb.denominator, q("0.62"), q("1.99"));
  }

  // Hyperbolic edge lengths of the candidate, then over the ball.
  first = true;
  for (auto [i, j] : edges) {
    Bound d = distance(s.coords[i], s.coords[j], pow10(-30), digits);
    Rational lo = d.lo().to_rational(), hi = d.hi().to_rational();
    widen(cb.edge_length, lo, hi, first);
    if (lo < q("0.63") || hi > q("2.08")) cb.failures.push_back(edge_name(i, j) + ": length outside [0.63, 2.08]");
  }
  L.within("edge lengths", cb.edge_length, q("0.63"), q("2.08"));
  cb.length_slack = 2 * 8 * ball_radius;
  L.require("length slack", "2 * 8 * r <= 1.6e-17", cb.length_slack, q("1.6e-17"));
  L.within("padded edge lengths", {q("0.63") - cb.length_slack, q("2.08") + cb.length_slack}, q("0.6"), q("2.1"));

  // Hyperbolic functions at 0.5 and 2.1 and the law-of-cosines Lipschitz constant.
  HypBounds h05 = hyp_bounds(q("0.5"), digits);
  HypBounds h21 = hyp_bounds(q("2.1"), digits);
  auto range_of = [](const Bound& b) { return RationalRange{b.lo().to_rational(), b.hi().to_rational()}; };
  L.within("sinh 0.5", range_of(h05.sinh), q("0.521"), q("0.522"));
  L.within("cosh 0.5", range_of(h05.cosh), q("1.127"), q("1.128"));
  L.within("tanh 0.5", range_of(h05.tanh), q("0.462"), q("0.463"));
  L.within("sinh 2.1", range_of(h21.sinh), q("4.021"), q("4.022"));
  L.within("cosh 2.1", range_of(h21.cosh), q("4.144"), q("4.145"));
  L.within("tanh 2.1", range_of(h21.tanh), q("0.970"), q("0.971"));
  L.require("|dpsi/dc|", "sinh 2.1 / sinh^2 0.5 <= 4.022/0.521^2 <= 15", q("4.022") / (q("0.521") * q("0.521")), 15);
  L.require("|dpsi/da|", "(cosh 2.1 + 1)/(tanh 0.5 sinh^2 0.5) <= 5.145/(0.462*0.521^2) <= 42",
            q("5.145") / (q("0.462") * q("0.521") * q("0.521")), 42);
  L.require("psi Lipschitz", "42^2 + 42^2 + 15^2 <= 70^2", Rational(42 * 42 + 42 * 42 + 15 * 15), Rational(70 * 70));
  cb.psi_lipschitz = 70;

  // Face-angle cosines of the candidate.
  first = true;
  for (const Face& f : s.triangulation.faces) {
    for (int r = 0; r < 3; ++r) {
      const int i = f[r], j = f[(r + 1) % 3], k = f[(r + 2) % 3];
      Cos2Sign cs = cos2_and_sign(s.coords[i], s.coords[j], s.coords[k]);
      Bound root = sqrt_bounds(cs.A, width, digits);
      Rational lo = root.lo().to_rational(), hi = root.hi().to_rational();
      if (cs.sigma < 0) {
        std::swap(lo, hi);
        lo = -lo;
        hi = -hi;
      } else if (cs.sigma == 0) {
        lo = hi = 0;
      }
      widen(cb.cosine, lo, hi, first);
      if (lo < q("-0.008") || hi > q("0.96")) {
        cb.failures.push_back("angle at " + std::to_string(i) + " in face (" + std::to_string(i) + "," +
                              std::to_string(j) + "," + std::to_string(k) + "): cosine outside [-0.008, 0.96]");
      }
    }
  }
  L.within("cosines", cb.cosine, q("-0.008"), q("0.96"));

  // Perturbation of cosines and the sine floor.
  const Rational side_slack =
      round_up_sig(sqrt_bounds(3 * cb.length_slack * cb.length_slack, width * cb.length_slack, digits).hi().to_rational(), 2);
  L.require("side vector slack", "3 * (1.6e-17)^2 <= (2.8e-17)^2", 3 * cb.length_slack * cb.length_slack,
            side_slack * side_slack);
  cb.cosine_slack = round_up_sig(cb.psi_lipschitz * side_slack, 1);
  L.require("cosine slack", "70 * 2.8e-17 <= 2e-15", cb.psi_lipschitz * side_slack, q("2e-15"));
  L.within("padded cosines", {q("-0.008") - cb.cosine_slack, q("0.96") + cb.cosine_slack}, q("-0.01"), q("0.961"));
  cb.sine_floor = q("0.24");
  L.require("sine floor", "0.24^2 <= 1 - 0.961^2", cb.sine_floor * cb.sine_floor, 1 - q("0.961") * q("0.961"));

  cb.certified = cb.failures.empty();
  return cb;
}

SecondOrderChain second_partial_bound(const CrudeBounds& crude) {
  SecondOrderChain ch;
  Ledger L(ch.checks, ch.failures);
  if (!crude.certified) ch.failures.push_back("crude bounds are not certified");

  const Rational R = crude.outer_radius;         // |X_i|, |z_i| <= 0.8
  const Rational E = 2 * R;                      // |V|, |W| <= 1.6
  const Rational A = 1 - R * R;                  // a_X >= 0.36
  const Rational vmin = q("0.5"), vmax = 13, s = q("0.24");
  const Rational e3 = pow10(3), e4 = pow10(4), e6 = pow10(6), e7 = pow10(7), e10 = pow10(10);
  ch.cap = pow10(14);

  L.require("a_X floor", "1 - 0.8^2 >= 0.36", q("0.36"), A);
  L.require("tangent norm floor", "0.5 <= min |V|_X", vmin, crude.tangent_norm.lo);
  L.require("tangent norm cap", "max |V|_X <= 13", crude.tangent_norm.hi, vmax);
  L.require("sine floor", "0.24 <= |sin theta|", s, crude.sine_floor);
  L.require("inverse norm", "(2 * 0.5)^-1 <= 1", 1 / (2 * vmin), 1);

  // First-order partials.
  const Rational dui = 4 * R / A + 8 * R * E * E / (A * A) + 4 * R * power(E, 4) / power(A, 3);
  L.require("|d_i u|", "4*0.8/(1-0.8^2) + 8*0.8*1.6^2/0.36^2 + 4*0.8*1.6^4/0.36^3 <= 10^3", dui, e3);
  L.require("|d_j u|", "2*0.8/0.36 + 0.8*1.6^2/0.36^2 <= 10^3", 2 * R / A + R * E * E / (A * A), e3);
  L.require("|d_i v|", "4*0.8/0.36 + 8*0.8*1.6^2/0.36^2 + 4*0.8*1.6^4/0.36^3 <= 10^3", dui, e3);
  L.require("|d_j v|", "4*0.8/0.36 + 2*0.8*1.6^2/0.36^2 <= 10^3", 4 * R / A + 2 * R * E * E / (A * A), e3);
  const Rational dtheta_printed = (2 * E * e3 + e3) / (vmin * vmin * q("0.34"));
  L.require("|d_l theta| (printed)", "(2*1.6*10^3 + 10^3)/(0.5^2*0.34) <= 3.2*10^6", dtheta_printed, q("3.2e6"));
  L.require("|d_l theta| (printed cap)", "3.2*10^6 <= 10^7", q("3.2e6"), e7);
  const Rational vc = crude.tangent_cap;
  L.require("tangent cap", "tightened |V|_X cap <= 13", vc, vmax);
  const Rational dtheta_fixed = (2 * vc * e3 + e3) / (vmin * vmin * s);
  L.require("|d_l theta|", "(2*vmax*10^3 + 10^3)/(0.5^2*0.24) <= 10^7", dtheta_fixed, e7);

  // Second-order partials of u and v.
  const Rational R2 = R * R, E2 = E * E, E4 = power(E, 4);
  const Rational duii = 2 / A + (6 * E2 + 34 * R2) / (A * A) + (4 * E4 + 56 * E2 * R2) / power(A, 3) +
                        24 * E4 * R2 / power(A, 4);
  L.require("|d_lm u|", "2/0.36 + (6*1.6^2 + 34*0.8^2)/0.36^2 + (4*1.6^4 + 56*1.6^2*0.8^2)/0.36^3 + 24*1.6^4*0.8^2/0.36^4 <= 10^4",
            duii, e4);
  const Rational dvii = 1 / (A * vmin) + (3 * E2 + 17 * R2) / (A * A * vmin) +
                        (24 * E2 * R2 + 2 * E4) / (power(A, 3) * vmin) + 12 * E4 * R2 / (power(A, 4) * vmin) +
                        e6 / vmin;
  L.require("|d_lm v|", "1/(0.36*0.5) + (3*1.6^2 + 17*0.8^2)/(0.36^2*0.5) + (24*1.6^2*0.8^2 + 2*1.6^4)/(0.36^3*0.5) + 12*1.6^4*0.8^2/(0.36^4*0.5) + 10^6/0.5 <= 10^7",
            dvii, e7);

  // Second-order partials of theta: the displayed total, then the corrected one.
  const Rational s3 = power(s, 3);
  ch.printed_total = (2 * e6 + 2 * vmax * e7 + 2 * vmax * e10 + e4) / (vmin * vmin * s) +
                     (2 * vmax * e3 + e3) * (4 * vmax * e3 + 2 * vmax * vmax * e3) / (2 * power(vmin, 6) * s3);
  L.require("|d_lm theta| (printed)", "(2*10^6 + 2*13*10^7 + 2*13*10^10 + 10^4)/(0.5^2*0.24) + (2*13*10^3 + 10^3)(4*13*10^3 + 2*13^2*10^3)/(2*0.5^6*0.24^3) < 10^14",
            ch.printed_total, ch.cap, true);

  // |d(vw)| <= 2 vmax 10^3, |d_lm(vw)| <= 2 vmax 10^7 + 2 10^6, |u| <= vmax^2,
  // |d(v^2 w^2 - u^2)| <= 2 vmax^2 |d(vw)| + 2 vmax^2 |du|.
  const Rational dvw = 2 * vc * e3;
  const Rational ddvw = 2 * vc * e7 + 2 * e6;
  const Rational dgram = 2 * vc * vc * dvw + 2 * vc * vc * e3;
  ch.corrected_total = (ddvw + dvw * e7 + e4) / (vmin * vmin * s) + (dvw + e3) * dgram / (2 * power(vmin, 6) * s3);
  ch.corrected_total.canonicalize();
  L.require("|d_lm theta|", "(2 vmax 10^7 + 2 10^6 + 2 vmax 10^3 10^7 + 10^4)/(0.5^2 0.24) + (2 vmax 10^3 + 10^3)(4 vmax^3 10^3 + 2 vmax^2 10^3)/(2 0.5^6 0.24^3) < 10^14",
            ch.corrected_total, ch.cap, true);

  ch.certified = ch.failures.empty();
  return ch;
}

}  // namespace origami
