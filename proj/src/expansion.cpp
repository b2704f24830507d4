#include "origami/jacobian/expansion.hpp"

#include "origami/jacobian/defect.hpp"

namespace origami {

namespace {

void trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

Polynomial monic(Polynomial p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (Rational& c : p) {
    c /= lead;
    c.canonicalize();
  }
  return p;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<Polynomial, Polynomial> divmod(Polynomial a, Polynomial b) {
  trim(a);
  trim(b);
  if (b.empty()) throw std::invalid_argument("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Polynomial quot(a.size() - b.size() + 1);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / b.back();
    quot[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    a.pop_back();
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(a);
}

int sign_at(const Polynomial& p, const Rational& x) { return sgn(evaluate(p, x)); }

Rational exact_sqrt_lower(const Rational& x) {
  if (x <= 0) return Rational(0);
  Integer n = x.get_num(), d = x.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
  }
  return sqrt_bounds(x, pow10(-30), 60).lo().to_rational();
}

class Checks {
 public:
  Checks(std::vector<Check>& checks, std::vector<std::string>& failures) : checks_(checks), failures_(failures) {}
  void require(std::string name, std::string expression, const Rational& lhs, const Rational& rhs, bool strict) {
    Check c = make_check(std::move(name), std::move(expression), lhs, rhs, strict);
    if (!c.holds) failures_.push_back(c.name + ": " + c.expression);
    checks_.push_back(std::move(c));
  }
  void require(bool condition, const std::string& message) {
    if (!condition) failures_.push_back(message);
  }

 private:
  std::vector<Check>& checks_;
  std::vector<std::string>& failures_;
};

}  // namespace

Rational evaluate(const Polynomial& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  acc.canonicalize();
  return acc;
}

Polynomial characteristic_polynomial(const RationalMatrix& a) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) throw InputError("characteristic polynomial of a non-square matrix");
  }
  Polynomial c(n + 1);
  c[n] = 1;
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int k = 1; k <= n; ++k) {
    RationalMatrix am = multiply(a, m);
    for (int i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    RationalMatrix prod = multiply(a, m);
    Rational tr(0);
    for (int i = 0; i < n; ++i) tr += prod[i][i];
    c[n - k] = -tr / k;
    c[n - k].canonicalize();
  }
  return c;
}

Polynomial square_free_part(const Polynomial& p) {
  Polynomial g = gcd(p, derivative(p));
  return monic(divmod(p, g).first);
}

SingularValueBound singular_lower_bound(const RationalMatrix& m) {
  SingularValueBound out;
  const RationalMatrix a = multiply(transpose(m), m);
  out.char_poly = characteristic_polynomial(a);
  out.square_free = square_free_part(out.char_poly);
  const int roots = static_cast<int>(out.square_free.size()) - 1;

  // Eigenvalues of M^T M lie in [0, trace].
  Rational trace(0);
  for (std::size_t i = 0; i < a.size(); ++i) trace += a[i][i];
  const Rational pitch(1, 64);
  Integer steps;
  {
    Rational t = trace / pitch;
    mpz_cdiv_q(steps.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    steps += 1;
  }

  int prev_sign = 0;
  Rational prev_x(0);
  for (Integer k = 0; k <= steps; ++k) {
    Rational x = Rational(k) * pitch;
    x.canonicalize();
    const int s = sign_at(out.square_free, x);
    if (s == 0) {
      out.grid_brackets.push_back({x, x});
      prev_sign = 0;
      continue;
    }
    if (prev_sign != 0 && s != prev_sign) out.grid_brackets.push_back({prev_x, x});
    prev_sign = s;
    prev_x = x;
  }
  if (static_cast<int>(out.grid_brackets.size()) < roots) {
    throw RootIsolationError("root isolation incomplete: " + std::to_string(out.grid_brackets.size()) +
                             " brackets for " + std::to_string(roots) + " distinct roots");
  }

  const Rational target = pow10(-6);
  for (RootBracket b : out.grid_brackets) {
    if (b.lo != b.hi) {
      int s_lo = sign_at(out.square_free, b.lo);
      while (b.hi - b.lo >= target) {
        Rational mid = (b.lo + b.hi) / 2;
        mid.canonicalize();
        int s = sign_at(out.square_free, mid);
        if (s == 0) {
          b.lo = b.hi = mid;
          break;
        }
        if (s == s_lo) {
          b.lo = mid;
        } else {
          b.hi = mid;
        }
      }
    }
    out.brackets.push_back(b);
  }
  out.smallest_root_lower = out.brackets.front().lo;
  out.sigma_min = exact_sqrt_lower(out.smallest_root_lower);
  return out;
}

ExpansionCertificate certify_expansion(const RationalMatrix& m, const Rational& jacobian_deviation,
                                       const SecondOrderChain& chain, const ExpansionParameters& p) {
  ExpansionCertificate c;
  Checks L(c.checks, c.failures);
  c.e_inf = p.e_inf;
  c.lambda = p.lambda;
  c.radius = p.radius;
  c.jacobian_deviation = jacobian_deviation;
  c.second_order_cap = chain.cap;
  const int n = static_cast<int>(m.size());

  try {
    SingularValueBound sv = singular_lower_bound(m);
    c.sigma_min_bound = sv.sigma_min;
    c.smallest_root_lower = sv.smallest_root_lower;
  } catch (const RootIsolationError& e) {
    c.failures.push_back(e.what());
    return c;
  }

  L.require(chain.certified, "second-order chain is not certified");
  L.require("Jacobian agreement", "max |dTheta(z_hat) - M| < 0.001", jacobian_deviation, p.jacobian_tolerance, true);
  const Rational drift = Rational(n) * p.radius * chain.cap;
  L.require("second-order premise", "n * r * sup |d^2 Theta| <= 0.001", drift, p.jacobian_tolerance, false);
  L.require("second-order premise (computed chain)", "n * r * (chain total) < 0.001",
            Rational(n) * p.radius * chain.corrected_total, p.jacobian_tolerance, true);
  L.require("entrywise cap", "0.001 + 0.001 <= e_inf", 2 * p.jacobian_tolerance, p.e_inf, false);

  c.frobenius_cap = Rational(n) * Rational(n) * p.e_inf;
  c.frobenius_cap_sharp = Rational(n) * p.e_inf;
  const Rational gap = c.sigma_min_bound - c.frobenius_cap;
  L.require("expansion", "2 lambda < sigma_min - 10^2 e_inf", 2 * p.lambda, gap, true);
  if (gap > 0) {
    c.angle_sine_bound = 2 * c.frobenius_cap / gap;
    c.angle_sine_bound.canonicalize();
    L.require("angle", "(2F / (sigma_min - F))^2 < 3/4", c.angle_sine_bound * c.angle_sine_bound, Rational(3, 4),
              true);
  }
  if (c.sigma_min_bound > 0) {
    c.printed_sine_ratio = 2 * c.frobenius_cap / c.sigma_min_bound;
    c.printed_sine_ratio.canonicalize();
    L.require("angle (ratio to sigma_min)", "(2F / sigma_min)^2 < 3/4", c.printed_sine_ratio * c.printed_sine_ratio,
              Rational(3, 4), true);
  }
  c.certified = c.failures.empty();
  return c;
}

ExpansionRun run_expansion(const EmbeddedSurface& s, const RationalMatrix& m, int digits,
                           const ExpansionParameters& p) {
  ExpansionRun r;
  r.jacobian = dtheta_analytic(s, digits);
  const RationalMatrix mt = transpose(m);
  r.jacobian_deviation = max_deviation(r.jacobian, mt);
  r.zero_pattern = zero_pattern_matches(s.triangulation, r.jacobian) && zero_pattern_matches(s.triangulation, mt);
  r.crude = crude_bounds(s, p.radius);
  r.chain = second_partial_bound(r.crude);
  r.certificate = certify_expansion(m, r.jacobian_deviation, r.chain, p);
  return r;
}

ExistenceReport conclude_existence(const FlatnessCertificate& flat, const EmbeddingCertificate& embed,
                                   const ExpansionCertificate& expansion, const Rational& defect_norm_cap) {
  ExistenceReport r;
  Checks L(r.checks, r.failures);
  L.require(flat.certified, "flatness certificate is not valid");
  L.require(embed.certified, "embedding certificate is not valid");
  L.require(expansion.certified, "expansion certificate is not valid");

  r.defect_norm_cap = defect_norm_cap;
  const long n = static_cast<long>(flat.vertex_bounds.size());
  const Rational sq = Rational(n) * flat.epsilon * flat.epsilon;
  r.defect_norm_bound = sq > 0 ? sqrt_bounds(sq, pow10(-40), 60).hi().to_rational() : Rational(0);
  L.require("defect norm", "n * epsilon^2 < cap^2", sq, defect_norm_cap * defect_norm_cap, true);

  r.expansion_radius = expansion.lambda * expansion.radius;
  L.require("target inside the expanded ball", "cap <= lambda * r", defect_norm_cap, r.expansion_radius, false);
  if (expansion.lambda > 0) {
    r.solution_radius = defect_norm_cap / expansion.lambda;
    r.solution_radius.canonicalize();
  }
  L.require("solution radius", "cap / lambda <= lambda * r", r.solution_radius, r.expansion_radius, false);

  r.embedding_slack = embed.lambda;
  L.require("robustness", "lambda * r < embedding slack", r.expansion_radius, r.embedding_slack, true);

  r.established = r.failures.empty();
  if (r.established) {
    r.statement = "Theta has a zero z with |z - z_hat| <= " + Scalar(r.solution_radius, 40).to_string(6) +
                  " (inside the ball of radius " + Scalar(r.expansion_radius, 40).to_string(6) +
                  "); the surface with these z-coordinates is flat and embedded";
  }
  return r;
}

}  // namespace origami
