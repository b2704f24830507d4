#include "origami/certify_flat.hpp"

#include <algorithm>
#include <cmath>

namespace origami {

namespace {

LinkValues alpha_along(const EmbeddedSurface& s, int i, const std::vector<int>& order) {
  LinkValues lv;
  lv.vertex = i;
  lv.neighbors = order;
  for (std::size_t j = 0; j < order.size(); ++j) {
    Cos2Sign cs = cos2_and_sign(s.coords[i], s.coords[order[j]], s.coords[order[(j + 1) % order.size()]]);
    lv.values.push_back(cs.A);
    lv.signs.push_back(cs.sigma);
  }
  return lv;
}

Integer det2(const std::array<Integer, 2>& p, const std::array<Integer, 2>& q) {
  return p[0] * q[1] - p[1] * q[0];
}

Integer dot2(const std::array<Integer, 2>& p, const std::array<Integer, 2>& q) {
  return p[0] * q[0] + p[1] * q[1];
}

// Order of magnitude e with 10^e <= x < 10^(e+1), for x > 0.
int decimal_exponent(const Rational& x) {
  int e = static_cast<int>(mpz_sizeinbase(x.get_num_mpz_t(), 10)) -
          static_cast<int>(mpz_sizeinbase(x.get_den_mpz_t(), 10));
  while (pow10(e) > x) --e;
  while (pow10(e + 1) <= x) ++e;
  return e;
}

}  // namespace

std::vector<LinkValues> alpha_values(const EmbeddedSurface& s) {
  std::vector<LinkValues> out;
  auto links = all_links(s.triangulation);
  for (int i = 0; i < s.size(); ++i) out.push_back(alpha_along(s, i, links[i]));
  return out;
}

std::vector<LinkValues> alpha_values(const EmbeddedSurface& s, const LinkReference& ref) {
  std::vector<LinkValues> out;
  for (const LinkTable& t : ref.links) out.push_back(alpha_along(s, t.vertex, t.neighbors));
  return out;
}

std::vector<LinkValues> beta_values(const LinkReference& ref) {
  std::vector<LinkValues> out;
  for (const LinkTable& t : ref.links) {
    LinkValues lv;
    lv.vertex = t.vertex;
    lv.neighbors = t.neighbors;
    const std::size_t d = t.vectors.size();
    for (std::size_t j = 0; j < d; ++j) {
      const auto& p = t.vectors[j];
      const auto& q = t.vectors[(j + 1) % d];
      Integer pp = dot2(p, p), qq = dot2(q, q), pq = dot2(p, q);
      if (pp == 0 || qq == 0) {
        throw InputError("beta_values: zero reference vector at vertex " + std::to_string(t.vertex));
      }
      Rational b(pq * pq, pp * qq);
      b.canonicalize();
      lv.values.push_back(b);
      lv.signs.push_back(sgn(pq));
    }
    out.push_back(std::move(lv));
  }
  return out;
}

int winding_number(const std::vector<std::array<Integer, 2>>& v) {
  const std::size_t d = v.size();
  if (d < 3) return 0;
  int crossings = 0;
  for (std::size_t j = 0; j < d; ++j) {
    const auto& p = v[j];
    const auto& q = v[(j + 1) % d];
    if (det2(p, q) <= 0) return 0;
    // A counterclockwise step of less than pi crosses the positive x-axis
    // exactly when it moves from the lower half-plane into the closed upper one.
    if (p[1] < 0 && q[1] >= 0) ++crossings;
  }
  return crossings;
}

Rational lipschitz_on_range(const Rational& lo, const Rational& hi) {
  if (lo <= 0 || hi >= 1 || lo > hi) throw InputError("lipschitz_on_range: need 0 < lo <= hi < 1");
  Rational m = std::min(Rational(lo * (1 - lo)), Rational(hi * (1 - hi)));
  // K >= 1/(2 sqrt(m)); start from a floating estimate and fix up exactly.
  Integer k = static_cast<long>(std::max(1.0, 0.5 / std::sqrt(m.get_d())) - 1);
  if (k < 1) k = 1;
  while (4 * k * k * m < 1) ++k;
  while (k > 1 && 4 * (k - 1) * (k - 1) * m >= 1) --k;
  return Rational(k);
}

Rational round_down_sig(const Rational& x, int sig) {
  if (x <= 0) throw InputError("round_down_sig: positive argument required");
  int e = decimal_exponent(x);
  Rational unit = pow10(e - sig + 1);
  Rational scaled = x / unit;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Rational(f) * unit;
}

Rational round_up_sig(const Rational& x, int sig) {
  if (x <= 0) throw InputError("round_up_sig: positive argument required");
  int e = decimal_exponent(x);
  Rational unit = pow10(e - sig + 1);
  Rational scaled = x / unit;
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Rational(c) * unit;
}

FlatnessCertificate certify_flatness(const EmbeddedSurface& s, const LinkReference& ref) {
  FlatnessCertificate cert;
  check_in_ball(s);
  auto links = all_links(s.triangulation);
  if (static_cast<int>(ref.links.size()) != s.size()) {
    cert.failures.push_back("reference has " + std::to_string(ref.links.size()) + " links for " +
                            std::to_string(s.size()) + " vertices");
    return cert;
  }
  for (int i = 0; i < s.size(); ++i) {
    const LinkTable& t = ref.links[i];
    if (t.vertex != i || !same_cycle(links[i], t.neighbors) || t.vectors.size() != t.neighbors.size()) {
      cert.failures.push_back("reference link of vertex " + std::to_string(i) + " does not match the triangulation");
    }
  }
  if (!cert.failures.empty()) return cert;

  cert.windings_ok = true;
  for (const LinkTable& t : ref.links) {
    int w = winding_number(t.vectors);
    if (w != 1) {
      cert.windings_ok = false;
      cert.failures.push_back("reference link of vertex " + std::to_string(t.vertex) + " has winding number " +
                              std::to_string(w));
    }
  }

  std::vector<LinkValues> alpha = alpha_values(s, ref);
  std::vector<LinkValues> beta = beta_values(ref);
  cert.sign_agreements = true;
  bool first = true;
  for (int i = 0; i < s.size(); ++i) {
    const std::size_t d = alpha[i].values.size();
    cert.max_degree = std::max(cert.max_degree, static_cast<int>(d));
    for (std::size_t j = 0; j < d; ++j) {
      const Rational& a = alpha[i].values[j];
      const Rational& b = beta[i].values[j];
      if (alpha[i].signs[j] != beta[i].signs[j]) {
        cert.sign_agreements = false;
        cert.failures.push_back("sign disagreement at vertex " + std::to_string(i) + " between neighbors " +
                                std::to_string(alpha[i].neighbors[j]) + " and " +
                                std::to_string(alpha[i].neighbors[(j + 1) % d]));
      }
      Rational delta = abs(a - b);
      if (first) {
        cert.alpha_range = {a, a};
        cert.beta_range = {b, b};
        cert.max_delta = delta;
        cert.max_delta_at = {i, static_cast<int>(j)};
        first = false;
      }
      cert.alpha_range = {std::min(cert.alpha_range[0], a), std::max(cert.alpha_range[1], a)};
      cert.beta_range = {std::min(cert.beta_range[0], b), std::max(cert.beta_range[1], b)};
      if (delta > cert.max_delta) {
        cert.max_delta = delta;
        cert.max_delta_at = {i, static_cast<int>(j)};
      }
      ++cert.pair_count;
    }
  }

  Rational lo = std::min(cert.alpha_range[0], cert.beta_range[0]);
  Rational hi = std::max(cert.alpha_range[1], cert.beta_range[1]);
  if (lo <= 0 || hi >= 1) {
    cert.failures.push_back("squared cosines touch 0 or 1; no Lipschitz bound on the joint range");
    return cert;
  }
  cert.joint_range = {round_down_sig(lo, 1), round_up_sig(hi, 2)};
  if (cert.joint_range[1] >= 1) cert.joint_range[1] = (hi + 1) / 2;
  cert.lipschitz_bound = lipschitz_on_range(cert.joint_range[0], cert.joint_range[1]);
  cert.epsilon = cert.max_degree * cert.lipschitz_bound * cert.max_delta;

  for (int i = 0; i < s.size(); ++i) {
    Rational sum(0);
    for (std::size_t j = 0; j < alpha[i].values.size(); ++j) sum += abs(alpha[i].values[j] - beta[i].values[j]);
    Rational vb = cert.lipschitz_bound * sum;
    vb.canonicalize();
    if (vb > cert.epsilon) cert.failures.push_back("vertex bound exceeds epsilon at vertex " + std::to_string(i));
    cert.vertex_bounds.push_back(vb);
  }
  cert.certified = cert.failures.empty();
  return cert;
}

}  // namespace origami
