#include "origami/jacobian/defect.hpp"

namespace origami {

namespace {

Scalar two_pi(int digits) { return pi(digits) * 2L; }

int working_digits(const std::vector<ScalarPoint>& coords) {
  if (coords.empty()) throw InputError("empty coordinate list");
  return coords.front().x.digits();
}

}  // namespace

std::vector<ScalarPoint> to_scalar(const std::vector<Point3>& coords, int digits) {
  std::vector<ScalarPoint> out;
  out.reserve(coords.size());
  for (const Point3& p : coords) out.push_back(to_scalar(p, digits));
  return out;
}

Scalar defect_norm(const DefectVector& d) {
  if (d.theta.empty()) return Scalar(0L, kDefaultDigits);
  Scalar s(0L, d.theta.front().digits());
  for (const Scalar& t : d.theta) s += t * t;
  return sqrt(s);
}

DefectVector theta_map(const Triangulation& t, const std::vector<ScalarPoint>& coords) {
  const int digits = working_digits(coords);
  const auto links = all_links(t);
  const Scalar full = two_pi(digits);
  DefectVector d;
  for (int i = 0; i < t.n_vertices; ++i) {
    d.z.push_back(coords[i].z);
    d.theta.push_back(cone_angle(links, coords, i) - full);
  }
  return d;
}

DefectVector theta_map(const EmbeddedSurface& s, int digits) {
  const Scalar full = two_pi(digits);
  DefectVector d;
  for (int i = 0; i < s.size(); ++i) {
    d.z.push_back(Scalar(s.coords[i].z, digits));
    d.theta.push_back(cone_angle(s, i, digits) - full);
  }
  return d;
}

AnglePartials angle_partials(const ScalarPoint& xi, const ScalarPoint& xj, const ScalarPoint& xk) {
  const int digits = xi.x.digits();
  const Scalar one(1L, digits);
  const ScalarPoint V = xj - xi;
  const ScalarPoint W = xk - xi;
  const Scalar &zi = xi.z, &zj = xj.z, &zk = xk.z;

  const Scalar a = one - dot(xi, xi);
  const Scalar a2 = a * a;
  const Scalar a3 = a2 * a;
  const Scalar t1 = dot(xi, V);
  const Scalar t2 = dot(xi, W);
  const Scalar t3 = dot(V, W);
  const Scalar t4 = dot(V, V);
  const Scalar t5 = dot(W, W);

  AnglePartials p;
  p.u = t3 / a + t1 * t2 / a2;
  p.v = sqrt(t4 / a + t1 * t1 / a2);
  p.w = sqrt(t5 / a + t2 * t2 / a2);

  p.du[0] = (2L * zi - zj - zk) / a + (2L * zi * t3 + (zj - 2L * zi) * t2 + (zk - 2L * zi) * t1) / a2 +
            4L * zi * t1 * t2 / a3;
  p.du[1] = (zk - zi) / a + zi * t2 / a2;
  p.du[2] = (zj - zi) / a + zi * t1 / a2;

  const Scalar zero(0L, digits);
  p.dv[0] = ((zi - zj) / a + (zi * t4 + (zj - 2L * zi) * t1) / a2 + 2L * zi * t1 * t1 / a3) / p.v;
  p.dv[1] = ((zj - zi) / a + zi * t1 / a2) / p.v;
  p.dv[2] = zero;

  p.dw[0] = ((zi - zk) / a + (zi * t5 + (zk - 2L * zi) * t2) / a2 + 2L * zi * t2 * t2 / a3) / p.w;
  p.dw[1] = zero;
  p.dw[2] = ((zk - zi) / a + zi * t2 / a2) / p.w;

  const Scalar vw = p.v * p.w;
  const Scalar root = sqrt(vw * vw - p.u * p.u);
  if ((root / vw).compare(pow10(-6)) < 0) throw DegenerateGeometry("face angle with |sin| below 1e-6");
  for (int l = 0; l < 3; ++l) {
    const Scalar dvw = p.dv[l] * p.w + p.v * p.dw[l];
    p.dtheta[l] = (dvw * p.u / vw - p.du[l]) / root;
  }
  return p;
}

ScalarMatrix dtheta_analytic(const Triangulation& t, const std::vector<ScalarPoint>& coords) {
  const int digits = working_digits(coords);
  const int n = t.n_vertices;
  ScalarMatrix m(n, std::vector<Scalar>(n, Scalar(0L, digits)));
  for (const Face& f : t.faces) {
    for (int r = 0; r < 3; ++r) {
      const int i = f[r], j = f[(r + 1) % 3], k = f[(r + 2) % 3];
      AnglePartials p = angle_partials(coords[i], coords[j], coords[k]);
      m[i][i] += p.dtheta[0];
      m[i][j] += p.dtheta[1];
      m[i][k] += p.dtheta[2];
    }
  }
  return m;
}

ScalarMatrix dtheta_analytic(const EmbeddedSurface& s, int digits) {
  return dtheta_analytic(s.triangulation, to_scalar(s.coords, digits));
}

ScalarMatrix dtheta_fd(const Triangulation& t, const std::vector<ScalarPoint>& coords, const Rational& h) {
  if (h <= 0) throw InputError("finite-difference step must be positive");
  const int digits = working_digits(coords);
  const int n = t.n_vertices;
  const Scalar step(h, digits);
  const Scalar twice = step * 2L;
  ScalarMatrix m(n, std::vector<Scalar>(n, Scalar(0L, digits)));
  for (int l = 0; l < n; ++l) {
    std::vector<ScalarPoint> plus = coords, minus = coords;
    plus[l].z += step;
    minus[l].z -= step;
    DefectVector tp = theta_map(t, plus);
    DefectVector tm = theta_map(t, minus);
    for (int i = 0; i < n; ++i) m[i][l] = (tp.theta[i] - tm.theta[i]) / twice;
  }
  return m;
}

ScalarMatrix dtheta_fd(const EmbeddedSurface& s, const Rational& h, int digits) {
  return dtheta_fd(s.triangulation, to_scalar(s.coords, digits), h);
}

Rational max_deviation(const ScalarMatrix& a, const RationalMatrix& b) {
  if (a.size() != b.size()) throw InputError("matrix size mismatch");
  Rational best(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw InputError("matrix size mismatch");
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      Rational d = abs(a[i][j].to_rational() - b[i][j]);
      if (d > best) best = d;
    }
  }
  return best;
}

Rational max_deviation(const ScalarMatrix& a, const ScalarMatrix& b) { return max_deviation(a, to_rational(b)); }

namespace {

template <class IsZero>
bool pattern_matches(const Triangulation& t, std::size_t rows, IsZero is_zero) {
  const int n = t.n_vertices;
  if (rows != static_cast<std::size_t>(n)) return false;
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (const Face& f : t.faces) {
    for (int r = 0; r < 3; ++r) {
      adjacent[f[r]][f[(r + 1) % 3]] = true;
      adjacent[f[(r + 1) % 3]][f[r]] = true;
    }
  }
  for (int i = 0; i < n; ++i) {
    adjacent[i][i] = true;
    for (int j = 0; j < n; ++j) {
      if (is_zero(i, j) == adjacent[i][j]) return false;
    }
  }
  return true;
}

}  // namespace

bool zero_pattern_matches(const Triangulation& t, const ScalarMatrix& m) {
  return pattern_matches(t, m.size(), [&](int i, int j) { return m[i][j].is_zero(); });
}

bool zero_pattern_matches(const Triangulation& t, const RationalMatrix& m) {
  return pattern_matches(t, m.size(), [&](int i, int j) { return m[i][j] == 0; });
}

}  // namespace origami
