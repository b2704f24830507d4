#include "origami/matrix.hpp"

#include <utility>

namespace origami {

RationalMatrix transpose(const RationalMatrix& a) {
  if (a.empty()) return {};
  RationalMatrix t(a[0].size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) throw InputError("multiply: dimension mismatch");
  RationalMatrix c(a.size(), std::vector<Rational>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

RationalMatrix identity_matrix(int n) {
  RationalMatrix m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix to_rational(const ScalarMatrix& a) {
  RationalMatrix r;
  for (const auto& row : a) {
    std::vector<Rational> out;
    for (const auto& x : row) out.push_back(x.to_rational());
    r.push_back(std::move(out));
  }
  return r;
}

ScalarVector lu_solve(ScalarMatrix a, ScalarVector b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InputError("lu_solve: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col].is_zero()) throw SingularMatrix("lu_solve: singular matrix (zero pivot in column " + std::to_string(col) + ")");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      Scalar f = a[r][col] / a[col][col];
      if (f.is_zero()) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  ScalarVector x(n, Scalar(0L, b.empty() ? kDefaultDigits : b[0].digits()));
  for (std::size_t i = n; i-- > 0;) {
    Scalar s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

RationalMatrix builtin_expansion_matrix() {
  static const char* rows[10][10] = {
      {"-7.526", "0.793", "-0.228", "-0.264", "-0.782", "1.372", "1.173", "-0.098", "0.192", "2.158"},
      {"0.684", "4.991", "-0.344", "-0.104", "-1.468", "-0.260", "0.208", "-0.661", "-1.528", "0"},
      {"-0.203", "-0.356", "3.913", "-1.008", "-0.104", "0", "-0.091", "-0.588", "-0.017", "0.224"},
      {"-0.255", "-0.116", "-1.093", "4.665", "-0.847", "-0.035", "0.117", "-0.133", "-0.037", "0"},
      {"-0.753", "-1.639", "-0.112", "-0.843", "5.270", "-0.642", "0.820", "0.015", "0", "0.870"},
      {"1.112", "-0.244", "0", "-0.029", "-0.540", "-2.245", "0.162", "0", "-0.369", "1.354"},
      {"1.006", "0.207", "-0.087", "0.104", "0.730", "0.172", "-9.148", "0", "0", "3.639"},
      {"-0.086", "-0.674", "-0.580", "-0.121", "0.013", "0", "0", "5.063", "-1.681", "0"},
      {"0.128", "-1.185", "-0.013", "-0.026", "0", "-0.305", "0", "-1.277", "3.455", "0"},
      {"1.751", "0", "0.204", "0", "0.733", "1.355", "3.444", "0", "0", "-11.599"},
  };
  RationalMatrix m(10, std::vector<Rational>(10));
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) m[i][j] = parse_rational(rows[i][j]);
  }
  return m;
}

}  // namespace origami
