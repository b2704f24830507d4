// Flatness certificate: hyperbolic link angles are compared with exact planar
// reference links through a Lipschitz bound on x -> arccos(+-sqrt(x)), so no
// arccos is ever evaluated. Everything here is exact rational arithmetic.

#pragma once

#include "origami/mesh.hpp"

#include <array>
#include <string>
#include <vector>

namespace origami {

struct LinkTable {
  int vertex = 0;
  std::vector<int> neighbors;
  std::vector<std::array<Integer, 2>> vectors;
};

struct LinkReference {
  std::vector<LinkTable> links;  // one per vertex, in vertex order
};

/// Squared cosines along one neighbor cycle, with their signs.
struct LinkValues {
  int vertex = 0;
  std::vector<int> neighbors;
  std::vector<Rational> values;
  std::vector<int> signs;
};

/// alpha_{i,j} = A(X_i, X_{n_j}, X_{n_{j+1}}) along the canonical links.
std::vector<LinkValues> alpha_values(const EmbeddedSurface& s);
/// Same, along the neighbor orders given by the reference tables.
std::vector<LinkValues> alpha_values(const EmbeddedSurface& s, const LinkReference& ref);

/// beta_{i,j} = <Y_j, Y_{j+1}>^2 / (|Y_j|^2 |Y_{j+1}|^2). Rejects zero vectors.
std::vector<LinkValues> beta_values(const LinkReference& ref);

/// Number of times the cyclic vector sequence winds counterclockwise around 0.
/// Requires every consecutive determinant to be positive; returns 0 otherwise.
int winding_number(const std::vector<std::array<Integer, 2>>& vectors);

/// Smallest positive integer K with 4 K^2 m >= 1, m = min(lo(1-lo), hi(1-hi)).
Rational lipschitz_on_range(const Rational& lo, const Rational& hi);

/// Rounds down to `sig` significant decimal digits (toward zero for positives).
Rational round_down_sig(const Rational& x, int sig);
/// Rounds up to `sig` significant decimal digits.
Rational round_up_sig(const Rational& x, int sig);

struct FlatnessCertificate {
  bool certified = false;
  std::vector<std::string> failures;

  Rational max_delta;
  std::array<int, 2> max_delta_at{};  // (vertex, position in its link)
  std::array<Rational, 2> alpha_range;
  std::array<Rational, 2> beta_range;
  std::array<Rational, 2> joint_range;  // widened rational endpoints
  Rational lipschitz_bound;
  int max_degree = 0;
  Rational epsilon;                     // max_degree * K * max_delta
  std::vector<Rational> vertex_bounds;  // K * sum_j delta_{i,j}
  bool sign_agreements = false;
  bool windings_ok = false;
  int pair_count = 0;
};

FlatnessCertificate certify_flatness(const EmbeddedSurface& s, const LinkReference& ref);

}  // namespace origami
