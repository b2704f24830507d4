// Crude geometric bounds valid on the whole ball of surfaces around a
// candidate, and the chain of constants that caps the second partials of Theta.
// Every numeric claim is an exact rational inequality recorded as a Check.

#pragma once

#include "origami/mesh.hpp"

#include <string>
#include <vector>

namespace origami {

struct Check {
  std::string name;
  std::string expression;  // human-readable form of the inequality
  Rational lhs;
  Rational rhs;
  bool strict = false;  // lhs < rhs, otherwise lhs <= rhs
  bool holds = false;
};

Check make_check(std::string name, std::string expression, const Rational& lhs, const Rational& rhs,
                 bool strict = false);

struct RationalRange {
  Rational lo;
  Rational hi;
};

struct CrudeBounds {
  bool certified = false;
  std::vector<std::string> failures;
  std::vector<Check> checks;
  std::vector<Check> informational;  // printed ranges that are compared but not relied on

  Rational ball_radius;       // perturbation radius in z
  Rational outer_radius;      // 0.8: every surface in the ball lies in this ball
  RationalRange edge_norm;    // Euclidean |V| over edges of the candidate, certified
  RationalRange tangent_norm; // |V|_X over the ball, from the comparison factor
  Rational tangent_cap;       // tightened upper bound on |V|_X (3 significant digits)
  RationalRange numerator;    // sqrt(Delta) - b - 2c
  RationalRange denominator;  // 4c^2 + 4ac + 4bc
  RationalRange edge_length;  // hyperbolic lengths of the candidate's edges
  Rational length_slack;      // |l(e) - l(e_hat)| cap
  RationalRange cosine;       // cos of the candidate's face angles
  Rational cosine_slack;      // |cos theta - cos theta_hat| cap
  Rational sine_floor;        // |sin theta| lower bound over the ball
  Rational psi_lipschitz;     // Lipschitz constant of the law-of-cosines map
};

/// Certifies the crude bounds around `s` for z-perturbations of size `ball_radius`.
CrudeBounds crude_bounds(const EmbeddedSurface& s, const Rational& ball_radius = pow10(-18),
                         int digits = 60);

struct SecondOrderChain {
  bool certified = false;
  std::vector<std::string> failures;
  std::vector<Check> checks;
  Rational cap;              // 10^14
  Rational printed_total;    // the final expression exactly as displayed
  Rational corrected_total;  // same chain with the tangent-norm cap and exact product rules
};

/// Re-derives the first- and second-order constant chain from the crude bounds.
SecondOrderChain second_partial_bound(const CrudeBounds& crude);

}  // namespace origami
