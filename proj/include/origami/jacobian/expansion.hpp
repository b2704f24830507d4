// Lower bound on the smallest singular value of a rational matrix through
// exact root isolation of char(M^T M), the expansion certificate for Theta,
// and the final existence argument.

#pragma once

#include "origami/certify_embed.hpp"
#include "origami/certify_flat.hpp"
#include "origami/jacobian/bounds.hpp"
#include "origami/matrix.hpp"

#include <string>
#include <vector>

namespace origami {

/// Coefficients c_0, ..., c_n of c_0 + c_1 x + ... + c_n x^n.
using Polynomial = std::vector<Rational>;

Rational evaluate(const Polynomial& p, const Rational& x);
/// Monic characteristic polynomial det(x I - A) by the Faddeev-LeVerrier recursion.
Polynomial characteristic_polynomial(const RationalMatrix& a);
/// p / gcd(p, p'), made monic: the same roots, each simple.
Polynomial square_free_part(const Polynomial& p);

struct RootBracket {
  Rational lo;
  Rational hi;  // lo == hi when the root was hit exactly
};

struct SingularValueBound {
  Polynomial char_poly;                   // of M^T M
  Polynomial square_free;
  std::vector<RootBracket> grid_brackets;  // sign changes on the 1/64 grid
  std::vector<RootBracket> brackets;       // refined to width < 1e-6
  Rational smallest_root_lower;            // lower end of the first refined bracket
  Rational sigma_min;                      // certified lower bound on the smallest singular value
};

class RootIsolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws RootIsolationError when fewer sign-change brackets than distinct roots are found.
SingularValueBound singular_lower_bound(const RationalMatrix& m);

struct ExpansionParameters {
  Rational e_inf{1, 500};        // entrywise cap on dTheta(z) - M over the ball
  Rational lambda{1, 2};
  Rational radius{pow10(-18)};
  Rational jacobian_tolerance{1, 1000};  // required cap on dTheta(z_hat) - M
};

struct ExpansionCertificate {
  bool certified = false;
  std::vector<std::string> failures;
  std::vector<Check> checks;

  Rational sigma_min_bound;
  Rational smallest_root_lower;
  Rational e_inf;
  Rational frobenius_cap;        // 10^2 * e_inf, the constant used in the certificate
  Rational frobenius_cap_sharp;  // 10 * e_inf
  Rational lambda;
  Rational radius;
  Rational jacobian_deviation;   // max |dTheta(z_hat) - M|
  Rational second_order_cap;
  Rational angle_sine_bound;     // 2F / (sigma - F)
  Rational printed_sine_ratio;   // 2F / sigma
};

/// Checks the expansion hypotheses for a matrix M that approximates dTheta at
/// z_hat within `jacobian_deviation`, with second partials capped by `chain`.
ExpansionCertificate certify_expansion(const RationalMatrix& m, const Rational& jacobian_deviation,
                                       const SecondOrderChain& chain, const ExpansionParameters& p = {});

/// Everything certify_expansion consumes, computed from a surface and the printed matrix.
struct ExpansionRun {
  ScalarMatrix jacobian;        // dTheta at the surface
  Rational jacobian_deviation;  // max |dTheta - M^T|
  bool zero_pattern = false;
  CrudeBounds crude;
  SecondOrderChain chain;
  ExpansionCertificate certificate;
};

ExpansionRun run_expansion(const EmbeddedSurface& s, const RationalMatrix& m, int digits = 60,
                           const ExpansionParameters& p = {});

struct ExistenceReport {
  bool established = false;
  std::vector<std::string> failures;
  std::vector<Check> checks;

  Rational defect_norm_cap;     // cap on |Theta(z_hat)|
  Rational defect_norm_bound;   // sqrt(n) * epsilon from flatness, squared comparison
  Rational solution_radius;     // defect_norm_cap / lambda
  Rational expansion_radius;    // lambda * radius
  Rational embedding_slack;     // delta / scale of the embedding certificate
  std::string statement;
};

ExistenceReport conclude_existence(const FlatnessCertificate& flat, const EmbeddingCertificate& embed,
                                   const ExpansionCertificate& expansion, const Rational& defect_norm_cap = pow10(-27));

}  // namespace origami
