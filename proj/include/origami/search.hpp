// The uncertified construction pipeline: normalize a lattice embedding into
// the ball, hill-climb on the largest cone defect, refine the z-coordinates by
// Newton's method on Theta, and truncate.

#pragma once

#include "origami/io.hpp"
#include "origami/matrix.hpp"
#include "origami/mesh.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace origami {

struct SearchConfig {
  std::uint64_t rng_seed = 1;
  Rational initial_step{1, 64};  // half-width of the proposal cube; a power of two
  int rejections_per_halving = 200;
  long max_steps = 1000;
  int precision = 50;            // digits for hill-climb objective evaluations
  int newton_precision = 400;
  Rational newton_tol{pow10(-35)};
  int newton_max_steps = 10;
  int truncation_digits = 32;

  /// Throws InputError unless every field is positive and newton_tol >= 10^(10 - newton_precision).
  void validate() const;
};

/// Name of the generator behind hill_climb, recorded in reports.
extern const char* const kRngAlgorithm;

/// Translates the centroid to the origin and scales so the largest norm is 1/2
/// (exactly when that norm is rational, otherwise within 1e-44 below).
EmbeddedSurface prepare_from_lattice(const LatticeInput& in);

/// max_i |theta_i - 2 pi| at the given precision.
Scalar objective(const EmbeddedSurface& s, int digits);

struct HillClimbResult {
  EmbeddedSurface surface;
  std::vector<Scalar> history;  // objective after each accepted proposal, starting with the initial value
  long steps = 0;
  long accepted = 0;
  Rational final_step;
};

/// Perturbs all coordinates by dyadic offsets in a shrinking cube and keeps a
/// proposal only if the objective strictly decreases.
HillClimbResult hill_climb(const EmbeddedSurface& start, const SearchConfig& cfg);

class NewtonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NewtonResult {
  EmbeddedSurface surface;
  std::vector<Scalar> defect_norms;  // |Theta| before each step and after the last one
  int iterations = 0;
  bool converged = false;
};

/// z <- z - dTheta(z)^-1 Theta(z) at cfg.newton_precision, x and y fixed.
/// Throws NewtonError on a singular Jacobian or when the defect norm grows twice in a row.
NewtonResult newton_refine(const EmbeddedSurface& s, const SearchConfig& cfg);

enum class TruncateWhich { z_only, all };

/// Truncates toward zero at 10^-digits.
EmbeddedSurface truncate_coords(const EmbeddedSurface& s, int digits = 32, TruncateWhich which = TruncateWhich::z_only);

}  // namespace origami
