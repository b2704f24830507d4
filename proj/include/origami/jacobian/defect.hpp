// The cone-defect map Theta(z) = (theta_i(z) - 2 pi)_i on the z-coordinates of
// a surface (x and y held fixed) and its Jacobian.

#pragma once

#include "origami/matrix.hpp"
#include "origami/mesh.hpp"

#include <vector>

namespace origami {

struct DefectVector {
  std::vector<Scalar> z;
  std::vector<Scalar> theta;
};

/// Euclidean norm of the defect vector.
Scalar defect_norm(const DefectVector& d);

/// Cone defects from floating-point coordinates at their precision.
DefectVector theta_map(const Triangulation& t, const std::vector<ScalarPoint>& coords);
/// Cone defects of an exact surface at the given precision.
DefectVector theta_map(const EmbeddedSurface& s, int digits = kDefaultDigits);

class DegenerateGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First-order partials of u = <V,W>_X, v = |V|_X, w = |W|_X and theta at the
/// apex X_i of one triangle (i, j, k), with respect to z_i, z_j, z_k.
struct AnglePartials {
  Scalar u, v, w;
  std::array<Scalar, 3> du, dv, dw, dtheta;
};
AnglePartials angle_partials(const ScalarPoint& xi, const ScalarPoint& xj, const ScalarPoint& xk);

/// Entry (i, l) is dTheta_i/dz_l, assembled from the closed-form angle partials.
/// Throws DegenerateGeometry when some face angle has |sin| < 1e-6.
ScalarMatrix dtheta_analytic(const Triangulation& t, const std::vector<ScalarPoint>& coords);
ScalarMatrix dtheta_analytic(const EmbeddedSurface& s, int digits = kDefaultDigits);

/// Central differences (Theta(z + h e_l) - Theta(z - h e_l)) / 2h.
ScalarMatrix dtheta_fd(const Triangulation& t, const std::vector<ScalarPoint>& coords, const Rational& h);
ScalarMatrix dtheta_fd(const EmbeddedSurface& s, const Rational& h, int digits = kDefaultDigits);

/// max_{i,j} |a_ij - b_ij|, exactly on the binary values.
Rational max_deviation(const ScalarMatrix& a, const RationalMatrix& b);
Rational max_deviation(const ScalarMatrix& a, const ScalarMatrix& b);

/// True when entry (i, j) of `m` is zero exactly when j is neither i nor a neighbor of i.
bool zero_pattern_matches(const Triangulation& t, const ScalarMatrix& m);
bool zero_pattern_matches(const Triangulation& t, const RationalMatrix& m);

std::vector<ScalarPoint> to_scalar(const std::vector<Point3>& coords, int digits);

}  // namespace origami
