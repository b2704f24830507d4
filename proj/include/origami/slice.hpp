// Cross-sections of a surface by a plane, rendered as SVG, and mesh export to OFF.

#pragma once

#include "origami/mesh.hpp"

#include <string>
#include <vector>

namespace origami {

/// The plane <normal, X> = offset.
struct Plane {
  Point3 normal;
  Rational offset;
  std::string name;  // "xy", "xz", "yz" or "general"
};

/// z = 0, y = 0 and x = 0. Throws InputError for any other name.
Plane named_plane(const std::string& name);

struct SlicePolyline {
  Plane plane;
  std::vector<std::vector<Point3>> loops;  // each loop closes back to its first point
};

class OpenChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Intersects every face with the plane in exact arithmetic. Vertices on the
/// plane count as lying on the positive side. Segments are chained through the
/// crossed edges they share; throws OpenChainError when a chain does not close.
SlicePolyline slice(const EmbeddedSurface& s, const Plane& plane);

/// Deterministic 1000x1000 SVG of the loops (projected to the plane's two
/// remaining coordinates) over the unit circle.
std::string format_svg(const SlicePolyline& p);

/// OFF text with coordinates truncated toward zero at 10^-digits.
std::string format_off(const EmbeddedSurface& s, int digits);

}  // namespace origami
