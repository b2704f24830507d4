// Closed oriented triangulated surfaces and their embeddings in the Klein ball.

#pragma once

#include "origami/klein.hpp"
#include "origami/precision.hpp"

#include <array>
#include <string>
#include <vector>

namespace origami {

using Face = std::array<int, 3>;

struct Triangulation {
  int n_vertices = 0;
  std::vector<Face> faces;

  int edge_count() const { return static_cast<int>(faces.size()) * 3 / 2; }
};

struct ValidationReport {
  bool valid = false;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler = 0;
  int genus = -1;  // -1 when the Euler characteristic is odd or the surface is invalid
  std::vector<int> degrees;  // indexed by vertex
  std::vector<std::string> face_errors;
  std::vector<std::string> edge_errors;
  std::vector<std::string> link_errors;
};

ValidationReport validate(const Triangulation& t);

/// Neighbor cycle (n_0, ..., n_{d-1}) with (i, n_j, n_{j+1}) a face for every j,
/// starting at the smallest neighbor index.
std::vector<int> vertex_link(const Triangulation& t, int i);

/// All links at once; throws InputError if the triangulation is invalid.
std::vector<std::vector<int>> all_links(const Triangulation& t);

/// True when b is a cyclic rotation of a.
bool same_cycle(const std::vector<int>& a, const std::vector<int>& b);

struct EmbeddedSurface {
  Triangulation triangulation;
  std::vector<Point3> coords;

  int size() const { return triangulation.n_vertices; }
};

/// Throws InputError unless every vertex lies in the open unit ball.
void check_in_ball(const EmbeddedSurface& s);

/// Sum of the angles at vertex i over its link, at the given precision.
Scalar cone_angle(const EmbeddedSurface& s, int i, int digits = kDefaultDigits);

/// Cone angle from floating-point coordinates (search path).
Scalar cone_angle(const std::vector<std::vector<int>>& links, const std::vector<ScalarPoint>& coords, int i);

/// Splits a face at its Euclidean barycenter into three, preserving orientation.
EmbeddedSurface subdivide(const EmbeddedSurface& s, int face);

}  // namespace origami
