// File formats. Every number that must stay exact travels as a decimal string.
//
//   mesh     {"format": "origami-mesh-v1", "vertices": [[x, y, z], ...], "faces": [[i, j, k], ...]}
//   links    {"format": "origami-links-v1", "links": [{"vertex", "neighbors", "vectors"}, ...]}
//   matrix   {"format": "origami-matrix-v1", "rows": [[...], ...]}
//   normals  {"format": "origami-normals-v1", "disjoint": [...], "shared_vertex": [...]}
//   lattice  {"format": "origami-lattice-v1", "points": [[i, j, k], ...], "faces": [...]}

#pragma once

#include "origami/certify_embed.hpp"
#include "origami/certify_flat.hpp"
#include "origami/matrix.hpp"
#include "origami/mesh.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace origami {

std::string read_file(const std::string& path);
/// Writes to a temporary file next to `path`, then renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);
std::string sha256_hex(std::string_view bytes);

EmbeddedSurface parse_mesh(const std::string& text);
std::string format_mesh(const EmbeddedSurface& s);
EmbeddedSurface load_mesh(const std::string& path);
void save_mesh(const std::string& path, const EmbeddedSurface& s);

LinkReference parse_links(const std::string& text);
std::string format_links(const LinkReference& ref);
LinkReference load_links(const std::string& path);

RationalMatrix parse_matrix(const std::string& text);
RationalMatrix load_matrix(const std::string& path);

ManualNormals parse_normals(const std::string& text);
ManualNormals load_normals(const std::string& path);

struct LatticeInput {
  std::vector<std::array<Integer, 3>> points;
  Triangulation triangulation;
};
LatticeInput parse_lattice(const std::string& text);
LatticeInput load_lattice(const std::string& path);

}  // namespace origami
