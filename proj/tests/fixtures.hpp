#pragma once

#include "origami/io.hpp"

#include <string>

namespace fixtures {

inline std::string path(const char* name) { return std::string(ORIGAMI_DATA_DIR) + "/" + name; }

inline const origami::EmbeddedSurface& candidate() {
  static const origami::EmbeddedSurface s = origami::load_mesh(path("candidate.mesh.json"));
  return s;
}

inline const origami::LinkReference& links() {
  static const origami::LinkReference r = origami::load_links(path("appendix.links.json"));
  return r;
}

inline origami::Triangulation tetrahedron() {
  return {4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}};
}

}  // namespace fixtures
