#include "origami/mesh.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace origami {

namespace {

std::string edge_name(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

std::string face_name(const Face& f) {
  return "(" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + ")";
}

// Successor map of the link of i: for each face (i, a, b) up to rotation, a -> b.
std::map<int, std::vector<int>> link_edges(const Triangulation& t, int i) {
  std::map<int, std::vector<int>> next;
  for (const Face& f : t.faces) {
    for (int r = 0; r < 3; ++r) {
      if (f[r] == i) next[f[(r + 1) % 3]].push_back(f[(r + 2) % 3]);
    }
  }
  return next;
}

// Empty result when the link is not a single cycle.
std::vector<int> trace_link(const Triangulation& t, int i) {
  auto next = link_edges(t, i);
  if (next.empty()) return {};
  std::map<int, int> indegree;
  for (auto& [a, bs] : next) {
    if (bs.size() != 1) return {};
    ++indegree[bs[0]];
  }
  for (auto& [a, bs] : next) {
    if (indegree[a] != 1) return {};
  }
  if (indegree.size() != next.size()) return {};
  std::vector<int> cycle;
  int start = next.begin()->first;  // smallest neighbor
  int cur = start;
  do {
    cycle.push_back(cur);
    cur = next[cur][0];
  } while (cur != start && cycle.size() <= next.size());
  if (cycle.size() != next.size() || cur != start) return {};
  return cycle;
}

}  // namespace

ValidationReport validate(const Triangulation& t) {
  ValidationReport rep;
  rep.vertices = t.n_vertices;
  rep.faces = static_cast<int>(t.faces.size());
  rep.degrees.assign(std::max(t.n_vertices, 0), 0);

  for (std::size_t k = 0; k < t.faces.size(); ++k) {
    const Face& f = t.faces[k];
    bool in_range = true;
    for (int v : f) in_range = in_range && v >= 0 && v < t.n_vertices;
    if (!in_range) {
      rep.face_errors.push_back("face " + std::to_string(k) + " " + face_name(f) + " has an out-of-range index");
    } else if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      rep.face_errors.push_back("face " + std::to_string(k) + " " + face_name(f) + " repeats a vertex");
    }
  }
  if (!rep.face_errors.empty()) return rep;

  std::map<std::pair<int, int>, int> directed;
  for (const Face& f : t.faces) {
    for (int r = 0; r < 3; ++r) ++directed[{f[r], f[(r + 1) % 3]}];
  }
  std::set<std::pair<int, int>> undirected;
  for (auto& [e, count] : directed) {
    auto [a, b] = e;
    undirected.insert({std::min(a, b), std::max(a, b)});
    if (count != 1) {
      rep.edge_errors.push_back("directed edge " + edge_name(a, b) + " used " + std::to_string(count) + " times");
    }
    if (!directed.count({b, a})) {
      rep.edge_errors.push_back("edge " + edge_name(a, b) + " has no opposite " + edge_name(b, a));
    }
  }
  rep.edges = static_cast<int>(undirected.size());
  for (auto& [a, b] : undirected) {
    ++rep.degrees[a];
    ++rep.degrees[b];
  }

  for (int i = 0; i < t.n_vertices; ++i) {
    if (trace_link(t, i).empty()) rep.link_errors.push_back("link of vertex " + std::to_string(i) + " is not a single cycle");
  }

  rep.euler = rep.vertices - rep.edges + rep.faces;
  rep.valid = rep.edge_errors.empty() && rep.link_errors.empty() && rep.face_errors.empty();
  if (rep.valid && rep.euler % 2 == 0 && rep.euler <= 2) rep.genus = (2 - rep.euler) / 2;
  return rep;
}

std::vector<int> vertex_link(const Triangulation& t, int i) {
  if (i < 0 || i >= t.n_vertices) throw InputError("vertex_link: vertex out of range");
  std::vector<int> cycle = trace_link(t, i);
  if (cycle.empty()) throw InputError("vertex_link: link of vertex " + std::to_string(i) + " is not a single cycle");
  return cycle;
}

std::vector<std::vector<int>> all_links(const Triangulation& t) {
  ValidationReport rep = validate(t);
  if (!rep.valid) throw InputError("invalid triangulation");
  std::vector<std::vector<int>> links;
  for (int i = 0; i < t.n_vertices; ++i) links.push_back(vertex_link(t, i));
  return links;
}

bool same_cycle(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t shift = 0; shift < b.size(); ++shift) {
    bool ok = true;
    for (std::size_t j = 0; j < a.size() && ok; ++j) ok = a[j] == b[(j + shift) % b.size()];
    if (ok) return true;
  }
  return false;
}

void check_in_ball(const EmbeddedSurface& s) {
  if (static_cast<int>(s.coords.size()) != s.triangulation.n_vertices) {
    throw InputError("coordinate count does not match the vertex count");
  }
  for (std::size_t i = 0; i < s.coords.size(); ++i) {
    if (!in_open_ball(s.coords[i])) throw InputError("vertex " + std::to_string(i) + " is outside the open unit ball");
  }
}

Scalar cone_angle(const EmbeddedSurface& s, int i, int digits) {
  std::vector<int> link = vertex_link(s.triangulation, i);
  Scalar sum(0L, digits);
  for (std::size_t j = 0; j < link.size(); ++j) {
    int a = link[j];
    int b = link[(j + 1) % link.size()];
    sum += angle(s.coords[i], s.coords[a], s.coords[b], digits);
  }
  return sum;
}

Scalar cone_angle(const std::vector<std::vector<int>>& links, const std::vector<ScalarPoint>& coords, int i) {
  const std::vector<int>& link = links[i];
  Scalar sum(0L, coords[i].x.digits());
  for (std::size_t j = 0; j < link.size(); ++j) {
    sum += angle(coords[i], coords[link[j]], coords[link[(j + 1) % link.size()]]);
  }
  return sum;
}

EmbeddedSurface subdivide(const EmbeddedSurface& s, int face) {
  if (face < 0 || face >= static_cast<int>(s.triangulation.faces.size())) {
    throw InputError("subdivide: face index " + std::to_string(face) + " out of range");
  }
  EmbeddedSurface out = s;
  const Face f = s.triangulation.faces[face];
  const int m = s.triangulation.n_vertices;
  Rational third(1, 3);
  Point3 c = third * (s.coords[f[0]] + s.coords[f[1]] + s.coords[f[2]]);
  out.coords.push_back(c);
  out.triangulation.n_vertices = m + 1;
  auto& faces = out.triangulation.faces;
  faces[face] = {f[0], f[1], m};
  faces.insert(faces.begin() + face + 1, {Face{f[1], f[2], m}, Face{f[2], f[0], m}});
  return out;
}

}  // namespace origami
