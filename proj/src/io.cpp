#include "origami/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace origami {

using nlohmann::json;

namespace {

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text, const char* expected_format) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON at ") + location(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!j.is_object()) throw InputError("top-level value must be an object");
  if (!j.contains("format") || j["format"] != expected_format) {
    throw InputError(std::string("expected format \"") + expected_format + "\"");
  }
  return j;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

Rational decimal(const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": numbers must be decimal strings");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

Integer integer_string(const json& v, const std::string& where) {
  Rational r = decimal(v, where);
  if (r.get_den() != 1) throw InputError(where + ": integer expected");
  return r.get_num();
}

long small_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": integer expected");
  return v.get<long>();
}

Face parse_face(const json& f, const std::string& where) {
  if (!f.is_array() || f.size() != 3) throw InputError(where + " must be a triple of vertex indices");
  Face out{};
  for (int k = 0; k < 3; ++k) out[k] = static_cast<int>(small_int(f[k], where));
  return out;
}

Triangulation parse_faces(const json& faces, int n_vertices) {
  if (!faces.is_array()) throw InputError("\"faces\" must be a list");
  Triangulation t;
  t.n_vertices = n_vertices;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    std::string where = "face " + std::to_string(k);
    Face f = parse_face(faces[k], where);
    for (int v : f) {
      if (v < 0 || v >= n_vertices) {
        throw InputError(where + " has vertex index " + std::to_string(v) + " out of range [0, " +
                         std::to_string(n_vertices) + ")");
      }
    }
    t.faces.push_back(f);
  }
  return t;
}

std::string join_row(const std::vector<std::string>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += items[i];
  }
  return s + "]";
}

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string join_lines(const std::vector<std::string>& lines, const std::string& indent) {
  std::string s;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    s += indent + lines[i];
    if (i + 1 < lines.size()) s += ",";
    s += "\n";
  }
  return s;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw InputError("cannot rename " + tmp + " to " + path);
  }
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

// ---- mesh ---------------------------------------------------------------------

EmbeddedSurface parse_mesh(const std::string& text) {
  json j = parse_json(text, "origami-mesh-v1");
  const json& verts = field(j, "vertices");
  if (!verts.is_array()) throw InputError("\"vertices\" must be a list");
  EmbeddedSurface s;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    std::string where = "vertex " + std::to_string(i);
    if (!verts[i].is_array() || verts[i].size() != 3) throw InputError(where + " must be a coordinate triple");
    s.coords.push_back({decimal(verts[i][0], where), decimal(verts[i][1], where), decimal(verts[i][2], where)});
  }
  s.triangulation = parse_faces(field(j, "faces"), static_cast<int>(s.coords.size()));
  return s;
}

std::string format_mesh(const EmbeddedSurface& s) {
  std::vector<std::string> verts, faces;
  for (const Point3& p : s.coords) {
    verts.push_back(join_row({quoted(format_rational(p.x)), quoted(format_rational(p.y)), quoted(format_rational(p.z))}));
  }
  for (const Face& f : s.triangulation.faces) {
    faces.push_back(join_row({std::to_string(f[0]), std::to_string(f[1]), std::to_string(f[2])}));
  }
  return "{\n  \"format\": \"origami-mesh-v1\",\n  \"vertices\": [\n" + join_lines(verts, "    ") +
         "  ],\n  \"faces\": [\n" + join_lines(faces, "    ") + "  ]\n}\n";
}

EmbeddedSurface load_mesh(const std::string& path) { return parse_mesh(read_file(path)); }

void save_mesh(const std::string& path, const EmbeddedSurface& s) { write_file_atomic(path, format_mesh(s)); }

// ---- links --------------------------------------------------------------------

LinkReference parse_links(const std::string& text) {
  json j = parse_json(text, "origami-links-v1");
  const json& links = field(j, "links");
  if (!links.is_array()) throw InputError("\"links\" must be a list");
  LinkReference ref;
  for (std::size_t k = 0; k < links.size(); ++k) {
    const json& l = links[k];
    LinkTable t;
    std::string where = "link " + std::to_string(k);
    t.vertex = static_cast<int>(small_int(field(l, "vertex"), where));
    for (const json& n : field(l, "neighbors")) t.neighbors.push_back(static_cast<int>(small_int(n, where)));
    for (const json& v : field(l, "vectors")) {
      if (!v.is_array() || v.size() != 2) throw InputError(where + ": vectors must be pairs");
      t.vectors.push_back({integer_string(v[0], where), integer_string(v[1], where)});
    }
    if (t.vectors.size() != t.neighbors.size()) throw InputError(where + ": one vector per neighbor expected");
    ref.links.push_back(std::move(t));
  }
  return ref;
}

std::string format_links(const LinkReference& ref) {
  std::vector<std::string> entries;
  for (const LinkTable& t : ref.links) {
    std::vector<std::string> ns, vs;
    for (int n : t.neighbors) ns.push_back(std::to_string(n));
    for (const auto& v : t.vectors) vs.push_back(join_row({quoted(v[0].get_str()), quoted(v[1].get_str())}));
    entries.push_back("{\n      \"vertex\": " + std::to_string(t.vertex) + ",\n      \"neighbors\": " + join_row(ns) +
                      ",\n      \"vectors\": [\n" + join_lines(vs, "        ") + "      ]\n    }");
  }
  return "{\n  \"format\": \"origami-links-v1\",\n  \"links\": [\n" + join_lines(entries, "    ") + "  ]\n}\n";
}

LinkReference load_links(const std::string& path) { return parse_links(read_file(path)); }

// ---- matrix, normals, lattice --------------------------------------------------

RationalMatrix parse_matrix(const std::string& text) {
  json j = parse_json(text, "origami-matrix-v1");
  RationalMatrix m;
  const json& rows = field(j, "rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Rational> row;
    for (const json& x : rows[i]) row.push_back(decimal(x, "row " + std::to_string(i)));
    if (!m.empty() && row.size() != m[0].size()) throw InputError("matrix rows differ in length");
    m.push_back(std::move(row));
  }
  return m;
}

RationalMatrix load_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

ManualNormals parse_normals(const std::string& text) {
  json j = parse_json(text, "origami-normals-v1");
  auto read = [](const json& list, const char* name) {
    std::vector<ManualNormal> out;
    for (std::size_t k = 0; k < list.size(); ++k) {
      std::string where = std::string(name) + " entry " + std::to_string(k);
      const json& pair = field(list[k], "pair");
      const json& n = field(list[k], "normal");
      if (!pair.is_array() || pair.size() != 2 || !n.is_array() || n.size() != 3) {
        throw InputError(where + ": expected a face pair and a 3-vector");
      }
      out.push_back({parse_face(pair[0], where), parse_face(pair[1], where),
                     {small_int(n[0], where), small_int(n[1], where), small_int(n[2], where)}});
    }
    return out;
  };
  ManualNormals m;
  m.disjoint = read(field(j, "disjoint"), "disjoint");
  m.shared_vertex = read(field(j, "shared_vertex"), "shared_vertex");
  return m;
}

ManualNormals load_normals(const std::string& path) { return parse_normals(read_file(path)); }

LatticeInput parse_lattice(const std::string& text) {
  json j = parse_json(text, "origami-lattice-v1");
  LatticeInput in;
  const json& pts = field(j, "points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::string where = "point " + std::to_string(i);
    if (!pts[i].is_array() || pts[i].size() != 3) throw InputError(where + " must be an integer triple");
    in.points.push_back({Integer(small_int(pts[i][0], where)), Integer(small_int(pts[i][1], where)),
                         Integer(small_int(pts[i][2], where))});
  }
  in.triangulation = parse_faces(field(j, "faces"), static_cast<int>(in.points.size()));
  return in;
}

LatticeInput load_lattice(const std::string& path) { return parse_lattice(read_file(path)); }

}  // namespace origami
