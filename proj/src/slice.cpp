#include "origami/slice.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace origami {

namespace {

using Edge = std::pair<int, int>;

Edge edge_key(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Coordinates kept in the drawing: the two axes spanning a coordinate plane,
// or for a general plane the two axes other than its dominant normal component.
std::array<int, 2> drawn_axes(const Plane& p) {
  int drop = 0;
  for (int k = 1; k < 3; ++k) {
    if (abs(p.normal[k]) > abs(p.normal[drop])) drop = k;
  }
  if (drop == 0) return {1, 2};
  if (drop == 1) return {0, 2};
  return {0, 1};
}

// Decimal with exactly six places, rounded half away from zero.
std::string fixed6(const Rational& x) {
  Rational scaled = x * 1000000;
  Integer n = scaled.get_num(), d = scaled.get_den();
  Integer twice = 2 * abs(n) + d, q;
  Integer den2 = 2 * d;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
  std::string digits = q.get_str();
  if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
  std::string out = (n < 0 && q != 0 ? "-" : "") + digits.substr(0, digits.size() - 6) + "." + digits.substr(digits.size() - 6);
  return out;
}

}  // namespace

Plane named_plane(const std::string& name) {
  const Rational zero(0), one(1);
  if (name == "xy") return {{zero, zero, one}, zero, name};
  if (name == "xz") return {{zero, one, zero}, zero, name};
  if (name == "yz") return {{one, zero, zero}, zero, name};
  throw InputError("unknown plane \"" + name + "\" (expected xy, xz or yz)");
}

SlicePolyline slice(const EmbeddedSurface& s, const Plane& plane) {
  if (plane.normal == Point3{Rational(0), Rational(0), Rational(0)}) throw InputError("plane normal is zero");
  const int n = s.size();
  std::vector<Rational> height(n);
  std::vector<bool> positive(n);
  for (int i = 0; i < n; ++i) {
    height[i] = dot(plane.normal, s.coords[i]) - plane.offset;
    positive[i] = height[i] >= 0;
  }

  auto crossing = [&](const Edge& e) {
    const auto [a, b] = e;
    Rational t = height[a] / (height[a] - height[b]);
    t.canonicalize();
    Point3 p = s.coords[a] + t * (s.coords[b] - s.coords[a]);
    for (int k = 0; k < 3; ++k) p[k].canonicalize();
    return p;
  };

  // Each crossed face contributes one segment joining its two crossed edges.
  std::vector<std::array<Edge, 2>> segments;
  std::map<Edge, std::vector<int>> by_edge;
  for (const Face& f : s.triangulation.faces) {
    std::vector<Edge> crossed;
    for (int k = 0; k < 3; ++k) {
      const int a = f[k], b = f[(k + 1) % 3];
      if (positive[a] != positive[b]) crossed.push_back(edge_key(a, b));
    }
    if (crossed.empty()) continue;
    const int id = static_cast<int>(segments.size());
    segments.push_back({crossed[0], crossed[1]});
    by_edge[crossed[0]].push_back(id);
    by_edge[crossed[1]].push_back(id);
  }
  for (const auto& [e, segs] : by_edge) {
    if (segs.size() != 2) {
      throw OpenChainError("slice chain breaks at edge (" + std::to_string(e.first) + ", " +
                           std::to_string(e.second) + "): " + std::to_string(segs.size()) + " segment(s) end there");
    }
  }

  SlicePolyline out;
  out.plane = plane;
  std::vector<bool> used(segments.size(), false);
  for (std::size_t start = 0; start < segments.size(); ++start) {
    if (used[start]) continue;
    std::vector<Point3> loop;
    std::size_t seg = start;
    Edge at = segments[start][0];
    while (!used[seg]) {
      used[seg] = true;
      loop.push_back(crossing(at));
      at = segments[seg][0] == at ? segments[seg][1] : segments[seg][0];
      const auto& ends = by_edge.at(at);
      seg = static_cast<std::size_t>(ends[0]) == seg ? ends[1] : ends[0];
    }
    if (at != segments[start][0]) {
      throw OpenChainError("slice chain starting at edge (" + std::to_string(segments[start][0].first) + ", " +
                           std::to_string(segments[start][0].second) + ") does not close");
    }
    out.loops.push_back(std::move(loop));
  }
  return out;
}

std::string format_svg(const SlicePolyline& p) {
  const auto axes = drawn_axes(p.plane);
  // [-1, 1]^2 maps onto [0, 1000]^2 with the second axis pointing up.
  auto sx = [](const Rational& u) { return fixed6(500 * (u + 1)); };
  auto sy = [](const Rational& v) { return fixed6(500 * (1 - v)); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
     << "  <title>slice " << p.plane.name << "</title>\n"
     << "  <circle cx=\"500.000000\" cy=\"500.000000\" r=\"500.000000\" fill=\"none\" stroke=\"#888888\" "
        "stroke-width=\"1\"/>\n";
  for (const auto& loop : p.loops) {
    os << "  <path d=\"";
    for (std::size_t k = 0; k < loop.size(); ++k) {
      os << (k == 0 ? "M " : " L ") << sx(loop[k][axes[0]]) << " " << sy(loop[k][axes[1]]);
    }
    os << " Z\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string format_off(const EmbeddedSurface& s, int digits) {
  if (digits < 1) throw InputError("OFF export needs at least 1 digit");
  std::ostringstream os;
  os << "OFF\n" << s.size() << " " << s.triangulation.faces.size() << " " << s.triangulation.edge_count() << "\n";
  for (const Point3& p : s.coords) {
    for (int k = 0; k < 3; ++k) os << (k ? " " : "") << format_rational(truncate_decimal(p[k], digits));
    os << "\n";
  }
  for (const Face& f : s.triangulation.faces) os << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
  return os.str();
}

}  // namespace origami
