#include "origami/certify_embed.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace origami {

namespace {

using i128 = __int128;

Integer isqrt(const Integer& x) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

unsigned long long isqrt_u128(unsigned __int128 x) {
  auto r = static_cast<unsigned long long>(std::sqrt(static_cast<long double>(x)));
  while (static_cast<unsigned __int128>(r) * r > x) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::array<long, 3> rho_fast(long n) {
  static constexpr long ks[3] = {2, 3, 5};
  std::array<long, 3> out{};
  for (int c = 0; c < 3; ++c) {
    unsigned __int128 big = static_cast<unsigned __int128>(200000) * static_cast<unsigned __int128>(n);
    unsigned long long hi = isqrt_u128(big * big * ks[c]);
    unsigned long long lo = isqrt_u128(static_cast<unsigned __int128>(n) * n * ks[c]);
    out[c] = static_cast<long>(static_cast<long long>(hi) - 200000LL * static_cast<long long>(lo) - 100000LL);
  }
  return out;
}

// rho(1), rho(2), ... cached; grows on demand.
const std::vector<std::array<long, 3>>& rho_table(long up_to) {
  static std::mutex mutex;
  static std::vector<std::array<long, 3>> table{{0, 0, 0}};
  std::lock_guard<std::mutex> lock(mutex);
  if (static_cast<long>(table.size()) <= up_to) {
    table.reserve(up_to + 1);
    for (long n = static_cast<long>(table.size()); n <= up_to; ++n) table.push_back(rho_fast(n));
  }
  return table;
}

bool fits_i128(const Integer& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) <= 107; }

i128 to_i128(const Integer& x) {
  Integer a = abs(x);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  unsigned __int128 v = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                        static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
  i128 s = static_cast<i128>(v);
  return x < 0 ? -s : s;
}

struct FastPoint {
  i128 c[3];
};

i128 fdot(const FastPoint& p, const std::array<long, 3>& n, int sign) {
  i128 d = p.c[0] * n[0] + p.c[1] * n[1] + p.c[2] * n[2];
  return sign > 0 ? d : -d;
}

Integer dot(const IntVec3& a, const IntVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

IntVec3 to_vec(const std::array<long, 3>& n, int sign) {
  return {Integer(n[0] * sign), Integer(n[1] * sign), Integer(n[2] * sign)};
}

Face rotate_to(const Face& f, int v) {
  for (int r = 0; r < 3; ++r) {
    if (f[r] == v) return {f[r], f[(r + 1) % 3], f[(r + 2) % 3]};
  }
  return f;
}

int shared_vertex(const Face& a, const Face& b) {
  for (int x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return x;
  }
  return -1;
}

bool same_face(const Face& a, const Face& b) {
  for (int r = 0; r < 3; ++r) {
    if (a[0] == b[r] && a[1] == b[(r + 1) % 3] && a[2] == b[(r + 2) % 3]) return true;
  }
  return false;
}

// The pair as concrete vertex tuples ready for the margin tests.
struct PairGeometry {
  PairKind kind;
  std::array<int, 3> a;  // disjoint: first face; shared: (U, V1, V2)
  std::array<int, 3> b;  // disjoint: second face; shared: (U, W1, W2)
};

PairGeometry geometry(const Triangulation& t, const FacePair& p) {
  const Face& f1 = t.faces[p.first];
  const Face& f2 = t.faces[p.second];
  if (p.kind == PairKind::shared_vertex) {
    int u = shared_vertex(f1, f2);
    return {p.kind, rotate_to(f1, u), rotate_to(f2, u)};
  }
  return {p.kind, f1, f2};
}

// Exact margins for a given normal.
std::pair<Integer, Integer> exact_margins(const IntSurface& s, const PairGeometry& g, const IntVec3& n) {
  const auto& X = s.coords;
  if (g.kind == PairKind::disjoint) {
    Integer m = margin_disjoint({X[g.a[0]], X[g.a[1]], X[g.a[2]]}, {X[g.b[0]], X[g.b[1]], X[g.b[2]]}, n);
    return {m, m};
  }
  return margin_shared(X[g.a[0]], X[g.a[1]], X[g.a[2]], X[g.b[1]], X[g.b[2]], n);
}

class FastTester {
 public:
  FastTester(const IntSurface& s, const Integer& threshold) {
    ok_ = fits_i128(threshold);
    for (const auto& p : s.coords) {
      FastPoint fp{};
      for (int c = 0; c < 3; ++c) {
        ok_ = ok_ && fits_i128(p[c]);
        if (ok_) fp.c[c] = to_i128(p[c]);
      }
      pts_.push_back(fp);
    }
    if (ok_) threshold_ = to_i128(threshold);
  }

  bool usable() const { return ok_; }

  bool passes(const PairGeometry& g, const std::array<long, 3>& n, int sign) const {
    if (g.kind == PairKind::disjoint) {
      i128 lo = std::min({fdot(pts_[g.a[0]], n, sign), fdot(pts_[g.a[1]], n, sign), fdot(pts_[g.a[2]], n, sign)});
      i128 hi = std::max({fdot(pts_[g.b[0]], n, sign), fdot(pts_[g.b[1]], n, sign), fdot(pts_[g.b[2]], n, sign)});
      return lo - hi > threshold_;
    }
    i128 u = fdot(pts_[g.a[0]], n, sign);
    i128 v = std::min(fdot(pts_[g.a[1]], n, sign), fdot(pts_[g.a[2]], n, sign));
    i128 w = std::max(fdot(pts_[g.b[1]], n, sign), fdot(pts_[g.b[2]], n, sign));
    return v - u > threshold_ && u - w > threshold_;
  }

 private:
  bool ok_ = true;
  std::vector<FastPoint> pts_;
  i128 threshold_ = 0;
};

bool normal_within_cap(const IntVec3& n, const Integer& cap) {
  return abs(n[0]) < cap && abs(n[1]) < cap && abs(n[2]) < cap;
}

}  // namespace

std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::disjoint:
      return "disjoint";
    case PairKind::shared_vertex:
      return "shared_vertex";
    case PairKind::shared_edge:
      return "shared_edge";
  }
  return "unknown";
}

IntSurface dilate(const EmbeddedSurface& s, const Integer& scale) {
  IntSurface out;
  out.triangulation = s.triangulation;
  out.scale = scale;
  for (std::size_t i = 0; i < s.coords.size(); ++i) {
    IntVec3 v;
    for (int c = 0; c < 3; ++c) {
      Rational x = s.coords[i][c] * scale;
      x.canonicalize();
      if (x.get_den() != 1) {
        throw InputError("vertex " + std::to_string(i) + " does not become integral after dilation by " +
                         scale.get_str());
      }
      v[c] = x.get_num();
    }
    out.coords.push_back(v);
  }
  return out;
}

PairClassification classify_pairs(const Triangulation& t) {
  PairClassification out;
  const int f = static_cast<int>(t.faces.size());
  for (int a = 0; a < f; ++a) {
    for (int b = a + 1; b < f; ++b) {
      int common = 0;
      for (int x : t.faces[a]) common += std::count(t.faces[b].begin(), t.faces[b].end(), x) > 0;
      if (common == 0) {
        out.disjoint.push_back({a, b, PairKind::disjoint});
      } else if (common == 1) {
        out.shared_vertex.push_back({a, b, PairKind::shared_vertex});
      } else {
        out.shared_edge.push_back({a, b, PairKind::shared_edge});
      }
    }
  }
  return out;
}

std::array<long, 3> rho(long n) {
  if (n < 1) throw InputError("rho: n must be positive");
  static constexpr long ks[3] = {2, 3, 5};
  std::array<long, 3> out{};
  const Integer scale(200000);
  for (int c = 0; c < 3; ++c) {
    Integer nn(n);
    Integer fine = isqrt(Integer(ks[c]) * (scale * nn) * (scale * nn));
    Integer coarse = isqrt(Integer(ks[c]) * nn * nn);
    Integer v = fine - scale * coarse - 100000;
    out[c] = v.get_si();
  }
  return out;
}

Integer margin_disjoint(const std::array<IntVec3, 3>& t1, const std::array<IntVec3, 3>& t2, const IntVec3& n) {
  Integer lo = std::min({dot(t1[0], n), dot(t1[1], n), dot(t1[2], n)});
  Integer hi = std::max({dot(t2[0], n), dot(t2[1], n), dot(t2[2], n)});
  return lo - hi;
}

std::pair<Integer, Integer> margin_shared(const IntVec3& u, const IntVec3& v1, const IntVec3& v2, const IntVec3& w1,
                                          const IntVec3& w2, const IntVec3& n) {
  Integer un = dot(u, n);
  Integer m1 = std::min(dot(v1, n), dot(v2, n)) - un;
  Integer m2 = un - std::max(dot(w1, n), dot(w2, n));
  return {m1, m2};
}

ManualNormals builtin_manual_normals() {
  ManualNormals m;
  m.disjoint = {
      {{2, 7, 4}, {1, 8, 3}, {-35, -74, 12106}},
      {{0, 2, 1}, {3, 4, 7}, {-60, -96, 22534}},
  };
  m.shared_vertex = {
      {{0, 2, 1}, {1, 3, 7}, {-40, -67, 14035}},   {{0, 2, 1}, {2, 7, 4}, {73, 97, -22643}},
      {{1, 2, 4}, {1, 3, 7}, {-54, -85, 14773}},   {{1, 2, 4}, {1, 8, 3}, {-120, -151, 27015}},
      {{1, 2, 4}, {3, 4, 7}, {45, 69, -14773}},    {{1, 3, 7}, {2, 3, 8}, {-184, -155, -15412}},
      {{1, 3, 7}, {2, 7, 4}, {-36, -73, 12086}},   {{1, 8, 3}, {3, 4, 7}, {-35, -74, 12107}},
      {{2, 3, 8}, {3, 4, 7}, {-417, 566, 51293}},
  };
  return m;
}

bool verify_witness(const IntSurface& s, const SeparationWitness& w, const EmbedParameters& p) {
  if (w.pair.kind == PairKind::shared_edge) return false;
  if (!normal_within_cap(w.normal, p.cap)) return false;
  PairGeometry g = geometry(s.triangulation, w.pair);
  auto [m1, m2] = exact_margins(s, g, w.normal);
  Integer threshold = 2 * p.delta * p.cap;
  return m1 == w.margin1 && m2 == w.margin2 && m1 > threshold && m2 > threshold;
}

std::optional<SeparationWitness> find_normal(const IntSurface& s, const FacePair& pair, const EmbedParameters& p,
                                             const ManualNormals& manual) {
  if (pair.kind == PairKind::shared_edge) return std::nullopt;
  const Integer threshold = 2 * p.delta * p.cap;
  PairGeometry g = geometry(s.triangulation, pair);
  FastTester fast(s, threshold);

  auto exact_pass = [&](const IntVec3& n) {
    if (!normal_within_cap(n, p.cap)) return false;
    auto [m1, m2] = exact_margins(s, g, n);
    return m1 > threshold && m2 > threshold;
  };
  auto make = [&](const IntVec3& n, const std::string& source, long index, int sign) {
    SeparationWitness w;
    w.pair = pair;
    w.normal = n;
    w.source = source;
    w.index = index;
    w.sign = sign;
    auto [m1, m2] = exact_margins(s, g, n);
    w.margin1 = m1;
    w.margin2 = m2;
    return w;
  };
  auto scan = [&](long from, long to, const std::string& source) -> std::optional<SeparationWitness> {
    if (to <= from) return std::nullopt;
    const auto& table = rho_table(to - 1);
    for (long n = from; n < to; ++n) {
      for (int sign : {1, -1}) {
        bool hit = fast.usable() ? fast.passes(g, table[n], sign) : exact_pass(to_vec(table[n], sign));
        // The fast path only nominates; the exact test decides.
        if (hit && exact_pass(to_vec(table[n], sign))) return make(to_vec(table[n], sign), source, n, sign);
      }
    }
    return std::nullopt;
  };

  const long limit = pair.kind == PairKind::disjoint ? p.limits.disjoint : p.limits.shared;
  if (auto w = scan(1, limit, "rho")) return w;

  const auto& table = pair.kind == PairKind::disjoint ? manual.disjoint : manual.shared_vertex;
  const Face& f1 = s.triangulation.faces[pair.first];
  const Face& f2 = s.triangulation.faces[pair.second];
  for (const ManualNormal& m : table) {
    bool match = (same_face(m.first, f1) && same_face(m.second, f2)) ||
                 (same_face(m.first, f2) && same_face(m.second, f1));
    if (!match) continue;
    for (int sign : {1, -1}) {
      IntVec3 n = to_vec(m.normal, sign);
      if (exact_pass(n)) return make(n, "manual", 0, sign);
    }
  }

  if (p.limits.extended > limit) return scan(limit, p.limits.extended, "rho-extended");
  return std::nullopt;
}

EmbeddingCertificate certify_embeddedness(const EmbeddedSurface& s, const EmbedParameters& p,
                                          const ManualNormals& manual) {
  EmbeddingCertificate cert;
  cert.scale = p.scale;
  cert.delta = p.delta;
  cert.cap = p.cap;
  cert.threshold = 2 * p.delta * p.cap;
  cert.lambda = Rational(p.delta, p.scale);
  cert.lambda.canonicalize();

  ValidationReport rep = validate(s.triangulation);
  if (!rep.valid) {
    cert.failures.push_back("triangulation is invalid");
    return cert;
  }
  IntSurface is = dilate(s, p.scale);
  PairClassification pc = classify_pairs(s.triangulation);
  cert.disjoint_pairs = static_cast<int>(pc.disjoint.size());
  cert.shared_vertex_pairs = static_cast<int>(pc.shared_vertex.size());
  cert.shared_edge_pairs = static_cast<int>(pc.shared_edge.size());

  bool first = true;
  for (const auto* group : {&pc.disjoint, &pc.shared_vertex}) {
    for (const FacePair& pair : *group) {
      auto w = find_normal(is, pair, p, manual);
      if (!w || !verify_witness(is, *w, p)) {
        cert.unwitnessed.push_back(pair);
        const Face& a = s.triangulation.faces[pair.first];
        const Face& b = s.triangulation.faces[pair.second];
        cert.failures.push_back("no separating normal for " + to_string(pair.kind) + " pair {(" +
                                std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) +
                                "), (" + std::to_string(b[0]) + "," + std::to_string(b[1]) + "," +
                                std::to_string(b[2]) + ")}");
        continue;
      }
      if (w->source == "rho") ++cert.witnessed_by_rho;
      if (w->source == "manual") ++cert.witnessed_by_manual;
      if (w->source == "rho-extended") ++cert.witnessed_by_extended;
      Integer m = std::min(w->margin1, w->margin2);
      if (first || m < cert.min_margin) cert.min_margin = m;
      first = false;
      cert.witnesses.push_back(std::move(*w));
    }
  }
  cert.certified = cert.failures.empty();
  return cert;
}

}  // namespace origami
