// Robust embeddedness: every pair of faces that does not share an edge gets an
// integer normal whose hyperplane keeps the pair apart under any z-perturbation
// of size delta. All margins are exact integers.

#pragma once

#include "origami/mesh.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace origami {

using IntVec3 = std::array<Integer, 3>;

struct IntSurface {
  Triangulation triangulation;
  std::vector<IntVec3> coords;
  Integer scale;
};

/// Multiplies every coordinate by `scale`; throws InputError if a result is not an integer.
IntSurface dilate(const EmbeddedSurface& s, const Integer& scale);

enum class PairKind { disjoint, shared_vertex, shared_edge };
std::string to_string(PairKind k);

struct FacePair {
  int first = 0;   // face indices, first < second
  int second = 0;
  PairKind kind = PairKind::disjoint;
};

struct PairClassification {
  std::vector<FacePair> disjoint;
  std::vector<FacePair> shared_vertex;
  std::vector<FacePair> shared_edge;
};

PairClassification classify_pairs(const Triangulation& t);

/// (floor(1e5 L(n sqrt 2)), floor(1e5 L(n sqrt 3)), floor(1e5 L(n sqrt 5))), L(x) = 2 frac(x) - 1.
std::array<long, 3> rho(long n);

/// min over T1 of <X, N> minus max over T2 of <Y, N>.
Integer margin_disjoint(const std::array<IntVec3, 3>& t1, const std::array<IntVec3, 3>& t2, const IntVec3& n);

/// (min(<V1,N>, <V2,N>) - <U,N>, <U,N> - max(<W1,N>, <W2,N>)).
std::pair<Integer, Integer> margin_shared(const IntVec3& u, const IntVec3& v1, const IntVec3& v2, const IntVec3& w1,
                                          const IntVec3& w2, const IntVec3& n);

struct ManualNormal {
  Face first;
  Face second;
  std::array<long, 3> normal;
};

struct ManualNormals {
  std::vector<ManualNormal> disjoint;
  std::vector<ManualNormal> shared_vertex;
};

/// The hand-found normals for the pairs the quasi-random search misses.
ManualNormals builtin_manual_normals();

struct SeparationWitness {
  FacePair pair;
  IntVec3 normal;
  std::string source;  // "rho", "manual" or "rho-extended"
  long index = 0;      // n for rho sources
  int sign = 1;        // normal = sign * rho(n) or sign * manual normal
  Integer margin1;     // disjoint: the single margin; shared: the V-side margin
  Integer margin2;     // shared: the W-side margin; disjoint: equal to margin1
};

struct SearchLimits {
  long disjoint = 2000;      // n < limit
  long shared = 100000;      // n < limit
  long extended = 0;         // if > 0, keep searching rho(n), n < extended, for unwitnessed pairs
};

struct EmbedParameters {
  Integer scale{"100000000000000000000000000000000"};  // 10^32
  Integer delta{"10000000000000000000000000"};         // 10^25
  Integer cap{100000};                                 // C
  SearchLimits limits;
};

/// Witness search for one pair: rho(n) for n ascending, +rho before -rho,
/// then the manual table (normal and its negative), then the extended range.
std::optional<SeparationWitness> find_normal(const IntSurface& s, const FacePair& pair, const EmbedParameters& p,
                                             const ManualNormals& manual);

/// Exact re-check of a witness against the lemma's inequalities.
bool verify_witness(const IntSurface& s, const SeparationWitness& w, const EmbedParameters& p);

struct EmbeddingCertificate {
  bool certified = false;
  std::vector<std::string> failures;
  Integer scale;
  Integer delta;
  Integer cap;
  Integer threshold;  // 2 delta C
  Rational lambda;    // delta / scale
  int disjoint_pairs = 0;
  int shared_vertex_pairs = 0;
  int shared_edge_pairs = 0;
  int witnessed_by_rho = 0;
  int witnessed_by_manual = 0;
  int witnessed_by_extended = 0;
  std::vector<SeparationWitness> witnesses;
  std::vector<FacePair> unwitnessed;
  Integer min_margin;
};

EmbeddingCertificate certify_embeddedness(const EmbeddedSurface& s, const EmbedParameters& p = {},
                                          const ManualNormals& manual = builtin_manual_normals());

}  // namespace origami
