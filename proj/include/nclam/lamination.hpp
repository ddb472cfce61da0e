#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "nclam/noncrossing.hpp"
#include "nclam/rng.hpp"
#include "nclam/tree.hpp"

namespace nclam {

using Chord = std::pair<Index, Index>;

// Finite set of noncrossing chords with endpoints on m marked circle
// positions (angles p/m). Chords are normalized (lo < hi), sorted, unique;
// degenerate pairs are dropped at construction.
struct Lamination {
  Index m = 0;
  std::vector<Chord> chords;

  void add(Index p, Index q);  // reduces mod m, drops degenerates
  void finish();               // sort + dedup
  bool operator==(const Lamination&) const = default;
};

// Face of the lamination coded by a path, keyed by the vertex that opens it.
struct Face {
  Index jump_index = 0;            // vertex u with k_u >= 1
  std::vector<Index> boundary;     // u, child slots j_1..j_k, closing time (raw, may equal n)
  Index special = -1;              // selected triangulation vertex, -1 if unset
};

// How per-face labels are produced when no explicit decoration is given.
struct JumpsLabelling {
  enum class Rule { Zero, Uniform, Explicit };
  Rule rule = Rule::Zero;
  std::uint64_t seed = 0;
  std::map<Index, double> values;  // Explicit: vertex -> value in [0,1]

  static JumpsLabelling zero() { return {}; }
  static JumpsLabelling uniform(std::uint64_t seed) { return {Rule::Uniform, seed, {}}; }
  static JumpsLabelling explicit_values(std::map<Index, double> v) { return {Rule::Explicit, 0, std::move(v)}; }

  double value_at(Index vertex) const;
};

// Subtree-closing chords {i, i+S_i+1 mod n} for every non-root vertex.
Lamination lamination_from_tree(const LukasiewiczPath& path);

// One face per vertex with k_u >= 1; boundaries are the child skeletons.
std::vector<Face> faces(const LukasiewiczPath& path);

// Per-vertex left counts L_u in {0..k_u} driving the face specials. A
// Decoration fixes the non-root labels directly (the root gets L_0 = k_0 so
// its special is the root's own circle position); a labelling value x maps
// to min(k, floor(x*(k+1))), which is uniform on {0..k} for uniform x.
std::vector<Index> resolve_labels(const PlaneTree& tree, const Decoration& dec);
std::vector<Index> resolve_labels(const PlaneTree& tree, const JumpsLabelling& labelling);

// Triangulated lamination: subtree chords, the n marked unit arcs, and for
// each face the fan from its special vertex to the rest of its boundary.
// Always exactly 2n-3 chords for n >= 2, for every labels choice.
Lamination triangulate(const LukasiewiczPath& path, const std::vector<Index>& labels);
Lamination triangulate(const LukasiewiczPath& path, const Decoration& dec);
Lamination triangulate(const LukasiewiczPath& path, const JumpsLabelling& labelling);

// True iff no chord between two marked points can be added without crossing
// or duplication. For a noncrossing, duplicate-free family on P points that
// is exactly |chords| == 2P - 3.
bool is_maximal(const Lamination& lam, const std::vector<Index>& points);

// Symmetric Hausdorff distance between the chord-union point sets, sampling
// chords at step delta; exact within an additive delta.
double hausdorff_distance(const Lamination& a, const Lamination& b, double delta);

Lamination nc_to_lamination(const NoncrossingTree& nc);

}  // namespace nclam
