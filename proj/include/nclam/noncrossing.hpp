#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nclam/offspring.hpp"
#include "nclam/rng.hpp"
#include "nclam/samplers.hpp"
#include "nclam/tree.hpp"

namespace nclam {

// Left-children counts l_1..l_{n-1} of the non-root vertices in preorder.
struct Decoration {
  std::vector<Index> l;

  bool operator==(const Decoration&) const = default;
};

// Chord set on the n-th roots of unity; vertex i sits at exp(-2i*pi*i/n),
// indices increase clockwise, vertex 0 is the complex number 1. Edges are
// stored normalized (lo < hi) and sorted.
struct NoncrossingTree {
  Index n = 0;
  std::vector<std::pair<Index, Index>> edges;

  void normalize();
  bool operator==(const NoncrossingTree&) const = default;
  bool operator<(const NoncrossingTree& other) const {
    return n != other.n ? n < other.n : edges < other.edges;
  }
};

// Reverse bijection: fold the first l_u children of each vertex to its left.
// Every vertex owns a contiguous clockwise arc of 1 + S_u positions.
NoncrossingTree embed(const PlaneTree& tree, const Decoration& dec);

// Forward bijection: shape rooted at vertex 0 with children read clockwise,
// decorations from the left-half-plane counts.
std::pair<PlaneTree, Decoration> extract(const NoncrossingTree& nc);

// Independent coordinates, l_j uniform on {0..k_{u(j)}}.
Decoration uniform_decoration(const PlaneTree& tree, Rng& rng);

NoncrossingTree theta_uniform(const PlaneTree& tree, Rng& rng);

// True iff the edges form a spanning tree with pairwise noncrossing chords.
bool validate(const NoncrossingTree& nc);

// Whether two chords on a cycle of m points properly cross.
bool chords_cross(std::pair<Index, Index> a, std::pair<Index, Index> b);

// All of NC_n (degree-filtered when a set is given), via embed over every
// decorated tree. Exhaustive oracle; n is capped.
std::vector<NoncrossingTree> enumerate_all(Index n, const std::optional<std::vector<int>>& degrees = std::nullopt);

// Exact sampler for P_n^w: modified BGW shape + uniform decoration + embed.
// Batches should reuse the cached sampler.
class SimplyGeneratedSampler {
 public:
  SimplyGeneratedSampler(const WeightSeq& w, Index n);

  NoncrossingTree sample(Rng& rng, std::uint64_t budget = kDefaultDrawBudget) const;
  PlaneTree sample_shape(Rng& rng, std::uint64_t budget = kDefaultDrawBudget) const;
  const OffspringPair& pair() const { return pair_; }

 private:
  Index n_;
  OffspringPair pair_;
  ModifiedBgwSampler shape_;
};

NoncrossingTree sample_simply_generated(const WeightSeq& w, Index n, Rng& rng,
                                        std::uint64_t budget = kDefaultDrawBudget);

}  // namespace nclam
