#pragma once

#include <cstdint>
#include <vector>

namespace nclam {

using Index = std::int64_t;

// Rooted ordered tree stored as the children counts of its vertices in
// lexicographical (preorder) order. No pointers: with n up to 10^7 the flat
// representation is the only one that scales, and every query we need can be
// answered from the Lukasiewicz path.
struct PlaneTree {
  std::vector<Index> kids;

  Index size() const { return static_cast<Index>(kids.size()); }
  bool operator==(const PlaneTree&) const = default;
};

// Integer excursion W_0..W_n with increments >= -1, W_j >= 0 before the end
// and W_n = -1.
struct LukasiewiczPath {
  std::vector<Index> w;

  Index steps() const { return static_cast<Index>(w.size()) - 1; }
  bool operator==(const LukasiewiczPath&) const = default;
};

LukasiewiczPath encode(const PlaneTree& tree);

// Inverse of encode; throws InvalidPath when the sequence is not a valid
// Lukasiewicz excursion.
PlaneTree decode(const LukasiewiczPath& path);

bool is_valid_tree(const PlaneTree& tree);

// Max generation over all vertices.
Index height(const PlaneTree& tree);

// S_k = number of strict descendants of the k-th preorder vertex, for every
// k, in one right-to-left sweep (next smaller value on the path).
std::vector<Index> subtree_sizes(const LukasiewiczPath& path);

// u_i is an ancestor of u_j iff i <= j and W_i = min over [i,j] of W.
bool is_ancestor(const LukasiewiczPath& path, Index i, Index j);

// Parent of each preorder vertex (-1 for the root); test oracle and helper
// for shape walks.
std::vector<Index> parent_vector(const PlaneTree& tree);

// All plane trees with n vertices in lexicographic order of their kids
// sequences. Exhaustive-oracle use only; guarded against large n.
std::vector<PlaneTree> enumerate_plane_trees(Index n);

}  // namespace nclam
