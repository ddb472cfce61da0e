#include "nclam/tree.hpp"

#include <string>

#include "nclam/errors.hpp"

namespace nclam {

LukasiewiczPath encode(const PlaneTree& tree) {
  const Index n = tree.size();
  LukasiewiczPath path;
  path.w.resize(static_cast<std::size_t>(n) + 1);
  path.w[0] = 0;
  for (Index j = 0; j < n; ++j) {
    path.w[static_cast<std::size_t>(j) + 1] = path.w[static_cast<std::size_t>(j)] + tree.kids[static_cast<std::size_t>(j)] - 1;
  }
  return path;
}

PlaneTree decode(const LukasiewiczPath& path) {
  const Index n = path.steps();
  if (n < 1) throw InvalidPath("path must have at least one step");
  if (path.w[0] != 0) throw InvalidPath("W_0 != 0");
  if (path.w[static_cast<std::size_t>(n)] != -1) throw InvalidPath("W_n != -1");
  PlaneTree tree;
  tree.kids.resize(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const Index inc = path.w[static_cast<std::size_t>(j) + 1] - path.w[static_cast<std::size_t>(j)];
    if (inc < -1) throw InvalidPath("increment < -1 at step " + std::to_string(j));
    if (j < n && path.w[static_cast<std::size_t>(j)] < 0)
      throw InvalidPath("W_j < 0 at j = " + std::to_string(j));
    tree.kids[static_cast<std::size_t>(j)] = inc + 1;
  }
  return tree;
}

bool is_valid_tree(const PlaneTree& tree) {
  const Index n = tree.size();
  if (n == 0) return false;
  Index sum = 0;
  for (Index j = 0; j < n; ++j) {
    const Index k = tree.kids[static_cast<std::size_t>(j)];
    if (k < 0) return false;
    sum += k;
    if (j < n - 1 && sum < j + 1) return false;  // preorder prefix feasibility
  }
  return sum == n - 1;
}

Index height(const PlaneTree& tree) {
  // Follow the preorder with an explicit stack of remaining-children counts.
  const Index n = tree.size();
  std::vector<Index> remaining;
  remaining.reserve(64);
  Index best = 0;
  for (Index j = 0; j < n; ++j) {
    const Index depth = static_cast<Index>(remaining.size());
    if (depth > best) best = depth;
    const Index k = tree.kids[static_cast<std::size_t>(j)];
    if (k > 0) {
      remaining.push_back(k);
    } else {
      while (!remaining.empty() && --remaining.back() == 0) remaining.pop_back();
    }
  }
  return best;
}

std::vector<Index> subtree_sizes(const LukasiewiczPath& path) {
  const Index n = path.steps();
  std::vector<Index> sizes(static_cast<std::size_t>(n));
  // next smaller value to the right; W_n = -1 is a universal sentinel
  std::vector<Index> stack;
  stack.reserve(64);
  for (Index j = n; j >= 0; --j) {
    const Index wj = path.w[static_cast<std::size_t>(j)];
    while (!stack.empty() && path.w[static_cast<std::size_t>(stack.back())] >= wj) stack.pop_back();
    if (j < n) sizes[static_cast<std::size_t>(j)] = (stack.empty() ? n : stack.back()) - j - 1;
    stack.push_back(j);
  }
  return sizes;
}

bool is_ancestor(const LukasiewiczPath& path, Index i, Index j) {
  const Index n = path.steps();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw IndexOutOfRange("is_ancestor(" + std::to_string(i) + ", " + std::to_string(j) + ") on n = " + std::to_string(n));
  if (i > j) return false;
  const Index wi = path.w[static_cast<std::size_t>(i)];
  for (Index t = i; t <= j; ++t) {
    if (path.w[static_cast<std::size_t>(t)] < wi) return false;
  }
  return true;
}

std::vector<Index> parent_vector(const PlaneTree& tree) {
  const Index n = tree.size();
  std::vector<Index> parent(static_cast<std::size_t>(n), -1);
  std::vector<std::pair<Index, Index>> stack;  // (vertex, remaining children)
  for (Index j = 0; j < n; ++j) {
    if (!stack.empty()) {
      parent[static_cast<std::size_t>(j)] = stack.back().first;
      if (--stack.back().second == 0) stack.pop_back();
    }
    const Index k = tree.kids[static_cast<std::size_t>(j)];
    if (k > 0) stack.emplace_back(j, k);
  }
  return parent;
}

namespace {

void gen_trees(Index slots, Index budget, std::vector<Index>& kids, std::vector<PlaneTree>& out) {
  // slots = vertices still to emit, budget = children still assignable.
  // A partial prefix extends to a valid preorder iff 0 <= budget' <= slots'-1
  // (and budget' == 0 once slots' == 0).
  if (slots == 0) {
    if (budget == 0) out.push_back(PlaneTree{kids});
    return;
  }
  for (Index k = 0; k <= budget; ++k) {
    const Index rest = budget - k;
    if (slots == 1 ? rest != 0 : rest > slots - 2) continue;
    kids.push_back(k);
    gen_trees(slots - 1, rest, kids, out);
    kids.pop_back();
  }
}

}  // namespace

std::vector<PlaneTree> enumerate_plane_trees(Index n) {
  if (n < 1 || n > 14) throw TooLarge("enumerate_plane_trees limited to 1 <= n <= 14");
  std::vector<PlaneTree> out;
  std::vector<Index> kids;
  kids.reserve(static_cast<std::size_t>(n));
  // root consumes one vertex; total children over all vertices is n-1
  gen_trees(n, n - 1, kids, out);
  return out;
}

}  // namespace nclam
