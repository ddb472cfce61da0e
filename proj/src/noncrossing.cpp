#include "nclam/noncrossing.hpp"

#include <algorithm>
#include <string>

#include "nclam/errors.hpp"

namespace nclam {

void NoncrossingTree::normalize() {
  for (auto& [p, q] : edges) {
    if (p > q) std::swap(p, q);
  }
  std::sort(edges.begin(), edges.end());
}

bool chords_cross(std::pair<Index, Index> a, std::pair<Index, Index> b) {
  if (a.first > a.second) std::swap(a.first, a.second);
  if (b.first > b.second) std::swap(b.first, b.second);
  if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second)
    return false;  // sharing an endpoint never counts as crossing
  const bool b1_inside = a.first < b.first && b.first < a.second;
  const bool b2_inside = a.first < b.second && b.second < a.second;
  return b1_inside != b2_inside;
}

namespace {

// Stack sweep over normalized intervals: noncrossing on the circle reduces
// to pairwise nested-or-disjoint on [0, n).
bool intervals_laminar(std::vector<std::pair<Index, Index>> iv) {
  std::sort(iv.begin(), iv.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : x.second > y.second;
  });
  std::vector<Index> open;  // stack of hi endpoints
  for (const auto& [lo, hi] : iv) {
    while (!open.empty() && open.back() <= lo) open.pop_back();
    if (!open.empty() && hi > open.back()) return false;
    open.push_back(hi);
  }
  return true;
}

}  // namespace

NoncrossingTree embed(const PlaneTree& tree, const Decoration& dec) {
  const Index n = tree.size();
  if (static_cast<Index>(dec.l.size()) != n - 1)
    throw IncompatibleDecoration("decoration has " + std::to_string(dec.l.size()) + " labels for n = " + std::to_string(n));

  const std::vector<Index> sizes = subtree_sizes(encode(tree));
  std::vector<Index> arc_start(static_cast<std::size_t>(n), 0);
  std::vector<Index> pos(static_cast<std::size_t>(n), 0);

  for (Index u = 0; u < n; ++u) {
    const Index k = tree.kids[static_cast<std::size_t>(u)];
    const Index l = u == 0 ? 0 : dec.l[static_cast<std::size_t>(u) - 1];
    if (l < 0 || l > k)
      throw IncompatibleDecoration("label " + std::to_string(l) + " out of range at vertex " + std::to_string(u));
    Index cursor = arc_start[static_cast<std::size_t>(u)];
    Index child = u + 1;
    for (Index t = 1; t <= k; ++t) {
      const Index block = 1 + sizes[static_cast<std::size_t>(child)];
      if (t == l + 1) cursor += 1;  // the vertex itself sits before this block
      arc_start[static_cast<std::size_t>(child)] = cursor;
      cursor += block;
      child += block;
    }
    if (l == k) {
      pos[static_cast<std::size_t>(u)] = cursor;
    } else {
      // position = arc start + sizes of the first l blocks
      Index p = arc_start[static_cast<std::size_t>(u)];
      Index c2 = u + 1;
      for (Index t = 1; t <= l; ++t) {
        p += 1 + sizes[static_cast<std::size_t>(c2)];
        c2 += 1 + sizes[static_cast<std::size_t>(c2)];
      }
      pos[static_cast<std::size_t>(u)] = p;
    }
  }

  NoncrossingTree nc;
  nc.n = n;
  const std::vector<Index> parent = parent_vector(tree);
  nc.edges.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (Index u = 1; u < n; ++u) {
    nc.edges.emplace_back(pos[static_cast<std::size_t>(parent[static_cast<std::size_t>(u)])], pos[static_cast<std::size_t>(u)]);
  }
  nc.normalize();
  return nc;
}

std::pair<PlaneTree, Decoration> extract(const NoncrossingTree& nc) {
  const Index n = nc.n;
  if (n < 1) throw NotATree("empty vertex set");
  if (static_cast<Index>(nc.edges.size()) != n - 1)
    throw NotATree("expected " + std::to_string(n - 1) + " edges, got " + std::to_string(nc.edges.size()));

  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (const auto& [p, q] : nc.edges) {
    if (p < 0 || q < 0 || p >= n || q >= n || p == q) throw NotATree("edge endpoints out of range");
    adj[static_cast<std::size_t>(p)].push_back(q);
    adj[static_cast<std::size_t>(q)].push_back(p);
  }
  if (!intervals_laminar(nc.edges)) throw CrossingEdges("chords cross");
  for (auto& a : adj) std::sort(a.begin(), a.end());

  PlaneTree tree;
  tree.kids.assign(static_cast<std::size_t>(n), 0);
  Decoration dec;
  dec.l.assign(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0);

  // preorder DFS from position 0, children in ascending position order
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<Index, Index>> stack;  // (position, parent position)
  stack.emplace_back(0, -1);
  Index preorder = 0;
  while (!stack.empty()) {
    const auto [v, par] = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(v)]) throw NotATree("cycle through position " + std::to_string(v));
    seen[static_cast<std::size_t>(v)] = 1;
    const Index at = preorder++;
    Index k = 0;
    Index left = 0;
    for (auto it = adj[static_cast<std::size_t>(v)].rbegin(); it != adj[static_cast<std::size_t>(v)].rend(); ++it) {
      if (*it == par) continue;
      ++k;
      if (*it < v) ++left;  // strictly inside the clockwise arc (0, v)
      stack.emplace_back(*it, v);
    }
    tree.kids[static_cast<std::size_t>(at)] = k;
    if (at > 0) dec.l[static_cast<std::size_t>(at) - 1] = left;
  }
  if (preorder != n) throw NotATree("not connected");
  return {std::move(tree), std::move(dec)};
}

Decoration uniform_decoration(const PlaneTree& tree, Rng& rng) {
  const Index n = tree.size();
  Decoration dec;
  dec.l.resize(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (Index j = 1; j < n; ++j) {
    dec.l[static_cast<std::size_t>(j) - 1] =
        static_cast<Index>(rng.below(static_cast<std::uint64_t>(tree.kids[static_cast<std::size_t>(j)]) + 1));
  }
  return dec;
}

NoncrossingTree theta_uniform(const PlaneTree& tree, Rng& rng) {
  return embed(tree, uniform_decoration(tree, rng));
}

bool validate(const NoncrossingTree& nc) {
  if (nc.n < 1) return false;
  if (static_cast<Index>(nc.edges.size()) != nc.n - 1) return false;
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(nc.n));
  for (const auto& [p, q] : nc.edges) {
    if (p < 0 || q < 0 || p >= nc.n || q >= nc.n || p == q) return false;
    adj[static_cast<std::size_t>(p)].push_back(q);
    adj[static_cast<std::size_t>(q)].push_back(p);
  }
  // connectivity
  std::vector<char> seen(static_cast<std::size_t>(nc.n), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index visited = 0;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    ++visited;
    for (Index w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  if (visited != nc.n) return false;
  return intervals_laminar(nc.edges);
}

std::vector<NoncrossingTree> enumerate_all(Index n, const std::optional<std::vector<int>>& degrees) {
  if (n < 1 || n > 12) throw TooLarge("enumerate_all limited to 1 <= n <= 12");
  std::vector<NoncrossingTree> out;
  if (n == 1) {
    out.push_back(NoncrossingTree{1, {}});
    return out;
  }
  std::vector<char> allowed;
  if (degrees) {
    allowed.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int d : *degrees) {
      if (d >= 1 && d <= n) allowed[static_cast<std::size_t>(d)] = 1;
    }
  }
  const auto deg_ok = [&](Index d) { return !degrees || (d <= n && allowed[static_cast<std::size_t>(d)]); };

  for (const PlaneTree& tree : enumerate_plane_trees(n)) {
    bool ok = deg_ok(tree.kids[0]);  // root degree is its children count
    for (Index u = 1; ok && u < n; ++u) ok = deg_ok(tree.kids[static_cast<std::size_t>(u)] + 1);
    if (!ok) continue;

    // odometer over all decorations
    Decoration dec;
    dec.l.assign(static_cast<std::size_t>(n) - 1, 0);
    for (;;) {
      out.push_back(embed(tree, dec));
      Index j = 0;
      while (j < n - 1) {
        if (dec.l[static_cast<std::size_t>(j)] < tree.kids[static_cast<std::size_t>(j) + 1]) {
          ++dec.l[static_cast<std::size_t>(j)];
          break;
        }
        dec.l[static_cast<std::size_t>(j)] = 0;
        ++j;
      }
      if (j == n - 1) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SimplyGeneratedSampler::SimplyGeneratedSampler(const WeightSeq& w, Index n)
    : n_(n), pair_(build_pair(w, solve_critical_b(w))), shape_(pair_, n) {}

PlaneTree SimplyGeneratedSampler::sample_shape(Rng& rng, std::uint64_t budget) const {
  return shape_.sample(rng, budget);
}

NoncrossingTree SimplyGeneratedSampler::sample(Rng& rng, std::uint64_t budget) const {
  const PlaneTree shape = shape_.sample(rng, budget);
  return theta_uniform(shape, rng);
}

NoncrossingTree sample_simply_generated(const WeightSeq& w, Index n, Rng& rng, std::uint64_t budget) {
  return SimplyGeneratedSampler(w, n).sample(rng, budget);
}

}  // namespace nclam
