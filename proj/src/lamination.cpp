#include "nclam/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nclam/errors.hpp"
#include "nclam/geom.hpp"

namespace nclam {

void Lamination::add(Index p, Index q) {
  p = ((p % m) + m) % m;
  q = ((q % m) + m) % m;
  if (p == q) return;
  if (p > q) std::swap(p, q);
  chords.emplace_back(p, q);
}

void Lamination::finish() {
  std::sort(chords.begin(), chords.end());
  chords.erase(std::unique(chords.begin(), chords.end()), chords.end());
}

double JumpsLabelling::value_at(Index vertex) const {
  switch (rule) {
    case Rule::Zero:
      return 0.0;
    case Rule::Uniform:
      return Rng::from_seed(seed).derive("jump", static_cast<std::uint64_t>(vertex)).uniform01();
    case Rule::Explicit: {
      const auto it = values.find(vertex);
      return it == values.end() ? 0.0 : it->second;
    }
  }
  return 0.0;
}

Lamination lamination_from_tree(const LukasiewiczPath& path) {
  const Index n = path.steps();
  Lamination lam;
  lam.m = n;
  if (n < 2) return lam;
  const std::vector<Index> sizes = subtree_sizes(path);
  lam.chords.reserve(static_cast<std::size_t>(n) - 1);
  for (Index i = 1; i < n; ++i) {
    lam.add(i, i + sizes[static_cast<std::size_t>(i)] + 1);
  }
  lam.finish();
  return lam;
}

std::vector<Face> faces(const LukasiewiczPath& path) {
  const Index n = path.steps();
  const PlaneTree tree = decode(path);
  const std::vector<Index> sizes = subtree_sizes(path);
  std::vector<Face> out;
  for (Index u = 0; u < n; ++u) {
    const Index k = tree.kids[static_cast<std::size_t>(u)];
    if (k < 1) continue;
    Face f;
    f.jump_index = u;
    f.boundary.reserve(static_cast<std::size_t>(k) + 2);
    f.boundary.push_back(u);
    Index child = u + 1;
    for (Index t = 0; t < k; ++t) {
      f.boundary.push_back(child);
      child += sizes[static_cast<std::size_t>(child)] + 1;
    }
    f.boundary.push_back(u + sizes[static_cast<std::size_t>(u)] + 1);  // closing time, may equal n
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Index> resolve_labels(const PlaneTree& tree, const Decoration& dec) {
  const Index n = tree.size();
  if (static_cast<Index>(dec.l.size()) != n - 1)
    throw IncompatibleLabelling("decoration size " + std::to_string(dec.l.size()) + " for n = " + std::to_string(n));
  std::vector<Index> labels(static_cast<std::size_t>(n), 0);
  labels[0] = tree.kids[0];  // special = the root's own position on the circle
  for (Index u = 1; u < n; ++u) {
    const Index l = dec.l[static_cast<std::size_t>(u) - 1];
    if (l < 0 || l > tree.kids[static_cast<std::size_t>(u)])
      throw IncompatibleLabelling("label out of range at vertex " + std::to_string(u));
    labels[static_cast<std::size_t>(u)] = l;
  }
  return labels;
}

std::vector<Index> resolve_labels(const PlaneTree& tree, const JumpsLabelling& labelling) {
  const Index n = tree.size();
  std::vector<Index> labels(static_cast<std::size_t>(n), 0);
  for (Index u = 0; u < n; ++u) {
    const Index k = tree.kids[static_cast<std::size_t>(u)];
    if (k < 1) continue;
    const double x = labelling.value_at(u);
    if (x < 0.0 || x > 1.0) throw IncompatibleLabelling("labelling value outside [0,1] at vertex " + std::to_string(u));
    labels[static_cast<std::size_t>(u)] = std::min<Index>(k, static_cast<Index>(std::floor(x * static_cast<double>(k + 1))));
  }
  return labels;
}

Lamination triangulate(const LukasiewiczPath& path, const std::vector<Index>& labels) {
  const Index n = path.steps();
  Lamination lam;
  lam.m = n;
  if (n < 2) return lam;
  if (static_cast<Index>(labels.size()) != n) throw IncompatibleLabelling("labels size != n");

  const PlaneTree tree = decode(path);
  const std::vector<Index> sizes = subtree_sizes(path);

  // subtree-closing chords
  for (Index i = 1; i < n; ++i) lam.add(i, i + sizes[static_cast<std::size_t>(i)] + 1);
  // the marked circle itself
  for (Index i = 0; i < n; ++i) lam.add(i, i + 1);
  // face fans
  for (Index u = 0; u < n; ++u) {
    const Index k = tree.kids[static_cast<std::size_t>(u)];
    if (k < 1) continue;
    const Index l = labels[static_cast<std::size_t>(u)];
    if (l < 0 || l > k) throw IncompatibleLabelling("label out of range at vertex " + std::to_string(u));
    std::vector<Index> boundary;
    boundary.reserve(static_cast<std::size_t>(k) + 2);
    boundary.push_back(u);
    Index child = u + 1;
    for (Index t = 0; t < k; ++t) {
      boundary.push_back(child);
      child += sizes[static_cast<std::size_t>(child)] + 1;
    }
    boundary.push_back(u + sizes[static_cast<std::size_t>(u)] + 1);
    const Index special = boundary[static_cast<std::size_t>(l) + 1];  // j_{l+1}, or the closing time when l = k
    for (Index r : boundary) {
      if (r != special) lam.add(special, r);
    }
  }
  lam.finish();
  return lam;
}

Lamination triangulate(const LukasiewiczPath& path, const Decoration& dec) {
  return triangulate(path, resolve_labels(decode(path), dec));
}

Lamination triangulate(const LukasiewiczPath& path, const JumpsLabelling& labelling) {
  return triangulate(path, resolve_labels(decode(path), labelling));
}

namespace {

bool noncrossing_family(const std::vector<Chord>& chords) {
  // nested-or-disjoint sweep over normalized intervals
  std::vector<Chord> iv = chords;
  std::sort(iv.begin(), iv.end(), [](const Chord& x, const Chord& y) {
    return x.first != y.first ? x.first < y.first : x.second > y.second;
  });
  std::vector<Index> open;
  for (const auto& [lo, hi] : iv) {
    while (!open.empty() && open.back() <= lo) open.pop_back();
    if (!open.empty() && hi > open.back()) return false;
    open.push_back(hi);
  }
  return true;
}

}  // namespace

bool is_maximal(const Lamination& lam, const std::vector<Index>& points) {
  std::vector<Index> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const Index P = static_cast<Index>(pts.size());
  for (const auto& [p, q] : lam.chords) {
    if (!std::binary_search(pts.begin(), pts.end(), p) || !std::binary_search(pts.begin(), pts.end(), q))
      throw DomainError("chord endpoint outside the marked set");
  }
  if (P <= 1) return lam.chords.empty();
  std::vector<Chord> chords = lam.chords;
  std::sort(chords.begin(), chords.end());
  if (std::adjacent_find(chords.begin(), chords.end()) != chords.end()) return false;
  if (!noncrossing_family(chords)) return false;
  // a noncrossing, duplicate-free family extends iff it has fewer chords
  // than a full polygon triangulation
  return static_cast<Index>(chords.size()) == 2 * P - 3;
}

namespace {

std::vector<std::pair<Vec2, Vec2>> chord_segments(const Lamination& lam) {
  std::vector<std::pair<Vec2, Vec2>> segs;
  segs.reserve(lam.chords.size());
  for (const auto& [p, q] : lam.chords) {
    segs.emplace_back(circle_point(p, lam.m), circle_point(q, lam.m));
  }
  return segs;
}

double directed_hausdorff(const std::vector<std::pair<Vec2, Vec2>>& from, const SegmentGrid& to, double delta) {
  double worst = 0.0;
  for (const auto& [a, b] : from) {
    const double len = std::sqrt(dist2(a, b));
    const int steps = std::max(1, static_cast<int>(std::ceil(len / delta)));
    for (int t = 0; t <= steps; ++t) {
      const double s = static_cast<double>(t) / static_cast<double>(steps);
      const Vec2 p{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      worst = std::max(worst, to.distance(p));
    }
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const Lamination& a, const Lamination& b, double delta) {
  if (!(delta > 0.0)) throw DomainError("hausdorff_distance needs delta > 0");
  const auto sa = chord_segments(a);
  const auto sb = chord_segments(b);
  if (sa.empty() && sb.empty()) return 0.0;
  if (sa.empty() || sb.empty()) return 2.0;  // against the empty set: disk diameter bound
  const SegmentGrid ga(sa);
  const SegmentGrid gb(sb);
  return std::max(directed_hausdorff(sa, gb, delta), directed_hausdorff(sb, ga, delta));
}

Lamination nc_to_lamination(const NoncrossingTree& nc) {
  Lamination lam;
  lam.m = nc.n;
  for (const auto& [p, q] : nc.edges) lam.add(p, q);
  lam.finish();
  return lam;
}

}  // namespace nclam
