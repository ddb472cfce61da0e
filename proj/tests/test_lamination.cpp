#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "nclam/errors.hpp"
#include "nclam/lamination.hpp"
#include "nclam/noncrossing.hpp"
#include "nclam/samplers.hpp"

using namespace nclam;

namespace {

bool noncrossing_brute(const Lamination& lam) {
  for (std::size_t i = 0; i < lam.chords.size(); ++i) {
    for (std::size_t j = i + 1; j < lam.chords.size(); ++j) {
      if (chords_cross(lam.chords[i], lam.chords[j])) return false;
    }
  }
  return true;
}

std::vector<Index> endpoints_of(const Lamination& lam) {
  std::vector<Index> pts;
  for (const auto& [p, q] : lam.chords) {
    pts.push_back(p);
    pts.push_back(q);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// addability scan: the definitional maximality test
bool is_maximal_brute(const Lamination& lam, const std::vector<Index>& points) {
  std::set<Chord> have(lam.chords.begin(), lam.chords.end());
  if (!noncrossing_brute(lam)) return false;
  if (have.size() != lam.chords.size()) return false;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const Chord cand{points[a], points[b]};
      if (have.count(cand)) continue;
      bool crosses = false;
      for (const Chord& c : lam.chords) {
        if (chords_cross(cand, c)) {
          crosses = true;
          break;
        }
      }
      if (!crosses) return false;
    }
  }
  return true;
}

PlaneTree random_tree(Index n, Rng& rng) {
  std::vector<Index> kids(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n - 1; ++i) ++kids[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)))];
  Index s = 0, min_s = 0, shift = 0;
  for (Index j = 0; j < n; ++j) {
    s += kids[static_cast<std::size_t>(j)] - 1;
    if (s < min_s) {
      min_s = s;
      shift = j + 1;
    }
  }
  std::vector<Index> rot(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) rot[static_cast<std::size_t>(j)] = kids[static_cast<std::size_t>((shift + j) % n)];
  return PlaneTree{rot};
}

}  // namespace

TEST_CASE("lamination from tree") {
  const Lamination star = lamination_from_tree(LukasiewiczPath{{0, 1, 0, -1}});
  CHECK(star.chords == std::vector<Chord>{{0, 2}, {1, 2}});
  CHECK(lamination_from_tree(LukasiewiczPath{{0, -1}}).chords.empty());
}

TEST_CASE("lamination chords are always noncrossing") {
  for (Index n = 2; n <= 8; ++n) {
    for (const PlaneTree& tree : enumerate_plane_trees(n)) {
      CHECK(noncrossing_brute(lamination_from_tree(encode(tree))));
    }
  }
}

TEST_CASE("faces") {
  const auto fs = faces(encode(PlaneTree{{2, 0, 0}}));
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].jump_index == 0);
  CHECK(fs[0].boundary == std::vector<Index>{0, 1, 2, 3});

  const auto fs2 = faces(encode(PlaneTree{{1, 0}}));
  REQUIRE(fs2.size() == 1);
  CHECK(fs2[0].boundary == std::vector<Index>{0, 1, 2});

  // handshake: sum over faces of (|boundary| - 2) = n - 1
  for (Index n = 2; n <= 8; ++n) {
    for (const PlaneTree& tree : enumerate_plane_trees(n)) {
      Index total = 0;
      for (const Face& f : faces(encode(tree))) total += static_cast<Index>(f.boundary.size()) - 2;
      CHECK(total == n - 1);
    }
  }
}

TEST_CASE("triangulate base cases") {
  // full triangle from the 3-star with leftmost labels
  const PlaneTree star{{2, 0, 0}};
  const Lamination tri = triangulate(encode(star), std::vector<Index>{0, 0, 0});
  CHECK(tri.chords == std::vector<Chord>{{0, 1}, {0, 2}, {1, 2}});
  // single edge collapses to one chord whatever the label
  for (Index l = 0; l <= 1; ++l) {
    const Lamination single = triangulate(encode(PlaneTree{{1, 0}}), std::vector<Index>{l, 0});
    CHECK(single.chords == std::vector<Chord>{{0, 1}});
  }
}

TEST_CASE("zero labelling takes the leftmost vertex as special") {
  // chain of 3: face of the root triangulated from j_1 = 1
  const PlaneTree chain{{1, 1, 0}};
  const auto labels = resolve_labels(chain, JumpsLabelling::zero());
  CHECK(labels == std::vector<Index>{0, 0, 0});
  const Lamination tri = triangulate(encode(chain), JumpsLabelling::zero());
  CHECK(static_cast<Index>(tri.chords.size()) == 3);
}

TEST_CASE("labelling bridge maps uniform values to uniform labels") {
  const PlaneTree tree{{3, 0, 0, 0}};
  int counts[4] = {0, 0, 0, 0};
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    const auto labels = resolve_labels(tree, JumpsLabelling::uniform(seed));
    ++counts[labels[0]];
  }
  for (const int c : counts) CHECK(std::abs(c / 4000.0 - 0.25) < 0.05);
}

TEST_CASE("triangulation is noncrossing and maximal, exhaustive decorations n <= 8") {
  for (Index n = 2; n <= 8; ++n) {
    for (const PlaneTree& tree : enumerate_plane_trees(n)) {
      const LukasiewiczPath path = encode(tree);
      Decoration dec;
      dec.l.assign(static_cast<std::size_t>(n) - 1, 0);
      std::optional<std::size_t> count;
      for (;;) {
        const Lamination tri = triangulate(path, dec);
        CHECK(noncrossing_brute(tri));
        CHECK(is_maximal(tri, endpoints_of(tri)));
        CHECK(is_maximal_brute(tri, endpoints_of(tri)));
        if (count) CHECK(*count == tri.chords.size());
        count = tri.chords.size();
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
      CHECK(*count == static_cast<std::size_t>(2 * n - 3));
    }
  }
}

TEST_CASE("triangulation stays noncrossing on random larger trees") {
  Rng rng = Rng::from_seed(55);
  for (int rep = 0; rep < 50; ++rep) {
    const Index n = 30 + static_cast<Index>(rng.below(200));
    const PlaneTree tree = random_tree(n, rng);
    const Lamination tri = triangulate(encode(tree), uniform_decoration(tree, rng));
    CHECK(noncrossing_brute(tri));
    CHECK(static_cast<Index>(tri.chords.size()) == 2 * n - 3);
    CHECK(is_maximal(tri, endpoints_of(tri)));
  }
}

TEST_CASE("is_maximal examples and equivalence with the addability scan") {
  Lamination triangle;
  triangle.m = 3;
  triangle.add(0, 1);
  triangle.add(1, 2);
  triangle.add(2, 0);
  triangle.finish();
  CHECK(is_maximal(triangle, {0, 1, 2}));

  Lamination sparse;
  sparse.m = 4;
  sparse.add(0, 2);
  sparse.finish();
  CHECK_FALSE(is_maximal(sparse, {0, 1, 2, 3}));

  Rng rng = Rng::from_seed(66);
  for (int rep = 0; rep < 100; ++rep) {
    const Index n = 4 + static_cast<Index>(rng.below(8));
    const PlaneTree tree = random_tree(n, rng);
    Lamination lam = triangulate(encode(tree), uniform_decoration(tree, rng));
    // randomly drop chords and compare both maximality tests
    while (!lam.chords.empty() && rng.uniform01() < 0.7) {
      lam.chords.erase(lam.chords.begin() + static_cast<std::ptrdiff_t>(rng.below(lam.chords.size())));
    }
    std::vector<Index> pts;
    for (Index p = 0; p < n; ++p) pts.push_back(p);
    CHECK(is_maximal(lam, pts) == is_maximal_brute(lam, pts));
  }
}

TEST_CASE("hausdorff distance basics") {
  Lamination horizontal;
  horizontal.m = 4;
  horizontal.add(0, 2);
  horizontal.finish();
  Lamination vertical;
  vertical.m = 4;
  vertical.add(1, 3);
  vertical.finish();
  CHECK(hausdorff_distance(horizontal, horizontal, 1e-3) <= 1e-12);
  const double d = hausdorff_distance(horizontal, vertical, 1e-3);
  CHECK(std::abs(d - 1.0) < 2e-3);  // endpoint of one diameter to the other
  CHECK_THROWS_AS(hausdorff_distance(horizontal, vertical, 0.0), DomainError);
}

TEST_CASE("hausdorff distance is symmetric and nearly a metric") {
  Rng rng = Rng::from_seed(8);
  const double delta = 1e-3;
  for (int rep = 0; rep < 10; ++rep) {
    const Index n = 20 + static_cast<Index>(rng.below(30));
    Lamination a = lamination_from_tree(encode(random_tree(n, rng)));
    Lamination b = lamination_from_tree(encode(random_tree(n, rng)));
    Lamination c = lamination_from_tree(encode(random_tree(n, rng)));
    const double ab = hausdorff_distance(a, b, delta);
    const double ba = hausdorff_distance(b, a, delta);
    CHECK(ab == ba);  // symmetric by construction
    const double ac = hausdorff_distance(a, c, delta);
    const double cb = hausdorff_distance(c, b, delta);
    CHECK(ab <= ac + cb + 3.0 * delta);
  }
}

TEST_CASE("nc_to_lamination") {
  NoncrossingTree nc;
  nc.n = 3;
  nc.edges = {{0, 1}, {0, 2}};
  const Lamination lam = nc_to_lamination(nc);
  CHECK(lam.m == 3);
  CHECK(lam.chords.size() == 2);
  NoncrossingTree point;
  point.n = 1;
  CHECK(nc_to_lamination(point).chords.empty());
}

TEST_CASE("lamination add drops degenerates and wraps") {
  Lamination lam;
  lam.m = 5;
  lam.add(7, 2);  // 7 mod 5 = 2: degenerate
  lam.add(4, 5);  // 5 mod 5 = 0
  lam.finish();
  CHECK(lam.chords == std::vector<Chord>{{0, 4}});
}
