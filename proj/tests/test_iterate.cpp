#include <doctest.h>

#include <cmath>

#include "nclam/errors.hpp"
#include "nclam/iterate.hpp"
#include "nclam/samplers.hpp"
#include "nclam/tree.hpp"

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

}  // namespace

TEST_CASE("alpha vector validation") {
  const AlphaVector empty{{}};
  const AlphaVector two_first{{2.0, 1.5}};
  const AlphaVector low{{0.9}};
  const AlphaVector good{{1.3, 1.7, 2.0}};
  const AlphaVector single{{1.1}};
  CHECK_THROWS_AS(empty.validate(), DomainError);
  CHECK_THROWS_AS(two_first.validate(), DomainError);  // 2 only allowed last
  CHECK_THROWS_AS(low.validate(), DomainError);
  CHECK_NOTHROW(good.validate());
  CHECK_NOTHROW(single.validate());
}

TEST_CASE("dim formula") {
  CHECK(dim_formula(AlphaVector{{1.5}}) == doctest::Approx(2.0 - 1.0 / 1.5));
  CHECK(dim_formula(AlphaVector{{1.2, 2.0}}) == doctest::Approx(1.0 + 5.0 / 12.0));
  // order within the non-terminal prefix does not change the value here
  CHECK(dim_formula(AlphaVector{{1.1, 1.2, 2.0}}) == doctest::Approx(dim_formula(AlphaVector{{1.2, 1.1, 2.0}})));
}

TEST_CASE("compose with empty inserts is the identity") {
  Rng rng = Rng::from_seed(5);
  for (Index n = 3; n <= 8; ++n) {
    for (const PlaneTree& tree : enumerate_plane_trees(n)) {
      const DecoratedLamination base = decorate(encode(tree));
      const DecoratedLamination out = compose(base, std::map<std::size_t, Lamination>{});
      CHECK(out.lam == base.lam);
      CHECK(out.face_decorations == base.face_decorations);
    }
  }
}

TEST_CASE("composing a face with the chord joining its extremes deduplicates") {
  // base: one chord on m = 4 splitting off the face (0,1,2); inserting the
  // single chord joining the insert's extreme points maps onto {0,2}
  DecoratedLamination base;
  base.lam.m = 4;
  base.lam.add(0, 2);
  base.lam.finish();
  base.face_decorations = {{0, 1, 2}};
  // an insert at resolution 3 whose only chord joins its extremes 0 and 2
  Lamination ins;
  ins.m = 3;
  ins.add(0, 2);
  ins.finish();
  const DecoratedLamination out = compose(base, std::map<std::size_t, Lamination>{{0, ins}});
  CHECK(out.lam.chords == base.lam.chords);

  // the triangle insert adds the two missing sides
  Lamination tri;
  tri.m = 3;
  tri.add(0, 1);
  tri.add(1, 2);
  tri.add(2, 0);
  tri.finish();
  const DecoratedLamination out2 = compose(base, std::map<std::size_t, Lamination>{{0, tri}});
  CHECK(out2.lam.chords == std::vector<Chord>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("resolution mismatch is rejected") {
  DecoratedLamination base;
  base.lam.m = 4;
  base.lam.add(0, 2);
  base.lam.finish();
  base.face_decorations = {{0, 1, 2}};
  Lamination wrong;
  wrong.m = 5;
  wrong.add(0, 2);
  wrong.finish();
  CHECK_THROWS_AS(compose(base, std::map<std::size_t, Lamination>{{0, wrong}}), ResolutionMismatch);
}

TEST_CASE("random compositions stay noncrossing") {
  const StableOffspring law(1.4);
  Rng rng = Rng::from_seed(17);
  for (int rep = 0; rep < 30; ++rep) {
    const Index n = 20 + static_cast<Index>(rng.below(40));
    DecoratedLamination base = decorate(encode(sample_bgw_conditioned(law, n, rng)));
    std::map<std::size_t, DecoratedLamination> inserts;
    for (std::size_t f = 0; f < base.face_decorations.size(); ++f) {
      if (rng.uniform01() < 0.3) continue;
      const Index beta = static_cast<Index>(base.face_decorations[f].size());
      inserts[f] = decorate(encode(sample_bgw_conditioned(law, beta, rng)));
    }
    const DecoratedLamination out = compose(base, inserts);
    CHECK(noncrossing_brute(out.lam));
    CHECK(out.lam.chords.size() >= base.lam.chords.size());
  }
}

TEST_CASE("iterated sampling adds chords level by level") {
  Rng rng = Rng::from_seed(23);
  const Lamination one = sample_iterated(AlphaVector{{1.3}}, 300, rng);
  Rng rng2 = Rng::from_seed(23);
  const Lamination two = sample_iterated(AlphaVector{{1.3, 1.7}}, 300, rng2);
  CHECK(noncrossing_brute(two));
  CHECK(two.chords.size() > one.chords.size());
  // level 1 of the two-level sample is the single-level sample (same stream)
  for (const Chord& c : one.chords) {
    CHECK(std::binary_search(two.chords.begin(), two.chords.end(), c));
  }
}

TEST_CASE("single-level iterate equals the plain lamination of the same stream") {
  Rng a = Rng::from_seed(31);
  const Lamination lam = sample_iterated(AlphaVector{{1.5}}, 200, a);
  Rng b = Rng::from_seed(31);
  Rng level = b.derive("level", 1);
  const StableOffspring law(1.5);
  const Lamination direct = lamination_from_tree(encode(sample_bgw_conditioned(law, 200, level)));
  CHECK(lam == direct);
}

TEST_CASE("alpha = 2 final level is accepted") {
  Rng rng = Rng::from_seed(37);
  const Lamination lam = sample_iterated(AlphaVector{{1.4, 2.0}}, 120, rng);
  CHECK(noncrossing_brute(lam));
  CHECK(lam.m == 120);
}
