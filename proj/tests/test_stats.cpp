#include <doctest.h>

#include <cmath>

#include "nclam/errors.hpp"
#include "nclam/offspring.hpp"
#include "nclam/rng.hpp"
#include "nclam/stats.hpp"

using namespace nclam;

TEST_CASE("longest chord") {
  Lamination lam;
  lam.m = 8;
  lam.add(0, 4);
  lam.finish();
  CHECK(longest_chord(lam) == doctest::Approx(0.5));
  Lamination quarter;
  quarter.m = 8;
  quarter.add(0, 2);
  quarter.finish();
  CHECK(longest_chord(quarter) == doctest::Approx(0.25));
  Lamination mixed;
  mixed.m = 10;
  mixed.add(0, 4);
  mixed.add(1, 9);
  mixed.finish();
  CHECK(longest_chord(mixed) == doctest::Approx(0.4));
  Lamination empty;
  empty.m = 4;
  CHECK_THROWS_AS(longest_chord(empty), EmptySet);
}

TEST_CASE("brownian longest chord cdf endpoints and normalization") {
  CHECK(brownian_longest_chord_cdf(1.0 / 3.0) == 0.0);
  CHECK(brownian_longest_chord_cdf(0.2) == 0.0);
  CHECK(std::abs(brownian_longest_chord_cdf(0.5) - 1.0) < 1e-8);
  CHECK(std::abs(brownian_longest_chord_cdf(0.6) - 1.0) < 1e-8);
}

TEST_CASE("brownian longest chord cdf is nondecreasing on a fine grid") {
  double prev = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = 1.0 / 3.0 + (0.5 - 1.0 / 3.0) * i / 10000.0;
    const double v = brownian_longest_chord_cdf(x);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("brownian longest chord cdf regression value") {
  // frozen from independent high-precision quadrature of the density
  const double v = brownian_longest_chord_cdf(0.4);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK(v == doctest::Approx(0.07821149102678).epsilon(1e-7));
}

TEST_CASE("cdf matches direct density integration away from the singularity") {
  // crude midpoint integration over [1/3, 0.45]
  const ChordLengthLaw law;
  const int steps = 200000;
  double acc = 0.0;
  const double lo = 1.0 / 3.0, hi = 0.45;
  for (int i = 0; i < steps; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / steps;
    acc += law.density(x) * (hi - lo) / steps;
  }
  CHECK(std::abs(acc - law.cdf(0.45)) < 1e-6);
}

TEST_CASE("count_nc closed form for unconstrained degrees") {
  const auto binom = [](Index n, Index k) {
    BigInt v = 1;
    for (Index i = 1; i <= k; ++i) {
      v *= (n - k + i);
      v /= i;
    }
    return v;
  };
  for (Index n = 1; n <= 14; ++n) {
    CHECK(count_nc(n) == binom(3 * n - 3, n - 1) / (2 * n - 1));
  }
  CHECK(count_nc(3) == 3);
  CHECK(count_nc(5) == 55);
}

TEST_CASE("count_nc degree-constrained feasibility pattern") {
  const std::vector<int> A{1, 3};
  CHECK(count_nc(1, A) == 1);
  for (Index n = 2; n <= 20; ++n) {
    const BigInt c = count_nc(n, A);
    if (n % 2 == 0) {
      CHECK(c > 0);
    } else {
      CHECK(c == 0);
    }
  }
  // cross-check against the exhaustive bijection census (test_noncrossing
  // does the unconstrained case)
}

TEST_CASE("theorem 5 constants") {
  const Theorem5Constants all = theorem5_constants(std::nullopt);
  CHECK(std::abs(all.b - 1.0 / 3.0) < 1e-10);
  CHECK(std::abs(all.rho - 27.0 / 4.0) < 1e-9);
  CHECK(all.period == 1);
  // K * rho^{n-1} = (9 sqrt(3 pi))^{-1} * rho^n
  CHECK(std::abs(all.K - (27.0 / 4.0) / (9.0 * std::sqrt(3.0 * M_PI))) < 1e-9);

  const Theorem5Constants odd = theorem5_constants(std::vector<int>{1, 3});
  CHECK(std::abs(odd.b - 1.0 / std::sqrt(3.0)) < 1e-10);
  CHECK(odd.period == 2);
  CHECK(std::abs(odd.rho - 2.0 * std::sqrt(3.0)) < 1e-9);

  CHECK_THROWS_AS(theorem5_constants(std::vector<int>{1, 2}), NoCriticalPoint);
}

TEST_CASE("ratio convergence for the {1,3} counts") {
  const std::vector<int> A{1, 3};
  const Theorem5Constants c = theorem5_constants(A);
  // n = 200 is already within 10 percent
  const Index n = 200;
  const BigInt count = count_nc(n, A);
  REQUIRE(count > 0);
  double logc = 0.0;
  {
    BigInt v = count;
    while (v > BigInt(1) << 53) {
      v >>= 13;
      logc += 13.0 * std::log(2.0);
    }
    logc += std::log(v.convert_to<double>());
  }
  const double log_pred = std::log(c.K) + (static_cast<double>(n) - 1.0) * std::log(c.rho) -
                          1.5 * std::log(static_cast<double>(n));
  CHECK(std::abs(std::exp(logc - log_pred) - 1.0) < 0.1);
}

TEST_CASE("ks distance") {
  const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK_THROWS_AS(ks_distance({}, uniform_cdf), EmptySet);
  // degenerate sample vs continuous law
  CHECK(ks_distance({1.0}, uniform_cdf) == doctest::Approx(1.0));
  // samples from the law itself: KS below the 1 percent critical value
  Rng rng = Rng::from_seed(13);
  std::vector<double> xs(10000);
  for (double& x : xs) x = rng.uniform01();
  CHECK(ks_distance(xs, uniform_cdf) < 1.63 / 100.0);
}

TEST_CASE("box dimension of a single diameter is about 1") {
  Lamination lam;
  lam.m = 4096;
  lam.add(0, 2048);
  lam.finish();
  const BoxDimension bd = box_dimension(lam, 4, 10);
  CHECK(std::abs(bd.slope - 1.0) <= 0.05);
  CHECK(bd.counts.size() == 7);
}

TEST_CASE("box dimension of a dense chord grid is about 2 on coarse levels") {
  Lamination lam;
  lam.m = 256;
  for (Index p = 0; p < 128; ++p) lam.add(p, 255 - p);
  // add rotated copies to fill the disk
  for (Index p = 0; p < 128; ++p) lam.add((p + 64) % 256, (255 - p + 64) % 256);
  lam.finish();
  const BoxDimension bd = box_dimension(lam, 2, 5);
  CHECK(bd.slope > 1.6);
  CHECK_THROWS_AS(box_dimension(lam, 2, 11), ResolutionTooFine);
}

TEST_CASE("degree histogram") {
  CHECK_THROWS_AS(degree_histogram({}), EmptyBatch);
  const auto h1 = degree_histogram({PlaneTree{{2, 0, 0}}});
  CHECK(h1.at(0) == doctest::Approx(1.0));
  const auto h2 = degree_histogram({PlaneTree{{1, 1, 0}}});
  CHECK(h2.at(0) == doctest::Approx(0.5));
  CHECK(h2.at(1) == doctest::Approx(0.5));
}

TEST_CASE("chi square pvalue sanity") {
  CHECK(chi_square_pvalue(0.0, 10) == doctest::Approx(1.0));
  CHECK(chi_square_pvalue(10.0, 10) == doctest::Approx(0.4405).epsilon(1e-3));
  CHECK(chi_square_pvalue(100.0, 10) < 1e-10);
}
