#include <doctest.h>

#include <cmath>

#include "nclam/errors.hpp"
#include "nclam/offspring.hpp"
#include "nclam/tree.hpp"

using namespace nclam;

TEST_CASE("zeta against known values") {
  CHECK(std::abs(zeta(2.0) - M_PI * M_PI / 6.0) < 1e-12);
  CHECK(std::abs(zeta(3.0) - 1.2020569031595942854) < 1e-12);
  CHECK(std::abs(zeta(1.5) - 2.6123753486854883440) < 1e-11);
}

TEST_CASE("psi values") {
  const WeightSeq uni = WeightSeq::uniform();
  CHECK(psi(uni, 0.0) == 0.0);
  CHECK(std::abs(psi(uni, 1.0 / 3.0) - 1.0) < 1e-12);   // 2x/(1-x) at 1/3
  const WeightSeq w13 = WeightSeq::degree_set({1, 3});
  CHECK(std::abs(psi(w13, 1.0 / std::sqrt(3.0)) - 1.0) < 1e-12);  // 6x^2/(1+3x^2)
  CHECK_THROWS_AS(psi(uni, 1.0), DomainError);
}

TEST_CASE("psi is strictly increasing up to the critical point") {
  const WeightSeq uni = WeightSeq::uniform();
  double prev = -1.0;
  for (int i = 0; i <= 64; ++i) {
    const double x = (1.0 / 3.0) * i / 64.0;
    const double v = psi(uni, x);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("critical b") {
  CHECK(std::abs(solve_critical_b(WeightSeq::uniform()) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(solve_critical_b(WeightSeq::degree_set({1, 3})) - 1.0 / std::sqrt(3.0)) < 1e-12);
  CHECK_THROWS_AS(solve_critical_b(WeightSeq::degree_set({1, 2})), NoCriticalPoint);
}

TEST_CASE("uniform weights give the Marckert-Panholzer pair") {
  const OffspringPair pair = build_pair(WeightSeq::uniform(), 1.0 / 3.0);
  CHECK(std::abs(pair.a - 4.0 / 9.0) < 1e-12);
  CHECK(std::abs(pair.c - 2.0) < 1e-12);
  CHECK(std::abs(pair.mu.at(0) - 4.0 / 9.0) < 1e-12);
  CHECK(std::abs(pair.mu.at(1) - 8.0 / 27.0) < 1e-12);
  CHECK(std::abs(pair.mu_root.at(1) - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(pair.mu_root.at(2) - 2.0 / 9.0) < 1e-12);
  CHECK(std::abs(pair.mean_mu - 1.0) < 1e-10);  // criticality
  CHECK(std::abs(pair.var_mu - 1.5) < 1e-10);
  // both are near-probability vectors (certified truncation)
  double s0 = 0.0, s1 = 0.0;
  for (Index k = 0; k <= pair.mu.max_support(); ++k) s0 += pair.mu.at(k);
  for (Index k = 0; k <= pair.mu_root.max_support(); ++k) s1 += pair.mu_root.at(k);
  CHECK(std::abs(s0 - 1.0) < 1e-12);
  CHECK(std::abs(s1 - 1.0) < 1e-12);
}

TEST_CASE("size-biased root law identity holds for several weight sequences") {
  for (const WeightSeq& w : {WeightSeq::uniform(), WeightSeq::degree_set({1, 3}), WeightSeq::degree_set({1, 4}),
                             WeightSeq::geometric(0.5)}) {
    const OffspringPair pair = build_pair(w, solve_critical_b(w));
    double mean_root = 0.0;
    for (Index k = 1; k <= pair.mu_root.max_support(); ++k) mean_root += static_cast<double>(k) * pair.mu_root.at(k);
    CHECK(std::abs(mean_root - pair.b * pair.c / pair.a) < 1e-10);
    for (Index k = 1; k <= pair.mu_root.max_support(); ++k) {
      if (pair.mu_root.at(k) == 0.0) continue;
      const double lhs = static_cast<double>(k) * pair.mu_root.at(k) / mean_root;
      CHECK(std::abs(lhs - pair.mu.at(k - 1)) < 1e-12);
    }
  }
}

TEST_CASE("two-parameter gauge leaves the pair invariant") {
  // geometric weights q are the gauged uniform weights w(k) -> q^{k-1}
  const OffspringPair base = build_pair(WeightSeq::uniform(), solve_critical_b(WeightSeq::uniform()));
  const WeightSeq gauged = WeightSeq::geometric(0.7);
  const OffspringPair other = build_pair(gauged, solve_critical_b(gauged));
  for (Index k = 0; k <= 30; ++k) CHECK(std::abs(base.mu.at(k) - other.mu.at(k)) < 1e-11);
  for (Index k = 1; k <= 30; ++k) CHECK(std::abs(base.mu_root.at(k) - other.mu_root.at(k)) < 1e-11);
}

TEST_CASE("stable offspring") {
  CHECK_THROWS_AS(StableOffspring(2.0), DomainError);
  CHECK_THROWS_AS(StableOffspring(1.0), DomainError);

  const StableOffspring law(1.3);
  CHECK(law.pmf(0) == doctest::Approx(1.0 - zeta(2.3) / zeta(1.3)).epsilon(1e-12));
  CHECK(law.pmf(0) > 0.0);
  CHECK(law.pmf(0) < 1.0);

  // mean exactly 1 by construction: sum k * k^{-(1+a)} / zeta(a) = 1
  double mean = 0.0;
  for (Index k = 1; k < 200000; ++k) mean += static_cast<double>(k) * law.pmf(k);
  const double tail_mean = zeta_tail(1.3, 200000) / law.zeta_alpha();
  CHECK(std::abs(mean + tail_mean - 1.0) < 1e-10);
}

TEST_CASE("stable tail index by log-log slope") {
  const StableOffspring law(1.3);
  double prev_n = 100.0, prev_t = law.tail(100);
  for (const Index n : {Index{10000}, Index{1000000}}) {
    const double t = law.tail(n);
    const double slope = (std::log(t) - std::log(prev_t)) / (std::log(static_cast<double>(n)) - std::log(prev_n));
    CHECK(std::abs(slope + 1.3) < 0.05);
    prev_n = static_cast<double>(n);
    prev_t = t;
  }
}

TEST_CASE("stable sampler matches its own pmf") {
  const StableOffspring law(1.5);
  Rng rng = Rng::from_seed(7);
  const int reps = 200000;
  std::vector<int> counts(8, 0);
  int big = 0;
  for (int i = 0; i < reps; ++i) {
    const Index k = law.sample(rng);
    if (k < 8) {
      ++counts[static_cast<std::size_t>(k)];
    } else {
      ++big;
    }
  }
  for (Index k = 0; k < 8; ++k) {
    const double p = law.pmf(k);
    const double got = counts[static_cast<std::size_t>(k)] / static_cast<double>(reps);
    CHECK(std::abs(got - p) < 4.5 * std::sqrt(p * (1 - p) / reps) + 1e-6);
  }
  const double ptail = law.tail(8);
  CHECK(std::abs(big / static_cast<double>(reps) - ptail) < 4.5 * std::sqrt(ptail / reps) + 1e-6);
}

TEST_CASE("scaling constants") {
  OffspringPair pair;
  pair.var_mu = 1.0;
  CHECK(scaling_constant_B(pair, 8) == doctest::Approx(2.0));
  pair.var_mu = 4.0;
  CHECK(scaling_constant_B(pair, 2) == doctest::Approx(2.0));
  const StableOffspring law(1.5);
  CHECK(scaling_constant_B(law, 1000000) == doctest::Approx(1e4));
}

TEST_CASE("weight spec parsing") {
  CHECK(WeightSeq::parse("uniform").kind() == WeightSeq::Kind::Uniform);
  CHECK(WeightSeq::parse("set:1,3").w(3) == 1.0);
  CHECK(WeightSeq::parse("set:1,3").w(2) == 0.0);
  CHECK(WeightSeq::parse("geometric:0.5").w(3) == doctest::Approx(0.25));
  CHECK(WeightSeq::parse("zipf:2").w(4) == doctest::Approx(1.0 / 16.0));
  CHECK(WeightSeq::parse(R"({"w":{"1":1.0,"4":2.5}})").w(4) == doctest::Approx(2.5));
  CHECK_THROWS_AS(WeightSeq::parse("nonsense"), DomainError);
}
