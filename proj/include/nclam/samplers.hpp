#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nclam/offspring.hpp"
#include "nclam/rng.hpp"
#include "nclam/tree.hpp"

namespace nclam {

inline constexpr std::uint64_t kDefaultDrawBudget = 1'000'000'000ULL;

// Random walk with step distribution (mu(k+1) : k >= -1): entry k of `step`
// is the probability of increment k-1.
struct WalkLaw {
  Pmf step;  // law of increment + 1

  static WalkLaw from_pmf(Pmf mu) { return WalkLaw{std::move(mu)}; }
  static WalkLaw from_stable(const StableOffspring& law, double tail_eps = 1e-16);
};

// Exact P(S_n = k) by DP convolution; adds the certified per-step truncation
// loss into *trim_error when given.
double walk_pmf(const WalkLaw& law, Index n, Index k, double* trim_error = nullptr);

// Final row of the DP: P(S_n = -k) for k = 0..n (index k). Shared by the
// root-degree law and tree_size_pmf so the O(n^2) sweep runs once.
std::vector<double> walk_hit_row(const WalkLaw& law, Index n, double* trim_error = nullptr);

// Kemperman: P(T_{-k} = n) = (k/n) P(S_n = -k).
double hitting_time_pmf(const WalkLaw& law, Index k, Index n);

// P(|T| = n) for the modified tree via the root decomposition
// sum_k mu_root(k) P(T_{-k} = n-1).
double tree_size_pmf(const OffspringPair& pair, Index n);

struct RootStats {
  Index largest_subtree = 0;  // M
  Index root_degree = 0;      // N0
  Index size = 0;             // n
};

RootStats root_stats(const PlaneTree& tree);

// Conditioned-sampling core over one offspring law. Holds the alias table
// and the feasibility DP; every sample_* below funnels through it.
class ConditionedSampler {
 public:
  explicit ConditionedSampler(Pmf mu);
  explicit ConditionedSampler(const StableOffspring& law);

  // Forest of k independent trees conditioned to total size `total`:
  // i.i.d. increments rejected until they sum to -k, then cycle-rotated to a
  // uniformly chosen valid first-passage path.
  std::vector<PlaneTree> sample_forest(Index k, Index total, Rng& rng,
                                       std::uint64_t budget = kDefaultDrawBudget) const;

  PlaneTree sample_tree(Index n, Rng& rng, std::uint64_t budget = kDefaultDrawBudget) const {
    return std::move(sample_forest(1, n, rng, budget)[0]);
  }

  bool feasible(Index k, Index total) const;

 private:
  template <typename Draw>
  std::vector<Index> conditioned_increments(Index k, Index m, Rng& rng, std::uint64_t budget,
                                            Draw draw) const;
  std::vector<Index> sample_path(Index k, Index m, Rng& rng, std::uint64_t budget) const;

  std::optional<AliasTable> alias_;            // bounded-support path
  std::optional<StableOffspring> stable_;      // unbounded-support path
  std::vector<Index> support_;                 // positive support values of X
  bool has_zero_ = false;
  bool has_one_ = false;
};

// BGW_n^mu. Distributional contract only; throws Infeasible or Timeout.
PlaneTree sample_bgw_conditioned(const Pmf& mu, Index n, Rng& rng,
                                 std::uint64_t budget = kDefaultDrawBudget);
PlaneTree sample_bgw_conditioned(const StableOffspring& law, Index n, Rng& rng,
                                 std::uint64_t budget = kDefaultDrawBudget);

std::vector<PlaneTree> sample_forest(const Pmf& mu, Index k, Index total, Rng& rng,
                                     std::uint64_t budget = kDefaultDrawBudget);

// BGW_n^{mu_root, mu}: root degree L with probability proportional to
// mu_root(L) * (L/(n-1)) * P(S_{n-1} = -L), then a conditioned forest of L
// trees on n-1 vertices. Caches the degree law, so batches reuse the DP.
class ModifiedBgwSampler {
 public:
  ModifiedBgwSampler(const OffspringPair& pair, Index n);

  PlaneTree sample(Rng& rng, std::uint64_t budget = kDefaultDrawBudget) const;
  const std::vector<double>& root_degree_weights() const { return root_weights_; }

 private:
  Index n_;
  ConditionedSampler forest_;
  std::vector<double> root_weights_;  // normalized P(N0 = k)
  AliasTable root_alias_;
};

PlaneTree sample_modified_bgw(const OffspringPair& pair, Index n, Rng& rng,
                              std::uint64_t budget = kDefaultDrawBudget);

}  // namespace nclam
