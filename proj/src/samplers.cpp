#include "nclam/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nclam/errors.hpp"

namespace nclam {

WalkLaw WalkLaw::from_stable(const StableOffspring& law, double tail_eps) {
  // Heavy tails cannot be truncated at 1e-16 in reasonable space; cap the
  // support and surface the rest through Pmf::tail so walk_pmf reports it.
  constexpr std::int64_t kCap = 1 << 20;
  Pmf mu;
  std::int64_t k = 0;
  while (law.tail(k + 1) > tail_eps && k < kCap) ++k;
  mu.p.resize(static_cast<std::size_t>(k) + 1);
  for (std::int64_t i = 0; i <= k; ++i) mu.p[static_cast<std::size_t>(i)] = law.pmf(i);
  mu.tail = law.tail(k + 1);
  return WalkLaw{std::move(mu)};
}

namespace {

// DP state: probabilities of S_j over [lo, lo + size). Each step trims the
// top of the support once the accumulated discarded mass stays within the
// per-step budget; the total goes to *trim_error.
struct WalkDp {
  std::vector<double> p{1.0};
  Index lo = 0;
  double trimmed = 0.0;

  void step(const std::vector<double>& q, double eps_step) {
    const Index K = static_cast<Index>(q.size()) - 1;
    std::vector<double> next(p.size() + static_cast<std::size_t>(K), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double pi = p[i];
      if (pi == 0.0) continue;
      for (Index x = 0; x <= K; ++x) {
        if (q[static_cast<std::size_t>(x)] != 0.0) next[i + static_cast<std::size_t>(x)] += pi * q[static_cast<std::size_t>(x)];
      }
    }
    p = std::move(next);
    lo -= 1;  // increment x-1 shifts the window down by one
    double acc = 0.0;
    while (p.size() > 1 && acc + p.back() <= eps_step) {
      acc += p.back();
      p.pop_back();
    }
    trimmed += acc;
  }
};

// Probabilities of S_n indexed from value -n (each step widens the window
// down by exactly one).
std::vector<double> final_row(const WalkLaw& law, Index n, double* trim_error) {
  WalkDp dp;
  const double eps_step = n > 0 ? 1e-13 / static_cast<double>(n) : 0.0;
  for (Index j = 0; j < n; ++j) dp.step(law.step.p, eps_step);
  if (trim_error) *trim_error = dp.trimmed + static_cast<double>(n) * law.step.tail;
  return dp.p;
}

}  // namespace

double walk_pmf(const WalkLaw& law, Index n, Index k, double* trim_error) {
  if (n < 0) throw DomainError("walk_pmf needs n >= 0");
  if (n == 0) {
    if (trim_error) *trim_error = 0.0;
    return k == 0 ? 1.0 : 0.0;
  }
  const std::vector<double> row = final_row(law, n, trim_error);
  const Index idx = k + n;  // row starts at value -n
  if (idx < 0 || idx >= static_cast<Index>(row.size())) return 0.0;
  return row[static_cast<std::size_t>(idx)];
}

std::vector<double> walk_hit_row(const WalkLaw& law, Index n, double* trim_error) {
  const std::vector<double> row = final_row(law, n, trim_error);
  std::vector<double> hits(static_cast<std::size_t>(n) + 1, 0.0);
  for (Index k = 0; k <= n; ++k) {
    const Index idx = -k + n;
    if (idx >= 0 && idx < static_cast<Index>(row.size())) hits[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(idx)];
  }
  return hits;
}

double hitting_time_pmf(const WalkLaw& law, Index k, Index n) {
  if (k < 1 || n < 1) throw DomainError("hitting_time_pmf needs k, n >= 1");
  return static_cast<double>(k) / static_cast<double>(n) * walk_pmf(law, n, -k);
}

double tree_size_pmf(const OffspringPair& pair, Index n) {
  if (n <= 1) return 0.0;  // the root has at least one child
  const WalkLaw law = WalkLaw::from_pmf(pair.mu);
  const std::vector<double> hits = walk_hit_row(law, n - 1);
  double total = 0.0;
  for (Index k = 1; k <= n - 1; ++k) {
    const double mk = pair.mu_root.at(k);
    if (mk > 0.0) total += mk * static_cast<double>(k) / static_cast<double>(n - 1) * hits[static_cast<std::size_t>(k)];
  }
  return total;
}

RootStats root_stats(const PlaneTree& tree) {
  const Index n = tree.size();
  if (n < 2) throw DegenerateTree("root_stats needs n >= 2");
  const std::vector<Index> sizes = subtree_sizes(encode(tree));
  RootStats st;
  st.size = n;
  st.root_degree = tree.kids[0];
  Index child = 1;
  for (Index t = 0; t < st.root_degree; ++t) {
    const Index sub = 1 + sizes[static_cast<std::size_t>(child)];
    st.largest_subtree = std::max(st.largest_subtree, sub);
    child += sub;
  }
  return st;
}

// ---- conditioned sampling ----

ConditionedSampler::ConditionedSampler(Pmf mu) {
  if (mu.p.empty() || mu.p[0] <= 0.0) throw Infeasible("offspring law needs mu(0) > 0");
  has_zero_ = true;
  for (std::size_t k = 1; k < mu.p.size(); ++k) {
    if (mu.p[k] > 0.0) {
      support_.push_back(static_cast<Index>(k));
      if (k == 1) has_one_ = true;
    }
  }
  if (support_.empty()) throw Infeasible("offspring law is degenerate at 0");
  alias_ = AliasTable(mu.p);
}

ConditionedSampler::ConditionedSampler(const StableOffspring& law) : stable_(law) {
  has_zero_ = true;
  has_one_ = true;
  support_ = {1};  // full support: 1 is enough for the feasibility rule
}

bool ConditionedSampler::feasible(Index k, Index total) const {
  if (k < 1 || total < k) return false;
  const Index need = total - k;  // sum of X draws over `total` steps
  if (need == 0) return true;
  if (has_one_) return true;
  // unbounded knapsack over the positive support, at most `total` terms
  // (padding with zeros is free since mu(0) > 0)
  std::vector<int> min_terms(static_cast<std::size_t>(need) + 1, -1);
  min_terms[0] = 0;
  for (Index v = 1; v <= need; ++v) {
    int best = -1;
    for (Index s : support_) {
      if (s > v) break;
      const int prev = min_terms[static_cast<std::size_t>(v - s)];
      if (prev >= 0 && (best < 0 || prev + 1 < best)) best = prev + 1;
    }
    min_terms[static_cast<std::size_t>(v)] = best;
  }
  const int t = min_terms[static_cast<std::size_t>(need)];
  return t >= 0 && t <= total;
}

template <typename Draw>
std::vector<Index> ConditionedSampler::conditioned_increments(Index k, Index m, Rng& rng,
                                                              std::uint64_t budget, Draw draw) const {
  std::vector<Index> xs(static_cast<std::size_t>(m));
  const Index target = m - k;  // required sum of the X draws
  std::uint64_t used = 0;
  for (;;) {
    Index sum = 0;
    bool ok = true;
    for (Index i = 0; i < m; ++i) {
      const Index x = draw(rng);
      sum += x;
      if (sum > target) {  // X >= 0: no way back
        used += static_cast<std::uint64_t>(i) + 1;
        ok = false;
        break;
      }
      xs[static_cast<std::size_t>(i)] = x;
    }
    if (ok) {
      used += static_cast<std::uint64_t>(m);
      if (sum == target) return xs;
    }
    if (used > budget)
      throw Timeout("rejection budget of " + std::to_string(budget) + " draws exhausted (k=" +
                    std::to_string(k) + ", total=" + std::to_string(m) + ")");
  }
}

std::vector<Index> ConditionedSampler::sample_path(Index k, Index m, Rng& rng, std::uint64_t budget) const {
  std::vector<Index> xs;
  if (stable_) {
    const StableOffspring& law = *stable_;
    xs = conditioned_increments(k, m, rng, budget, [&law](Rng& r) { return law.sample(r); });
  } else {
    const AliasTable& alias = *alias_;
    xs = conditioned_increments(k, m, rng, budget,
                                [&alias](Rng& r) { return static_cast<Index>(alias.sample(r)); });
  }

  // Cycle lemma: the valid rotation starts are the first hitting times of
  // the k lowest levels of the prefix walk; pick one uniformly.
  std::vector<Index> first_hit;  // first_hit[d]: first t with S_t = -(min levels)
  first_hit.reserve(static_cast<std::size_t>(k));
  {
    Index s = 0;
    Index min_so_far = 0;
    std::vector<Index> hits;  // first hits of -1, -2, ...
    for (Index t = 0; t < m; ++t) {
      s += xs[static_cast<std::size_t>(t)] - 1;
      while (s < min_so_far) {
        --min_so_far;
        hits.push_back(t + 1);  // prefix length achieving the new minimum
      }
    }
    // valid levels are the k deepest: min, min+1, ..., min+k-1
    const Index deepest = -min_so_far;
    for (Index d = deepest - k; d < deepest; ++d) first_hit.push_back(hits[static_cast<std::size_t>(d)]);
  }
  const Index shift = first_hit[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k)))] % m;

  std::vector<Index> rotated(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) rotated[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>((shift + i) % m)];
  return rotated;
}

std::vector<PlaneTree> ConditionedSampler::sample_forest(Index k, Index total, Rng& rng,
                                                         std::uint64_t budget) const {
  if (!feasible(k, total))
    throw Infeasible("no forest of " + std::to_string(k) + " trees with total size " + std::to_string(total));
  if (total == k) return std::vector<PlaneTree>(static_cast<std::size_t>(k), PlaneTree{{0}});

  const std::vector<Index> xs = sample_path(k, total, rng, budget);
  std::vector<PlaneTree> forest;
  forest.reserve(static_cast<std::size_t>(k));
  Index s = 0;
  Index level = 0;
  PlaneTree current;
  for (Index t = 0; t < total; ++t) {
    current.kids.push_back(xs[static_cast<std::size_t>(t)]);
    s += xs[static_cast<std::size_t>(t)] - 1;
    if (s == level - 1) {  // first passage below the current tree's base
      --level;
      forest.push_back(std::move(current));
      current = PlaneTree{};
    }
  }
  return forest;
}

PlaneTree sample_bgw_conditioned(const Pmf& mu, Index n, Rng& rng, std::uint64_t budget) {
  return ConditionedSampler(mu).sample_tree(n, rng, budget);
}

PlaneTree sample_bgw_conditioned(const StableOffspring& law, Index n, Rng& rng, std::uint64_t budget) {
  return ConditionedSampler(law).sample_tree(n, rng, budget);
}

std::vector<PlaneTree> sample_forest(const Pmf& mu, Index k, Index total, Rng& rng, std::uint64_t budget) {
  return ConditionedSampler(mu).sample_forest(k, total, rng, budget);
}

ModifiedBgwSampler::ModifiedBgwSampler(const OffspringPair& pair, Index n)
    : n_(n), forest_(pair.mu) {
  if (n < 2) throw Infeasible("modified tree needs n >= 2 (the root has a child)");
  const WalkLaw law = WalkLaw::from_pmf(pair.mu);
  const std::vector<double> hits = walk_hit_row(law, n - 1);
  root_weights_.assign(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (Index k = 1; k <= n - 1; ++k) {
    const double w = pair.mu_root.at(k) * static_cast<double>(k) / static_cast<double>(n - 1) *
                     hits[static_cast<std::size_t>(k)];
    if (w > 0.0 && forest_.feasible(k, n - 1)) {
      root_weights_[static_cast<std::size_t>(k)] = w;
      total += w;
    }
  }
  if (total <= 0.0) throw Infeasible("BGW_n^{mu_root,mu} puts no mass on size " + std::to_string(n));
  for (double& w : root_weights_) w /= total;
  std::vector<double> trimmed = root_weights_;  // mu_root has geometric tails
  while (trimmed.size() > 1 && trimmed.back() == 0.0) trimmed.pop_back();
  root_alias_ = AliasTable(trimmed);
}

PlaneTree ModifiedBgwSampler::sample(Rng& rng, std::uint64_t budget) const {
  const Index L = static_cast<Index>(root_alias_.sample(rng));
  const std::vector<PlaneTree> forest = forest_.sample_forest(L, n_ - 1, rng, budget);
  PlaneTree tree;
  tree.kids.reserve(static_cast<std::size_t>(n_));
  tree.kids.push_back(L);
  for (const PlaneTree& t : forest) tree.kids.insert(tree.kids.end(), t.kids.begin(), t.kids.end());
  return tree;
}

PlaneTree sample_modified_bgw(const OffspringPair& pair, Index n, Rng& rng, std::uint64_t budget) {
  return ModifiedBgwSampler(pair, n).sample(rng, budget);
}

}  // namespace nclam
