#include "nclam/verify.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "nclam/errors.hpp"
#include "nclam/iterate.hpp"
#include "nclam/json_io.hpp"
#include "nclam/lamination.hpp"
#include "nclam/noncrossing.hpp"
#include "nclam/offspring.hpp"
#include "nclam/render.hpp"
#include "nclam/rng.hpp"
#include "nclam/samplers.hpp"
#include "nclam/stats.hpp"
#include "nclam/tree.hpp"

namespace nclam {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Deterministic replica fan-out: replica i always uses the stream derived
// from (seed, "replica", i) no matter which worker runs it.
void parallel_replicas(int workers, int reps, const std::function<void(int, Rng&)>& body, std::uint64_t seed) {
  workers = std::max(1, workers);
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= reps) return;
        Rng rng = Rng::from_seed(seed).derive("replica", static_cast<std::uint64_t>(i));
        body(i, rng);
      }
    });
  }
  for (auto& t : pool) t.join();
}

BigInt binomial(Index n, Index k) {
  BigInt v = 1;
  for (Index i = 1; i <= k; ++i) {
    v *= (n - k + i);
    v /= i;
  }
  return v;
}

double log_bigint(const BigInt& v) {
  if (v <= 0) throw DomainError("log of nonpositive bigint");
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits <= 62) return std::log(v.convert_to<double>());
  const BigInt shifted = v >> (bits - 52);
  return std::log(shifted.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

OffspringPair uniform_pair() { return build_pair(WeightSeq::uniform(), solve_critical_b(WeightSeq::uniform())); }

// ---- criterion 1 ----

VerifyResult criterion_enumeration(const VerifyOptions&) {
  VerifyResult r{"enumeration-exact", true, "", 0};
  std::ostringstream detail;
  for (Index n = 1; n <= 14; ++n) {
    const BigInt got = count_nc(n);
    const BigInt want = binomial(3 * n - 3, n - 1) / (2 * n - 1);
    if (got != want) {
      r.pass = false;
      detail << "n=" << n << " got " << got << " want " << want << "; ";
    }
  }
  if (r.pass) detail << "count_nc(n) matches binom(3n-3,n-1)/(2n-1) exactly for n=1..14";
  r.detail = detail.str();
  return r;
}

// ---- criterion 2 ----

VerifyResult criterion_bijection(const VerifyOptions&) {
  VerifyResult r{"bijection-census", true, "", 0};
  std::ostringstream detail;
  for (Index n = 1; n <= 8; ++n) {
    std::set<NoncrossingTree> image;
    std::uint64_t embedded = 0;
    for (const PlaneTree& tree : enumerate_plane_trees(n)) {
      Decoration dec;
      dec.l.assign(static_cast<std::size_t>(n) - 1, 0);
      for (;;) {
        const NoncrossingTree nc = embed(tree, dec);
        ++embedded;
        if (!validate(nc)) {
          r.pass = false;
          detail << "invalid image at n=" << n << "; ";
        }
        const auto [shape, labels] = extract(nc);
        if (!(shape == tree) || !(labels == dec)) {
          r.pass = false;
          detail << "extract(embed) != id at n=" << n << "; ";
        }
        image.insert(nc);
        Index j = 0;
        while (j < n - 1) {
          if (dec.l[static_cast<std::size_t>(j)] < tree.kids[static_cast<std::size_t>(j) + 1]) {
            ++dec.l[static_cast<std::size_t>(j)];
            break;
          }
          dec.l[static_cast<std::size_t>(j)] = 0;
          ++j;
        }
        if (n == 1 || j == n - 1) break;
      }
    }
    const BigInt want = count_nc(n);
    if (BigInt(image.size()) != want || BigInt(embedded) != want) {
      r.pass = false;
      detail << "census n=" << n << ": embedded " << embedded << ", distinct " << image.size() << ", want " << want
             << "; ";
    }
  }
  if (r.pass) detail << "embed is a bijection onto NC_n for n<=8 (census + round trip)";
  r.detail = detail.str();
  return r;
}

// ---- criterion 3 ----

VerifyResult criterion_thm5(const VerifyOptions&) {
  VerifyResult r{"thm5-asymptotics", true, "", 0};
  std::ostringstream detail;

  {
    const Theorem5Constants c = theorem5_constants(std::nullopt);
    const Index n = 2000;
    const double log_pred = std::log(c.K) + static_cast<double>(n - 1) * std::log(c.rho) -
                            1.5 * std::log(static_cast<double>(n));
    const double ratio = std::exp(log_bigint(count_nc(n)) - log_pred);
    detail << "A=N: b=" << fmt(c.b) << " rho=" << fmt(c.rho) << " ratio(n=2000)=" << fmt(ratio);
    if (!(ratio >= 0.98 && ratio <= 1.02)) r.pass = false;
    if (std::abs(c.rho - 27.0 / 4.0) > 1e-9) r.pass = false;
  }
  {
    const std::vector<int> A{1, 3};
    const Theorem5Constants c = theorem5_constants(A);
    if (std::abs(c.b - 1.0 / std::sqrt(3.0)) > 1e-9) {
      r.pass = false;
      detail << "; b({1,3}) != 3^{-1/2}";
    }
    Index n_star = 0;
    for (Index n = 400; n >= 2; --n) {
      if (count_nc(n, A) > 0) {
        n_star = n;
        break;
      }
    }
    const double log_pred = std::log(c.K) + static_cast<double>(n_star - 1) * std::log(c.rho) -
                            1.5 * std::log(static_cast<double>(n_star));
    const double ratio = std::exp(log_bigint(count_nc(n_star, A)) - log_pred);
    detail << "; A={1,3}: period=" << c.period << " n*=" << n_star << " ratio=" << fmt(ratio);
    if (!(ratio >= 0.90 && ratio <= 1.10)) r.pass = false;
  }
  r.detail = detail.str();
  return r;
}

// ---- criterion 4 ----

VerifyResult criterion_sampler(const VerifyOptions& opt) {
  VerifyResult r{"sampler-chi-square", true, "", 0};
  const Index n = 6;
  const std::vector<NoncrossingTree> all = enumerate_all(n);
  std::map<NoncrossingTree, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;

  const SimplyGeneratedSampler sampler(WeightSeq::uniform(), n);
  const int reps = 100000;
  std::vector<std::uint32_t> counts(all.size(), 0);
  Rng rng = Rng::from_seed(opt.seed).derive("sampler-chi", 0);
  for (int i = 0; i < reps; ++i) {
    const auto it = index.find(sampler.sample(rng));
    if (it == index.end()) {
      r.pass = false;
      r.detail = "sampler produced a tree outside NC_6";
      return r;
    }
    ++counts[it->second];
  }
  const double expected = static_cast<double>(reps) / static_cast<double>(all.size());
  double stat = 0.0;
  for (const std::uint32_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  const double p = chi_square_pvalue(stat, static_cast<int>(all.size()) - 1);
  r.pass = p > 1e-3;
  r.detail = "chi2=" + fmt(stat) + " over " + std::to_string(all.size()) + " cells, p=" + fmt(p);
  return r;
}

// ---- criterion 5 ----

// literal expansion of every increment word until the walk first reaches -k;
// the word's probability lands on the step at which that happens
void first_passage_enum(const std::vector<double>& step, Index k, Index max_n, Index depth, Index level,
                        double prob, std::vector<double>& out) {
  if (depth >= max_n) return;
  for (std::size_t x = 0; x < step.size(); ++x) {
    if (step[x] == 0.0) continue;
    const Index nl = level + static_cast<Index>(x) - 1;
    const double np = prob * step[x];
    if (nl == -k) {
      out[static_cast<std::size_t>(depth + 1)] += np;
      continue;
    }
    if (nl > -k) first_passage_enum(step, k, max_n, depth + 1, nl, np, out);
  }
}

VerifyResult criterion_kemperman(const VerifyOptions&) {
  VerifyResult r{"kemperman-oracle", true, "", 0};
  const std::vector<Pmf> laws = {Pmf{{0.5, 0.0, 0.5}, 0.0}, Pmf{{0.5, 0.2, 0.3}, 0.0}};
  double worst = 0.0;
  for (const Pmf& mu : laws) {
    const Index max_k = 3, max_n = 12;
    const WalkLaw law = WalkLaw::from_pmf(mu);
    for (Index k = 1; k <= max_k; ++k) {
      std::vector<double> oracle_pmf(static_cast<std::size_t>(max_n) + 1, 0.0);
      first_passage_enum(mu.p, k, max_n, 0, 0, 1.0, oracle_pmf);
      for (Index n = 1; n <= max_n; ++n) {
        const double got = hitting_time_pmf(law, k, n);
        worst = std::max(worst, std::abs(got - oracle_pmf[static_cast<std::size_t>(n)]));
      }
    }
  }
  r.pass = worst < 1e-12;
  r.detail = "max |kemperman - enumeration| = " + fmt(worst) + " over k<=3, n<=12, two laws";
  return r;
}

// ---- criterion 6 ----

VerifyResult criterion_size_pmf(const VerifyOptions&) {
  VerifyResult r{"size-pmf-limit", true, "", 0};
  const OffspringPair pair = uniform_pair();
  const Index n = 2000;
  const double Bn = scaling_constant_B(pair, n);
  const double value = static_cast<double>(n) * Bn * tree_size_pmf(pair, n);
  double mean_root = 0.0;
  for (Index k = 1; k <= pair.mu_root.max_support(); ++k) mean_root += static_cast<double>(k) * pair.mu_root.at(k);
  const double target = mean_root / (2.0 * std::sqrt(M_PI));  // |Gamma(-1/2)| = 2 sqrt(pi)
  const double rel = std::abs(value / target - 1.0);
  r.pass = rel <= 0.05;
  r.detail = "n*B_n*pmf = " + fmt(value) + ", limit " + fmt(target) + ", rel err " + fmt(rel);
  return r;
}

// ---- criterion 7 ----

VerifyResult criterion_prop23(const VerifyOptions& opt) {
  VerifyResult r{"prop23-joint-law", true, "", 0};
  const OffspringPair pair = uniform_pair();
  const Index n = 200;
  const ModifiedBgwSampler sampler(pair, n);

  const int reps = 100000;
  const Index K = 3, L = 3;
  std::vector<std::vector<std::uint32_t>> cell(static_cast<std::size_t>(opt.workers),
                                               std::vector<std::uint32_t>(static_cast<std::size_t>((K + 1) * L), 0));
  parallel_replicas(
      opt.workers, opt.workers,
      [&](int w, Rng& rng) {
        const int from = w * reps / opt.workers, to = (w + 1) * reps / opt.workers;
        for (int i = from; i < to; ++i) {
          Rng one = rng.derive("sample", static_cast<std::uint64_t>(i));
          const PlaneTree tree = sampler.sample(one);
          const RootStats st = root_stats(tree);
          const Index k = n - 1 - st.largest_subtree;
          if (k <= K && st.root_degree >= 1 && st.root_degree <= L)
            ++cell[static_cast<std::size_t>(w)][static_cast<std::size_t>(k * L + (st.root_degree - 1))];
        }
      },
      opt.seed + 7);

  // exact limit: P(Y_1+..+Y_{L-1} = k) * P(N = L)
  const WalkLaw law = WalkLaw::from_pmf(pair.mu);
  std::vector<double> y(static_cast<std::size_t>(K) + 1, 0.0);
  for (Index m = 1; m <= K; ++m) y[static_cast<std::size_t>(m)] = hitting_time_pmf(law, 1, m);
  double mean_root = 0.0;
  for (Index k = 1; k <= pair.mu_root.max_support(); ++k) mean_root += static_cast<double>(k) * pair.mu_root.at(k);

  std::ostringstream detail;
  double worst = 0.0;
  for (Index l = 1; l <= L; ++l) {
    const double pN = static_cast<double>(l) * pair.mu_root.at(l) / mean_root;
    // pmf of Y_1 + ... + Y_{l-1} up to K
    std::vector<double> conv(static_cast<std::size_t>(K) + 1, 0.0);
    conv[0] = 1.0;
    for (Index t = 1; t < l; ++t) {
      std::vector<double> next(static_cast<std::size_t>(K) + 1, 0.0);
      for (Index a = 0; a <= K; ++a) {
        for (Index b = 1; a + b <= K; ++b) next[static_cast<std::size_t>(a + b)] += conv[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)];
      }
      conv = std::move(next);
    }
    for (Index k = 0; k <= K; ++k) {
      double emp = 0.0;
      for (int w = 0; w < opt.workers; ++w) emp += cell[static_cast<std::size_t>(w)][static_cast<std::size_t>(k * L + (l - 1))];
      emp /= static_cast<double>(reps);
      const double exact = conv[static_cast<std::size_t>(k)] * pN;
      worst = std::max(worst, std::abs(emp - exact));
    }
  }
  r.pass = worst <= 0.01;
  r.detail = "max |empirical - limit| over k<=3, L<=3 cells = " + fmt(worst) + " at n=200, 1e5 samples";
  return r;
}

// ---- criterion 8 ----

VerifyResult criterion_longest_chord(const VerifyOptions& opt) {
  VerifyResult r{"longest-chord-ks", true, "", 0};
  const Index n = 3000;
  const int reps = 5000;
  const SimplyGeneratedSampler sampler(WeightSeq::uniform(), n);
  std::vector<double> lambda(static_cast<std::size_t>(reps), 0.0);
  parallel_replicas(
      opt.workers, reps,
      [&](int i, Rng& rng) { lambda[static_cast<std::size_t>(i)] = longest_chord(nc_to_lamination(sampler.sample(rng))); },
      opt.seed + 8);
  const double ks = ks_distance(lambda, [](double x) { return brownian_longest_chord_cdf(x); });
  r.pass = ks <= 0.03;
  r.detail = "KS(empirical longest chord, alpha=2 law) = " + fmt(ks) + " at n=3000, 5000 replicas";
  return r;
}

// ---- criterion 9 ----

VerifyResult criterion_triangulation(const VerifyOptions& opt) {
  VerifyResult r{"triangulation-invariants", true, "", 0};
  std::ostringstream detail;

  const auto endpoints_of = [](const Lamination& lam) {
    std::vector<Index> pts;
    for (const auto& [p, q] : lam.chords) {
      pts.push_back(p);
      pts.push_back(q);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  };

  // exhaustive small cases, every decoration
  for (Index n = 2; n <= 8 && r.pass; ++n) {
    for (const PlaneTree& tree : enumerate_plane_trees(n)) {
      const LukasiewiczPath path = encode(tree);
      Decoration dec;
      dec.l.assign(static_cast<std::size_t>(n) - 1, 0);
      std::optional<std::size_t> chord_count;
      for (;;) {
        const Lamination tri = triangulate(path, dec);
        if (!is_maximal(tri, endpoints_of(tri))) {
          r.pass = false;
          detail << "not maximal at n=" << n << "; ";
          break;
        }
        if (chord_count && *chord_count != tri.chords.size()) {
          r.pass = false;
          detail << "chord count depends on decoration at n=" << n << "; ";
          break;
        }
        chord_count = tri.chords.size();
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
      if (chord_count && *chord_count != static_cast<std::size_t>(2 * n - 3)) {
        r.pass = false;
        detail << "chord count " << *chord_count << " != 2n-3 at n=" << n << "; ";
      }
      if (!r.pass) break;
    }
  }

  // random stable(1.3) trees
  const StableOffspring law(1.3);
  const int reps = 100;
  std::vector<char> ok(static_cast<std::size_t>(reps), 1);
  parallel_replicas(
      opt.workers, reps,
      [&](int i, Rng& rng) {
        const Index n = i % 2 == 0 ? 10000 : 997;
        const PlaneTree tree = sample_bgw_conditioned(law, n, rng);
        const LukasiewiczPath path = encode(tree);
        const Lamination tri = triangulate(path, uniform_decoration(tree, rng));
        if (static_cast<Index>(tri.chords.size()) != 2 * n - 3 || !is_maximal(tri, endpoints_of(tri)))
          ok[static_cast<std::size_t>(i)] = 0;
      },
      opt.seed + 9);
  for (const char c : ok) {
    if (!c) {
      r.pass = false;
      detail << "random stable case failed; ";
    }
  }
  if (r.pass) detail << "noncrossing + maximal on all exhaustive n<=8 and 100 stable(1.3) trees";
  r.detail = detail.str();
  return r;
}

// ---- criterion 10 ----

VerifyResult criterion_hausdorff_trend(const VerifyOptions& opt) {
  VerifyResult r{"hausdorff-trend", true, "", 0};
  const StableOffspring law(1.3);
  const int reps = 50;
  std::vector<double> d_small(static_cast<std::size_t>(reps)), d_large(static_cast<std::size_t>(reps));
  parallel_replicas(
      opt.workers, reps,
      [&](int i, Rng& rng) {
        for (const Index n : {Index{100}, Index{10000}}) {
          const PlaneTree tree = sample_bgw_conditioned(law, n, rng);
          const LukasiewiczPath path = encode(tree);
          const Decoration dec = uniform_decoration(tree, rng);
          const Lamination theta = nc_to_lamination(embed(tree, dec));
          const Lamination tri = triangulate(path, dec);
          const double d = hausdorff_distance(theta, tri, 2e-3);
          (n == 100 ? d_small : d_large)[static_cast<std::size_t>(i)] = d;
        }
      },
      opt.seed + 10);
  const double med_small = median(d_small), med_large = median(d_large);
  r.pass = med_large < med_small && med_small <= 0.6 && med_large <= 0.25;
  r.detail = "median Hausdorff distance theta_n vs triangulation: " + fmt(med_small) + " at n=100, " +
             fmt(med_large) + " at n=10^4";
  return r;
}

// ---- criterion 11 ----

VerifyResult criterion_degree_law(const VerifyOptions& opt) {
  VerifyResult r{"degree-law", true, "", 0};
  const Index n = 10000;
  const int reps = 20;
  const SimplyGeneratedSampler sampler(WeightSeq::uniform(), n);
  std::vector<PlaneTree> shapes(static_cast<std::size_t>(reps));
  parallel_replicas(
      opt.workers, reps, [&](int i, Rng& rng) { shapes[static_cast<std::size_t>(i)] = sampler.sample_shape(rng); },
      opt.seed + 11);
  const std::map<Index, double> hist = degree_histogram(shapes);
  double tv = 0.0;
  for (Index k = 0; k <= 10; ++k) {
    const double mu_k = 4.0 * static_cast<double>(k + 1) * std::pow(3.0, -static_cast<double>(k + 2));
    const auto it = hist.find(k);
    tv += std::abs((it == hist.end() ? 0.0 : it->second) - mu_k);
  }
  tv *= 0.5;
  r.pass = tv <= 0.02;
  r.detail = "TV(empirical non-root degrees, mu(k)=4(k+1)3^{-(k+2)}) on {0..10} = " + fmt(tv);
  return r;
}

// ---- criterion 12 ----

VerifyResult criterion_dimension(const VerifyOptions& opt) {
  VerifyResult r{"dimension-ordering", true, "", 0};
  const double alpha = 1.3;
  const StableOffspring law(alpha);
  const Index n = 200000;
  const int reps = 20;
  const int j_min = 4, j_max = 10;
  std::vector<double> plain(static_cast<std::size_t>(reps)), tri(static_cast<std::size_t>(reps));
  parallel_replicas(
      opt.workers, reps,
      [&](int i, Rng& rng) {
        const PlaneTree tree = sample_bgw_conditioned(law, n, rng, 200'000'000'000ULL);
        const LukasiewiczPath path = encode(tree);
        plain[static_cast<std::size_t>(i)] = box_dimension(lamination_from_tree(path), j_min, j_max).slope;
        tri[static_cast<std::size_t>(i)] =
            box_dimension(triangulate(path, uniform_decoration(tree, rng)), j_min, j_max).slope;
      },
      opt.seed + 12);
  const double mean_plain = std::accumulate(plain.begin(), plain.end(), 0.0) / reps;
  const double mean_tri = std::accumulate(tri.begin(), tri.end(), 0.0) / reps;
  const double want_tri = 1.0 + 1.0 / alpha, want_plain = 2.0 - 1.0 / alpha;
  r.pass = mean_tri - mean_plain >= 0.3 && std::abs(mean_tri - want_tri) <= 0.25 &&
           std::abs(mean_plain - want_plain) <= 0.25;
  r.detail = "mean box slope: triangulated " + fmt(mean_tri) + " (limit " + fmt(want_tri) + "), plain " +
             fmt(mean_plain) + " (limit " + fmt(want_plain) + ")";
  return r;
}

// ---- criterion 13 ----

VerifyResult criterion_iteration(const VerifyOptions& opt) {
  VerifyResult r{"iteration-composition", true, "", 0};
  std::ostringstream detail;
  Rng rng = Rng::from_seed(opt.seed).derive("iterate", 13);

  // identity on exhaustive small bases
  for (Index n = 3; n <= 8 && r.pass; ++n) {
    for (const PlaneTree& tree : enumerate_plane_trees(n)) {
      const DecoratedLamination base = decorate(encode(tree));
      const DecoratedLamination same = compose(base, std::map<std::size_t, Lamination>{});
      if (!(same.lam == base.lam)) {
        r.pass = false;
        detail << "identity violated at n=" << n << "; ";
        break;
      }
    }
  }

  const StableOffspring law(1.4);
  const auto random_decorated = [&](Index size, Rng& use) { return decorate(encode(sample_bgw_conditioned(law, size, use))); };

  // noncrossing after random insertion, including a large case
  for (int rep = 0; rep < 100 && r.pass; ++rep) {
    Rng use = rng.derive("fill", static_cast<std::uint64_t>(rep));
    const Index base_n = rep == 0 ? 2000 : 20 + static_cast<Index>(use.below(30));
    const DecoratedLamination base = random_decorated(base_n, use);
    std::map<std::size_t, DecoratedLamination> inserts;
    for (std::size_t fid = 0; fid < base.face_decorations.size(); ++fid) {
      if (use.uniform01() < 0.5) continue;  // fill only some faces
      const Index beta = static_cast<Index>(base.face_decorations[fid].size());
      Rng frng = use.derive("face", static_cast<std::uint64_t>(fid));
      inserts[fid] = random_decorated(beta, frng);
    }
    try {
      compose(base, inserts);  // compose asserts noncrossing internally
    } catch (const Error& e) {
      r.pass = false;
      detail << "compose failed: " << e.what() << "; ";
    }
  }

  // associativity: level-2 then level-3 equals precomposing the inserts
  for (int rep = 0; rep < 100 && r.pass; ++rep) {
    Rng use = rng.derive("assoc", static_cast<std::uint64_t>(rep));
    const DecoratedLamination base = random_decorated(20 + static_cast<Index>(use.below(20)), use);
    std::map<std::size_t, DecoratedLamination> level2;
    for (std::size_t fid = 0; fid < base.face_decorations.size(); ++fid) {
      Rng frng = use.derive("l2", static_cast<std::uint64_t>(fid));
      level2[fid] = random_decorated(static_cast<Index>(base.face_decorations[fid].size()), frng);
    }
    const DecoratedLamination mid = compose(base, level2);

    // level-3 inserts, indexed by mid's faces; mid's face list is the
    // concatenation of each level-2 insert's faces (every base face was
    // filled), so the same draws can be grouped per level-2 insert
    std::map<std::size_t, DecoratedLamination> level3;
    for (std::size_t fid = 0; fid < mid.face_decorations.size(); ++fid) {
      Rng frng = use.derive("l3", static_cast<std::uint64_t>(fid));
      level3[fid] = random_decorated(static_cast<Index>(mid.face_decorations[fid].size()), frng);
    }
    const Lamination two_step = compose(mid, level3).lam;

    std::map<std::size_t, DecoratedLamination> pre;
    std::size_t cursor = 0;
    for (std::size_t fid = 0; fid < base.face_decorations.size(); ++fid) {
      std::map<std::size_t, DecoratedLamination> inner;
      for (std::size_t g = 0; g < level2[fid].face_decorations.size(); ++g) inner[g] = level3[cursor++];
      pre[fid] = compose(level2[fid], inner);
    }
    const Lamination pre_step = compose(base, pre).lam;
    if (!(two_step == pre_step)) {
      r.pass = false;
      detail << "associativity violated; ";
    }
  }

  if (r.pass) detail << "identity, noncrossing and two-route composition agree on all cases";
  r.detail = detail.str();
  return r;
}

// ---- criterion 14 ----

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cmd(const std::string& cmd) { return std::system(cmd.c_str()); }

}  // namespace

VerifyResult criterion_determinism(const VerifyOptions& opt) {
  VerifyResult r{"determinism", true, "", 0};
  if (opt.cli_path.empty()) {
    r.pass = false;
    r.detail = "cli path not provided (set NCLAM_CLI or run through the nclam binary)";
    return r;
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("nclam-verify-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ostringstream detail;
  const std::string cli = "\"" + opt.cli_path + "\"";

  const auto check_pair = [&](const std::string& what, const std::string& cmd1, const fs::path& f1,
                              const std::string& cmd2, const fs::path& f2) {
    if (run_cmd(cmd1) != 0 || run_cmd(cmd2) != 0) {
      r.pass = false;
      detail << what << ": command failed; ";
      return;
    }
    if (slurp(f1) != slurp(f2) || slurp(f1).empty()) {
      r.pass = false;
      detail << what << ": outputs differ; ";
    }
  };

  const fs::path a1 = dir / "nc-a.jsonl", a2 = dir / "nc-b.jsonl";
  check_pair("sample-nc rerun",
             cli + " sample-nc --weights uniform --n 40 --reps 10 --seed 11 --out " + a1.string(), a1,
             cli + " sample-nc --weights uniform --n 40 --reps 10 --seed 11 --out " + a2.string(), a2);

  const fs::path b1 = dir / "lc-w1.csv", b2 = dir / "lc-w2.csv";
  check_pair("longest-chord workers 1 vs 2",
             cli + " stats longest-chord --weights uniform --n 60 --reps 40 --seed 5 --workers 1 --out " + b1.string(), b1,
             cli + " stats longest-chord --weights uniform --n 60 --reps 40 --seed 5 --workers 2 --out " + b2.string(), b2);

  const fs::path c1 = dir / "it-a.json", c2 = dir / "it-b.json";
  check_pair("iterate rerun", cli + " iterate --alphas 1.3,1.7 --n 150 --seed 3 --out " + c1.string(), c1,
             cli + " iterate --alphas 1.3,1.7 --n 150 --seed 3 --out " + c2.string(), c2);

  const fs::path s1 = dir / "r-a.svg", s2 = dir / "r-b.svg";
  check_pair("render rerun", cli + " render --in " + c1.string() + " --out " + s1.string(), s1,
             cli + " render --in " + c2.string() + " --out " + s2.string(), s2);

  fs::remove_all(dir);
  if (r.pass) detail << "reruns byte-identical; worker count does not change output";
  r.detail = detail.str();
  return r;
}

// ---- registry ----

struct Entry {
  std::string suite;
  VerifyResult (*fn)(const VerifyOptions&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"enumeration", criterion_enumeration},
      {"bijection", criterion_bijection},
      {"thm5", criterion_thm5},
      {"sampler", criterion_sampler},
      {"kemperman", criterion_kemperman},
      {"prop23", criterion_size_pmf},
      {"prop23", criterion_prop23},
      {"longest-chord", criterion_longest_chord},
      {"triangulation", criterion_triangulation},
      {"triangulation", criterion_hausdorff_trend},
      {"sampler", criterion_degree_law},
      {"dimension", criterion_dimension},
      {"iteration", criterion_iteration},
      {"determinism", criterion_determinism},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites = {
      "enumeration", "bijection",     "sampler",   "kemperman", "prop23",      "longest-chord",
      "triangulation", "thm5",        "dimension", "iteration", "determinism", "all"};
  return suites;
}

std::vector<VerifyResult> run_suite(const std::string& suite, const VerifyOptions& options) {
  const auto& suites = verify_suites();
  if (std::find(suites.begin(), suites.end(), suite) == suites.end())
    throw DomainError("unknown verify suite '" + suite + "'");
  std::vector<VerifyResult> results;
  for (const Entry& e : registry()) {
    if (suite != "all" && e.suite != suite) continue;
    const auto t0 = Clock::now();
    VerifyResult r = e.fn(options);
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace nclam
