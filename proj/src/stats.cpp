#include "nclam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "nclam/errors.hpp"
#include "nclam/geom.hpp"
#include "nclam/offspring.hpp"

namespace nclam {

double longest_chord(const Lamination& lam) {
  if (lam.chords.empty()) throw EmptySet("longest_chord of an empty chord set");
  Index best = 0;
  for (const auto& [p, q] : lam.chords) {
    const Index d = q - p;
    best = std::max(best, std::min(d, lam.m - d));
  }
  return static_cast<double>(best) / static_cast<double>(lam.m);
}

namespace {

// integrand of the cdf after x = (1-u^2)/2: 8 (1-3u^2) / (pi (1-u^4)^2)
double chord_density_u(double u) {
  const double u2 = u * u;
  const double d = 1.0 - u2 * u2;
  return 8.0 * (1.0 - 3.0 * u2) / (M_PI * d * d);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                        double fm, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  if (a >= b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fb, fm, whole, eps, 48);
}

const double kUMax = 1.0 / std::sqrt(3.0);

}  // namespace

ChordLengthLaw::ChordLengthLaw() {
  const int cells = 1024;
  grid_.resize(cells + 1);
  values_.resize(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    grid_[static_cast<std::size_t>(i)] = 1.0 / 3.0 + (0.5 - 1.0 / 3.0) * static_cast<double>(i) / cells;
    values_[static_cast<std::size_t>(i)] = cdf(grid_[static_cast<std::size_t>(i)]);
  }
}

double ChordLengthLaw::density(double x) const {
  if (x <= 1.0 / 3.0 || x >= 0.5) return 0.0;
  return (3.0 * x - 1.0) / (M_PI * x * x * (1.0 - x) * (1.0 - x) * std::sqrt(1.0 - 2.0 * x));
}

double ChordLengthLaw::cdf(double x) const {
  if (x <= 1.0 / 3.0) return 0.0;
  if (x >= 0.5) return 1.0;
  const double u = std::sqrt(1.0 - 2.0 * x);
  return integrate(chord_density_u, u, kUMax, 1e-10);
}

double brownian_longest_chord_cdf(double x) {
  static const ChordLengthLaw law;
  return law.cdf(x);
}

// ---- exact counting ----

namespace {

// (S^2)_q and (S^3)_q convolutions grown alongside s for the unconstrained
// cubic S(1-S)^2 = z.
BigInt count_nc_all(Index n) {
  const Index N = n - 1;  // we need [z^{n-1}] of S/(1-S)
  std::vector<BigInt> s(static_cast<std::size_t>(N) + 1), conv2(static_cast<std::size_t>(N) + 1),
      conv3(static_cast<std::size_t>(N) + 1), g(static_cast<std::size_t>(N) + 1);
  if (N >= 1) s[1] = 1;
  for (Index q = 2; q <= N; ++q) {
    BigInt c2 = 0;
    for (Index i = 1; i <= q - 1; ++i) c2 += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(q - i)];
    conv2[static_cast<std::size_t>(q)] = c2;
    BigInt c3 = 0;
    for (Index i = 1; i <= q - 2; ++i) c3 += s[static_cast<std::size_t>(i)] * conv2[static_cast<std::size_t>(q - i)];
    conv3[static_cast<std::size_t>(q)] = c3;
    s[static_cast<std::size_t>(q)] = 2 * c2 - c3;
  }
  // G = S + S G
  for (Index q = 1; q <= N; ++q) {
    BigInt v = s[static_cast<std::size_t>(q)];
    for (Index i = 1; i <= q - 1; ++i) v += s[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(q - i)];
    g[static_cast<std::size_t>(q)] = v;
  }
  return g[static_cast<std::size_t>(N)];
}

BigInt count_nc_degrees(Index n, const std::vector<int>& degrees) {
  std::vector<int> ds = degrees;
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  if (!ds.empty() && ds.front() < 1) throw DomainError("degrees start at 1");
  const Index N = n - 1;
  const int maxd = ds.empty() ? 0 : ds.back();

  // PS[j][m] = [z^m] S^j, filled column by column in m
  std::vector<std::vector<BigInt>> PS(static_cast<std::size_t>(maxd) + 1,
                                      std::vector<BigInt>(static_cast<std::size_t>(N) + 1));
  std::vector<BigInt>& s = PS[1];
  PS[0][0] = 1;
  for (Index m = 1; m <= N; ++m) {
    // s_m = sum_d d * PS[d-1][m-1]
    BigInt sm = 0;
    for (int d : ds) sm += d * PS[static_cast<std::size_t>(d) - 1][static_cast<std::size_t>(m) - 1];
    s[static_cast<std::size_t>(m)] = sm;
    for (int j = 2; j <= maxd; ++j) {
      BigInt v = 0;
      for (Index i = 1; i <= m - 1; ++i)
        v += s[static_cast<std::size_t>(i)] * PS[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(m - i)];
      // j copies, the last one takes index m - 0? S has no constant term, so
      // the i = m term needs PS[j-1][0] which is zero for j >= 2
      PS[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = v;
    }
  }
  BigInt total = 0;
  for (int d : ds) {
    if (d <= N) total += PS[static_cast<std::size_t>(d)][static_cast<std::size_t>(N)];
  }
  return total;
}

}  // namespace

BigInt count_nc(Index n, const std::optional<std::vector<int>>& degrees) {
  if (n < 1) throw DomainError("count_nc needs n >= 1");
  if (n == 1) return 1;  // the one-point tree, degree set irrelevant
  if (!degrees) return count_nc_all(n);
  return count_nc_degrees(n, *degrees);
}

CountTable count_table(Index max_n, const std::optional<std::vector<int>>& degrees) {
  CountTable table;
  table.degrees = degrees;
  for (Index n = 1; n <= max_n; ++n) table.counts[n] = count_nc(n, degrees);
  return table;
}

Theorem5Constants theorem5_constants(const std::optional<std::vector<int>>& degrees) {
  Theorem5Constants out;
  const WeightSeq w = degrees ? WeightSeq::degree_set(*degrees) : WeightSeq::uniform();
  out.b = solve_critical_b(w);
  const double b = out.b;

  // sums over k with k+1 in A (k = degree - 1)
  double sum_kp1 = 0.0;       // (k+1) b^k
  double sum_kp1_km1 = 0.0;   // (k+1)(k^2-1) b^k
  double sum_growth = 0.0;    // (k+1) b^{k-1}
  double sum_root = 0.0;      // k b^k over k in A
  const auto add_degree = [&](std::int64_t d, double wt) {
    const double k = static_cast<double>(d - 1);
    const double bk = std::pow(b, k);
    sum_kp1 += wt * static_cast<double>(d) * bk;
    sum_kp1_km1 += wt * static_cast<double>(d) * (k * k - 1.0) * bk;
    sum_growth += wt * static_cast<double>(d) * std::pow(b, k - 1.0);
    sum_root += wt * static_cast<double>(d) * std::pow(b, static_cast<double>(d));
  };
  if (degrees) {
    std::vector<int> ds = *degrees;
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    Index g = 0;
    for (int d : ds) {
      add_degree(d, 1.0);
      g = std::gcd(g, static_cast<Index>(d - 1));
    }
    out.period = g == 0 ? 1 : g;
  } else {
    out.period = 1;
    double prev = 0.0;
    for (std::int64_t d = 1; d < 1'000'000; ++d) {
      const double term = static_cast<double>(d) * std::pow(b, static_cast<double>(d - 1));
      add_degree(d, 1.0);
      if (d > 8 && term < 1e-18 * sum_kp1 && prev < 1e-18 * sum_kp1) break;
      prev = term;
    }
  }
  out.rho = sum_growth;
  out.K = static_cast<double>(out.period) * std::sqrt(sum_kp1 / (2.0 * M_PI * sum_kp1_km1)) * sum_root;
  return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EmptySet("ks_distance on empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - F));
    worst = std::max(worst, std::abs(static_cast<double>(i) / n - F));
  }
  return worst;
}

BoxDimension box_dimension(const Lamination& lam, int j_min, int j_max) {
  if (j_min > j_max || j_min < 0) throw DomainError("bad level range");
  if ((std::int64_t{1} << j_max) > 4 * std::max<Index>(lam.m, 1))
    throw ResolutionTooFine("2^j_max must stay within 4*m");

  BoxDimension out;
  std::vector<double> xs, ys;
  for (int j = j_min; j <= j_max; ++j) {
    const double cell = std::ldexp(1.0, -j);
    std::unordered_set<std::uint64_t> seen;
    for (const auto& [p, q] : lam.chords) {
      walk_segment_cells(circle_point(p, lam.m), circle_point(q, lam.m), -1.0, cell,
                         [&](std::int64_t ix, std::int64_t iy) {
                           seen.insert((static_cast<std::uint64_t>(ix + 4) << 32) | static_cast<std::uint64_t>(iy + 4));
                         });
    }
    out.counts.emplace_back(j, seen.size());
    xs.push_back(static_cast<double>(j));
    ys.push_back(std::log2(static_cast<double>(std::max<std::size_t>(seen.size(), 1))));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  out.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return out;
}

std::map<Index, double> degree_histogram(const std::vector<PlaneTree>& batch) {
  if (batch.empty()) throw EmptyBatch("degree_histogram of an empty batch");
  std::map<Index, double> hist;
  double total = 0.0;
  for (const PlaneTree& tree : batch) {
    for (Index u = 1; u < tree.size(); ++u) {
      hist[tree.kids[static_cast<std::size_t>(u)]] += 1.0;
      total += 1.0;
    }
  }
  for (auto& [k, v] : hist) v /= total;
  return hist;
}

// ---- incomplete gamma ----

namespace {

double gamma_q_series_p(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  // Lentz continued fraction for Q(a,x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw DomainError("gamma_q needs x >= 0, a > 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_q_series_p(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_pvalue(double statistic, int dof) {
  return gamma_q(0.5 * static_cast<double>(dof), 0.5 * statistic);
}

}  // namespace nclam
