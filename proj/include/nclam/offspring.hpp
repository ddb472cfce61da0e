#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nclam/rng.hpp"

namespace nclam {

// Degree weight sequence (w(k) : k >= 1). Either an explicit finite map or
// one of the closed-form families the CLI accepts.
class WeightSeq {
 public:
  enum class Kind { Finite, Uniform, Geometric, Zipf };

  static WeightSeq uniform();
  static WeightSeq finite(std::map<int, double> w);
  static WeightSeq degree_set(const std::vector<int>& degrees);
  static WeightSeq geometric(double q);
  static WeightSeq zipf(double a);

  // "uniform" | "set:1,3" | "geometric:q" | "zipf:a" | {"w":{"1":1.0,...}}
  static WeightSeq parse(const std::string& spec);

  double w(std::int64_t k) const;  // weight of degree k >= 1
  double rho() const;              // radius (limsup w(k)^{1/k})^{-1}
  Kind kind() const { return kind_; }
  const std::map<int, double>& finite_weights() const { return finite_; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::Uniform;
  std::map<int, double> finite_;
  double param_ = 0.0;  // q for geometric, a for zipf
};

// Truncated pmf on {0,1,...} with certified forgotten tail mass.
struct Pmf {
  std::vector<double> p;
  double tail = 0.0;

  double at(std::int64_t k) const {
    return (k >= 0 && k < static_cast<std::int64_t>(p.size())) ? p[static_cast<std::size_t>(k)] : 0.0;
  }
  double mean() const;
  double second_moment() const;
  std::int64_t max_support() const { return static_cast<std::int64_t>(p.size()) - 1; }
};

// The (mu, mu_root) construction: mu(k) = a(k+1)w(k+1)b^k on {0,1,...},
// mu_root(k) = c w(k) b^k on {1,2,...}.
struct OffspringPair {
  double b = 0.0;
  double a = 0.0;
  double c = 0.0;
  Pmf mu;
  Pmf mu_root;  // index k, entry 0 is zero
  double mean_mu = 0.0;
  double var_mu = 0.0;
};

// Generating-function ratio  sum k(k+1)w(k+1)x^k / sum (k+1)w(k+1)x^k,
// null at 0, continuous and strictly increasing on [0, rho).
double psi(const WeightSeq& w, double x);

// Unique b with psi(b) = 1, found by bisection; NoCriticalPoint when psi
// stays below 1 on [0, rho).
double solve_critical_b(const WeightSeq& w);

OffspringPair build_pair(const WeightSeq& w, double b);

// Critical heavy-tailed offspring in the stable domain of attraction:
// mu(k) = k^{-(1+alpha)} / zeta(alpha) for k >= 1, mean exactly 1.
class StableOffspring {
 public:
  explicit StableOffspring(double alpha);

  double alpha() const { return alpha_; }
  double zeta_alpha() const { return zeta_alpha_; }
  double pmf(std::int64_t k) const;
  double tail(std::int64_t n) const;  // mu([n, inf))
  double mean() const { return 1.0; }

  std::int64_t sample(Rng& rng) const;

 private:
  // small enough to stay cache-resident in the rejection hot loop; the tail
  // bucket past the cap is resolved by exact analytic inversion
  static constexpr std::int64_t kTableCap = (1 << 13) - 2;

  double alpha_ = 0.0;
  double zeta_alpha_ = 0.0;
  double zeta_alpha1_ = 0.0;
  double p0_ = 0.0;
  AliasTable alias_;  // {0..kTableCap} plus a bucket for the analytic tail
};

double scaling_constant_B(const OffspringPair& pair, std::int64_t n);
double scaling_constant_B(const StableOffspring& law, std::int64_t n);

// Riemann zeta by direct summation plus Euler-Maclaurin tail, |err| < 1e-12.
double zeta(double s);
double zeta_tail(double s, std::int64_t n);  // sum_{k >= n} k^{-s}

}  // namespace nclam
