#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nclam/lamination.hpp"
#include "nclam/tree.hpp"

namespace nclam {

using BigInt = boost::multiprecision::cpp_int;

// Angular length of the longest chord: max over chords of min(d, m-d)/m.
double longest_chord(const Lamination& lam);

// Law of the longest chord of the Brownian triangulation; density
// (3x-1) / (pi x^2 (1-x)^2 sqrt(1-2x)) on [1/3, 1/2]. The cdf integrates in
// the u = sqrt(1-2x) variable, which removes the endpoint singularity.
class ChordLengthLaw {
 public:
  ChordLengthLaw();

  double density(double x) const;
  double cdf(double x) const;

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

double brownian_longest_chord_cdf(double x);

// Exact #NC_n^A with all degrees in A (nullopt = no constraint), via the
// weighted subtree convolution S = z * sum_{d in A} d S^{d-1}.
BigInt count_nc(Index n, const std::optional<std::vector<int>>& degrees = std::nullopt);

struct CountTable {
  std::optional<std::vector<int>> degrees;
  std::map<Index, BigInt> counts;
};

CountTable count_table(Index max_n, const std::optional<std::vector<int>>& degrees = std::nullopt);

struct Theorem5Constants {
  double b = 0.0;
  double K = 0.0;      // constant in front of rho^{n-1} n^{-3/2}
  double rho = 0.0;    // growth base sum_{k+1 in A} (k+1) b^{k-1}
  Index period = 1;    // gcd(A - 1)
};

Theorem5Constants theorem5_constants(const std::optional<std::vector<int>>& degrees);

// sup |empirical - cdf| over the sample points, both step sides.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

struct BoxDimension {
  double slope = 0.0;
  std::vector<std::pair<int, std::uint64_t>> counts;  // (level j, boxes hit)
};

// Count of dyadic squares of side 2^-j meeting the chord union, for each
// level, and the least-squares slope of log2 N_j against j.
BoxDimension box_dimension(const Lamination& lam, int j_min, int j_max);

// Empirical children-count distribution over non-root vertices.
std::map<Index, double> degree_histogram(const std::vector<PlaneTree>& batch);

// Regularized upper incomplete gamma Q(a, x); chi-square tail helper.
double gamma_q(double a, double x);
double chi_square_pvalue(double statistic, int dof);

}  // namespace nclam
