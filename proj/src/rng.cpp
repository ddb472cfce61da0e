#include "nclam/rng.hpp"

#include <cassert>
#include <numeric>

namespace nclam {

AliasTable::AliasTable(const std::vector<double>& pmf) {
  assert(!pmf.empty());
  std::size_t n = 1;
  log2size_ = 0;
  while (n < pmf.size()) {
    n <<= 1;
    ++log2size_;
  }
  assert(log2size_ <= 17);  // index and fraction bits must not overlap
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);

  std::vector<double> scaled(n, 0.0);
  for (std::size_t i = 0; i < pmf.size(); ++i) scaled[i] = pmf[i] * static_cast<double>(n) / total;

  std::vector<int> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));
  }
  while (!small.empty() && !large.empty()) {
    const int s = small.back();
    const int l = large.back();
    small.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (int i : large) prob_[i] = 1.0;
  for (int i : small) prob_[i] = 1.0;  // numerical leftovers
}

}  // namespace nclam
