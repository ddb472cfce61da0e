#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace nclam {

// xoshiro256++ with splitmix64 seeding. We roll our own instead of using
// <random> distributions because the standard leaves their algorithms
// implementation-defined and the CLI promises byte-identical reruns.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  void reseed(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  std::uint64_t u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if ((n & (n - 1)) == 0) return u64() & (n - 1);
    const std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = u64();
      if (r >= threshold) return r % n;
    }
  }

  // Derive an independent stream from a label path, e.g.
  // rng.derive({"replica", i}). Derivation depends only on the parent's
  // original seed path, never on how much has been drawn from it.
  Rng derive(std::string_view tag, std::uint64_t index) const {
    std::uint64_t h = key_;
    h = mix(h, 0x9e3779b97f4a7c15ULL);
    for (char c : tag) h = mix(h, static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    h = mix(h, index);
    Rng child(h);
    child.key_ = h;
    return child;
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    std::uint64_t x = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    return splitmix64(x);
  }

  std::uint64_t s_[4] = {};
  std::uint64_t key_ = 0;

 public:
  // Construct with an explicit derivation key (used by derive()).
  static Rng from_seed(std::uint64_t seed) {
    Rng r(seed);
    r.key_ = seed;
    return r;
  }
};

// Walker alias table for O(1) draws from a finite pmf. The table is padded
// to a power of two so one 64-bit draw covers both the cell index (top bits)
// and the accept fraction (low 47 bits).
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(const std::vector<double>& pmf);

  int sample(Rng& rng) const {
    const std::uint64_t r = rng.u64();
    const std::size_t i = log2size_ == 0 ? 0 : static_cast<std::size_t>(r >> (64 - log2size_));
    const double u = static_cast<double>(r & ((std::uint64_t{1} << 47) - 1)) * 0x1.0p-47;
    return u < prob_[i] ? static_cast<int>(i) : alias_[i];
  }

  bool empty() const { return prob_.empty(); }

 private:
  std::vector<double> prob_;
  std::vector<int> alias_;
  int log2size_ = 0;
};

}  // namespace nclam
