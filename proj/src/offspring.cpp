#include "nclam/offspring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nclam/errors.hpp"

namespace nclam {

namespace {

constexpr double kHuge = std::numeric_limits<double>::infinity();
constexpr std::int64_t kSeriesCap = 3'000'000;

}  // namespace

WeightSeq WeightSeq::uniform() {
  WeightSeq ws;
  ws.kind_ = Kind::Uniform;
  return ws;
}

WeightSeq WeightSeq::finite(std::map<int, double> w) {
  WeightSeq ws;
  ws.kind_ = Kind::Finite;
  for (auto& [k, v] : w) {
    if (k < 1) throw DomainError("weight degrees start at 1");
    if (v < 0) throw DomainError("weights must be nonnegative");
  }
  ws.finite_ = std::move(w);
  bool any = false;
  for (auto& [k, v] : ws.finite_) any = any || v > 0;
  if (!any) throw DomainError("some w(k) > 0 is required");
  return ws;
}

WeightSeq WeightSeq::degree_set(const std::vector<int>& degrees) {
  std::map<int, double> w;
  for (int d : degrees) w[d] = 1.0;
  return finite(std::move(w));
}

WeightSeq WeightSeq::geometric(double q) {
  if (!(q > 0.0)) throw DomainError("geometric weights need q > 0");
  WeightSeq ws;
  ws.kind_ = Kind::Geometric;
  ws.param_ = q;
  return ws;
}

WeightSeq WeightSeq::zipf(double a) {
  if (!(a > 0.0)) throw DomainError("zipf weights need a > 0");
  WeightSeq ws;
  ws.kind_ = Kind::Zipf;
  ws.param_ = a;
  return ws;
}

WeightSeq WeightSeq::parse(const std::string& spec) {
  if (spec == "uniform") return uniform();
  if (spec.rfind("set:", 0) == 0) {
    std::vector<int> degrees;
    std::stringstream ss(spec.substr(4));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) degrees.push_back(std::stoi(item));
    }
    if (degrees.empty()) throw DomainError("empty degree set in '" + spec + "'");
    return degree_set(degrees);
  }
  if (spec.rfind("geometric:", 0) == 0) return geometric(std::stod(spec.substr(10)));
  if (spec.rfind("zipf:", 0) == 0) return zipf(std::stod(spec.substr(5)));
  if (!spec.empty() && spec.front() == '{') {
    const auto j = nlohmann::json::parse(spec);
    if (!j.contains("w") || !j["w"].is_object()) throw DomainError("weight JSON needs a \"w\" object");
    std::map<int, double> w;
    for (auto it = j["w"].begin(); it != j["w"].end(); ++it) {
      w[std::stoi(it.key())] = it.value().get<double>();
    }
    return finite(std::move(w));
  }
  throw DomainError("cannot parse weight spec '" + spec + "'");
}

double WeightSeq::w(std::int64_t k) const {
  if (k < 1) return 0.0;
  switch (kind_) {
    case Kind::Uniform:
      return 1.0;
    case Kind::Finite: {
      if (k > std::numeric_limits<int>::max()) return 0.0;
      const auto it = finite_.find(static_cast<int>(k));
      return it == finite_.end() ? 0.0 : it->second;
    }
    case Kind::Geometric:
      return std::pow(param_, static_cast<double>(k - 1));
    case Kind::Zipf:
      return std::pow(static_cast<double>(k), -param_);
  }
  return 0.0;
}

double WeightSeq::rho() const {
  switch (kind_) {
    case Kind::Uniform:
    case Kind::Zipf:
      return 1.0;
    case Kind::Geometric:
      return 1.0 / param_;
    case Kind::Finite:
      return kHuge;
  }
  return 0.0;
}

std::string WeightSeq::describe() const {
  switch (kind_) {
    case Kind::Uniform:
      return "uniform";
    case Kind::Geometric:
      return "geometric:" + std::to_string(param_);
    case Kind::Zipf:
      return "zipf:" + std::to_string(param_);
    case Kind::Finite: {
      std::string s = "finite{";
      bool first = true;
      for (auto& [k, v] : finite_) {
        if (!first) s += ",";
        s += std::to_string(k) + ":" + std::to_string(v);
        first = false;
      }
      return s + "}";
    }
  }
  return "?";
}

namespace {

// sum_{k >= 0} poly(k) * w(k+1) * x^k where poly is one of a few fixed
// shapes. Terms eventually decay geometrically for x < rho; the running
// geometric bound certifies the truncation.
template <typename Term>
double sum_series(const WeightSeq& w, double x, Term term_of) {
  if (w.kind() == WeightSeq::Kind::Finite) {
    double s = 0.0;
    for (auto& [deg, wt] : w.finite_weights()) {
      const std::int64_t k = deg - 1;
      if (wt > 0) s += term_of(k) * wt * std::pow(x, static_cast<double>(k));
    }
    return s;
  }
  double sum = 0.0;
  double prev = 0.0;
  for (std::int64_t k = 0; k < kSeriesCap; ++k) {
    const double t = term_of(k) * w.w(k + 1) * std::pow(x, static_cast<double>(k));
    sum += t;
    if (k >= 8 && t > 0.0 && prev > 0.0) {
      const double r = t / prev;
      if (r < 0.9999) {
        const double tail_bound = t * r / (1.0 - r);
        if (tail_bound < 1e-15 * std::max(sum, 1e-300)) return sum;
      }
    }
    prev = t;
  }
  return sum;  // cap reached; caller-side tolerances are loose enough there
}

}  // namespace

double psi(const WeightSeq& w, double x) {
  if (x < 0.0 || x >= w.rho()) throw DomainError("psi needs 0 <= x < rho");
  if (x == 0.0) {
    // limit value: smallest k with w(k+1) > 0
    for (std::int64_t k = 0; k < kSeriesCap; ++k) {
      if (w.w(k + 1) > 0.0) return static_cast<double>(k);
    }
    throw DivergentWeights("no positive weight found");
  }
  const double num = sum_series(w, x, [](std::int64_t k) { return static_cast<double>(k) * static_cast<double>(k + 1); });
  const double den = sum_series(w, x, [](std::int64_t k) { return static_cast<double>(k + 1); });
  if (!(den > 0.0)) throw DivergentWeights("vanishing denominator in psi");
  return num / den;
}

double solve_critical_b(const WeightSeq& w) {
  const double rho = w.rho();
  if (!(rho > 0.0)) throw DivergentWeights("rho = 0");

  if (w.kind() == WeightSeq::Kind::Finite) {
    // Criticality reads sum_d d(d-2) w(d) b^{d-1} = 0; with w(1) > 0 a root
    // exists iff some degree >= 3 carries weight. Decide analytically so the
    // psi probes cannot be fooled by floating-point saturation at huge x.
    bool has_d3 = false, has_d1 = false;
    for (auto& [d, wt] : w.finite_weights()) {
      if (wt > 0 && d >= 3) has_d3 = true;
      if (wt > 0 && d == 1) has_d1 = true;
    }
    if (has_d1 && !has_d3) throw NoCriticalPoint("degrees bounded by 2 for " + w.describe());
  }

  // Bracket: psi(0+) < 1 (leaves exist in any usable weight sequence), walk
  // x toward rho until psi >= 1. The probe count is the configurable cap on
  // how close to rho we look.
  double hi = -1.0;
  if (std::isinf(rho)) {
    for (double x = 1.0; x < 1e18; x *= 2.0) {
      if (psi(w, x) >= 1.0) {
        hi = x;
        break;
      }
    }
  } else {
    for (int i = 1; i <= 20; ++i) {
      const double x = rho * (1.0 - std::ldexp(1.0, -i));
      if (psi(w, x) >= 1.0) {
        hi = x;
        break;
      }
    }
  }
  if (hi < 0.0) throw NoCriticalPoint("psi stays below 1 on [0, rho) for " + w.describe());

  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = psi(w, mid);
    if (std::abs(v - 1.0) < 1e-13) return mid;
    (v < 1.0 ? lo : hi) = mid;
    if (hi - lo < 1e-16 * std::max(1.0, hi)) break;
  }
  const double b = 0.5 * (lo + hi);
  if (std::abs(psi(w, b) - 1.0) > 1e-12)
    throw NoCriticalPoint("bisection did not reach |psi(b)-1| < 1e-12 for " + w.describe());
  return b;
}

double Pmf::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) m += static_cast<double>(k) * p[k];
  return m;
}

double Pmf::second_moment() const {
  double m = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) m += static_cast<double>(k) * static_cast<double>(k) * p[k];
  return m;
}

OffspringPair build_pair(const WeightSeq& w, double b) {
  if (!(b > 0.0) || b >= w.rho()) throw DomainError("build_pair needs 0 < b < rho");
  OffspringPair pair;
  pair.b = b;

  const double inv_a = sum_series(w, b, [](std::int64_t k) { return static_cast<double>(k + 1); });
  if (!(inv_a > 0.0) || !std::isfinite(inv_a)) throw DivergentNormalizer("sum (k+1)w(k+1)b^k");
  pair.a = 1.0 / inv_a;

  // c normalizes mu_root: sum_{k>=1} w(k) b^k
  double inv_c = 0.0;
  if (w.kind() == WeightSeq::Kind::Finite) {
    for (auto& [deg, wt] : w.finite_weights()) inv_c += wt * std::pow(b, deg);
  } else {
    double prev = 0.0;
    for (std::int64_t k = 1; k < kSeriesCap; ++k) {
      const double t = w.w(k) * std::pow(b, static_cast<double>(k));
      inv_c += t;
      if (k >= 8 && t > 0.0 && prev > 0.0) {
        const double r = t / prev;
        if (r < 0.9999 && t * r / (1.0 - r) < 1e-15 * inv_c) break;
      }
      prev = t;
    }
  }
  if (!(inv_c > 0.0) || !std::isfinite(inv_c)) throw DivergentNormalizer("sum w(k)b^k");
  pair.c = 1.0 / inv_c;

  // Materialize both pmfs, truncating once the certified tail drops below
  // 1e-16 of the mass.
  auto fill = [&](bool root) {
    Pmf pmf;
    double prev = 0.0;
    std::int64_t run_low = 0;
    for (std::int64_t k = root ? 1 : 0; k < kSeriesCap; ++k) {
      const double t = root ? pair.c * w.w(k) * std::pow(b, static_cast<double>(k))
                            : pair.a * static_cast<double>(k + 1) * w.w(k + 1) * std::pow(b, static_cast<double>(k));
      pmf.p.resize(static_cast<std::size_t>(k) + 1, 0.0);
      pmf.p[static_cast<std::size_t>(k)] = t;
      if (w.kind() == WeightSeq::Kind::Finite && k >= w.finite_weights().rbegin()->first) break;
      if (k >= 8 && t > 0.0 && prev > 0.0) {
        const double r = t / prev;
        if (r < 0.9999) {
          const double tail_bound = t * r / (1.0 - r);
          if (tail_bound < 1e-16) {
            pmf.tail = tail_bound;
            break;
          }
        }
      }
      if (t == 0.0 && prev == 0.0 && ++run_low > 64 && w.kind() != WeightSeq::Kind::Finite) break;
      prev = t;
    }
    while (!pmf.p.empty() && pmf.p.back() == 0.0) pmf.p.pop_back();
    return pmf;
  };
  pair.mu = fill(false);
  pair.mu_root = fill(true);

  pair.mean_mu = pair.mu.mean();
  pair.var_mu = pair.mu.second_moment() - pair.mean_mu * pair.mean_mu;
  return pair;
}

// ---- zeta ----

double zeta(double s) {
  if (!(s > 1.0)) throw DomainError("zeta(s) needs s > 1");
  double sum = 0.0;
  const std::int64_t N = 100'000;
  for (std::int64_t k = 1; k < N; ++k) sum += std::pow(static_cast<double>(k), -s);
  return sum + zeta_tail(s, N);
}

double zeta_tail(double s, std::int64_t n) {
  if (n < 1) throw DomainError("zeta_tail needs n >= 1");
  double head = 0.0;
  std::int64_t m = n;
  while (m < 64) {
    head += std::pow(static_cast<double>(m), -s);
    ++m;
  }
  // Euler-Maclaurin from m: integral + f(m)/2 - f'(m)/12 + f'''(m)/720
  const double x = static_cast<double>(m);
  const double f = std::pow(x, -s);
  const double integral = std::pow(x, 1.0 - s) / (s - 1.0);
  const double d1 = -s * std::pow(x, -s - 1.0);
  const double d3 = -s * (s + 1.0) * (s + 2.0) * std::pow(x, -s - 3.0);
  return head + integral + 0.5 * f - d1 / 12.0 + d3 / 720.0;
}

// ---- stable offspring ----

StableOffspring::StableOffspring(double alpha) : alpha_(alpha) {
  if (!(alpha > 1.0) || !(alpha < 2.0)) throw DomainError("stable index must lie in (1,2)");
  zeta_alpha_ = zeta(alpha);
  zeta_alpha1_ = zeta(alpha + 1.0);
  p0_ = 1.0 - zeta_alpha1_ / zeta_alpha_;

  // O(1) draws: alias table over {0..cap} plus one bucket holding the whole
  // tail, which is resolved by inverting the analytic tail when hit.
  std::vector<double> table(kTableCap + 2);
  for (std::int64_t k = 0; k <= kTableCap; ++k) table[static_cast<std::size_t>(k)] = pmf(k);
  table[kTableCap + 1] = tail(kTableCap + 1);
  alias_ = AliasTable(table);
}

double StableOffspring::pmf(std::int64_t k) const {
  if (k < 0) return 0.0;
  if (k == 0) return p0_;
  return std::pow(static_cast<double>(k), -(1.0 + alpha_)) / zeta_alpha_;
}

double StableOffspring::tail(std::int64_t n) const {
  if (n <= 0) return 1.0;
  return zeta_tail(1.0 + alpha_, n) / zeta_alpha_;
}

std::int64_t StableOffspring::sample(Rng& rng) const {
  const std::int64_t k = alias_.sample(rng);
  if (k <= kTableCap) return k;
  // conditional tail draw: smallest m with tail(m+1) <= v * tail(cap+1)
  const double target = rng.uniform01() * tail(kTableCap + 1);
  std::int64_t lo = kTableCap + 1, hi = kTableCap + 1;
  while (tail(hi + 1) > target) {
    lo = hi + 1;
    hi *= 2;
    if (hi > (std::int64_t{1} << 52)) break;
  }
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (tail(mid + 1) <= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

double scaling_constant_B(const OffspringPair& pair, std::int64_t n) {
  const double sigma = std::sqrt(pair.var_mu);
  return sigma * std::sqrt(static_cast<double>(n) / 2.0);
}

double scaling_constant_B(const StableOffspring& law, std::int64_t n) {
  return std::pow(static_cast<double>(n), 1.0 / law.alpha());
}

}  // namespace nclam
