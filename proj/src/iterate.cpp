#include "nclam/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nclam/errors.hpp"
#include "nclam/samplers.hpp"

namespace nclam {

void AlphaVector::validate() const {
  if (alphas.empty()) throw DomainError("alpha vector is empty");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    const bool last = i + 1 == alphas.size();
    if (!(a > 1.0) || a > 2.0 || (!last && a >= 2.0))
      throw DomainError("alpha_" + std::to_string(i + 1) + " = " + std::to_string(a) + " out of range");
  }
}

DecoratedLamination decorate(const LukasiewiczPath& path) {
  DecoratedLamination out;
  out.lam = lamination_from_tree(path);
  for (const Face& f : faces(path)) {
    std::vector<Index> boundary = f.boundary;
    for (Index& p : boundary) p %= out.lam.m;
    if (boundary.size() >= 2 && boundary.front() == boundary.back()) boundary.pop_back();  // root wrap
    if (boundary.size() >= 4) out.face_decorations.push_back(std::move(boundary));
  }
  return out;
}

namespace {

bool noncrossing_family(const std::vector<Chord>& sorted_chords) {
  std::vector<Index> open;
  std::vector<Chord> iv = sorted_chords;
  std::sort(iv.begin(), iv.end(), [](const Chord& x, const Chord& y) {
    return x.first != y.first ? x.first < y.first : x.second > y.second;
  });
  for (const auto& [lo, hi] : iv) {
    while (!open.empty() && open.back() <= lo) open.pop_back();
    if (!open.empty() && hi > open.back()) return false;
    open.push_back(hi);
  }
  return true;
}

}  // namespace

DecoratedLamination compose(const DecoratedLamination& base,
                            const std::map<std::size_t, DecoratedLamination>& inserts) {
  DecoratedLamination out;
  out.lam.m = base.lam.m;
  out.lam.chords = base.lam.chords;

  for (const auto& [fid, insert] : inserts) {
    if (fid >= base.face_decorations.size()) throw ResolutionMismatch("face id " + std::to_string(fid) + " out of range");
    const std::vector<Index>& phi = base.face_decorations[fid];
    if (insert.lam.m != static_cast<Index>(phi.size()))
      throw ResolutionMismatch("insert resolution " + std::to_string(insert.lam.m) + " vs boundary size " +
                               std::to_string(phi.size()));
    for (const auto& [p, q] : insert.lam.chords) {
      out.lam.add(phi[static_cast<std::size_t>(p)], phi[static_cast<std::size_t>(q)]);
    }
  }
  out.lam.finish();
  if (!noncrossing_family(out.lam.chords)) throw CrossingAfterMap("mapped chords cross the base");

  // untouched faces keep their enumeration; inserted faces are replaced by
  // the composed enumerations phi_V o phi_F
  for (std::size_t fid = 0; fid < base.face_decorations.size(); ++fid) {
    const auto it = inserts.find(fid);
    if (it == inserts.end()) {
      out.face_decorations.push_back(base.face_decorations[fid]);
      continue;
    }
    const std::vector<Index>& phi = base.face_decorations[fid];
    for (const std::vector<Index>& inner : it->second.face_decorations) {
      std::vector<Index> composed;
      composed.reserve(inner.size());
      for (Index t : inner) composed.push_back(phi[static_cast<std::size_t>(t)]);
      if (composed.size() >= 4) out.face_decorations.push_back(std::move(composed));
    }
  }
  return out;
}

DecoratedLamination compose(const DecoratedLamination& base, const std::map<std::size_t, Lamination>& inserts) {
  std::map<std::size_t, DecoratedLamination> wrapped;
  for (const auto& [fid, lam] : inserts) wrapped[fid] = DecoratedLamination{lam, {}};
  return compose(base, wrapped);
}

namespace {

PlaneTree sample_level_tree(double alpha, Index n, Rng& rng) {
  if (alpha >= 2.0) {
    // alpha = 2 realized by a critical geometric law (mean 1, variance 2)
    Pmf geo;
    geo.p.resize(64);
    for (std::size_t k = 0; k < geo.p.size(); ++k) geo.p[k] = std::ldexp(1.0, -static_cast<int>(k) - 1);
    geo.tail = std::ldexp(1.0, -64);
    return sample_bgw_conditioned(geo, n, rng);
  }
  const StableOffspring law(alpha);
  return sample_bgw_conditioned(law, n, rng);
}

}  // namespace

DecoratedLamination sample_iterated_decorated(const AlphaVector& alphas, Index n, Rng& rng) {
  alphas.validate();
  if (n < 3) throw DomainError("sample_iterated needs n >= 3");

  Rng level_rng = rng.derive("level", 1);
  DecoratedLamination acc = decorate(encode(sample_level_tree(alphas.alphas[0], n, level_rng)));

  for (std::size_t q = 1; q < alphas.alphas.size(); ++q) {
    Rng stage = rng.derive("level", static_cast<std::uint64_t>(q + 1));
    std::map<std::size_t, DecoratedLamination> inserts;
    for (std::size_t fid = 0; fid < acc.face_decorations.size(); ++fid) {
      const Index beta = static_cast<Index>(acc.face_decorations[fid].size());
      if (beta < 4) continue;
      Rng face_rng = stage.derive("face", static_cast<std::uint64_t>(fid));
      inserts[fid] = decorate(encode(sample_level_tree(alphas.alphas[q], beta, face_rng)));
    }
    acc = compose(acc, inserts);
  }
  return acc;
}

Lamination sample_iterated(const AlphaVector& alphas, Index n, Rng& rng) {
  return sample_iterated_decorated(alphas, n, rng).lam;
}

double dim_formula(const AlphaVector& alphas) {
  alphas.validate();
  double best = 2.0 - 1.0 / alphas.alphas[0];
  double prefix = 1.0;
  for (std::size_t q = 1; q < alphas.alphas.size(); ++q) {
    prefix /= alphas.alphas[q - 1];
    best = std::max(best, 1.0 + prefix * (1.0 - 1.0 / alphas.alphas[q]));
  }
  return best;
}

}  // namespace nclam
