#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nclam/lamination.hpp"
#include "nclam/rng.hpp"

namespace nclam {

// Lamination whose non-triangular faces carry an order-preserving boundary
// enumeration: face_decorations[f][t] is the t-th boundary position in
// circular order. Triangular and smaller faces are decorated by convention
// and carry no list.
struct DecoratedLamination {
  Lamination lam;
  std::vector<std::vector<Index>> face_decorations;
};

struct AlphaVector {
  std::vector<double> alphas;  // (1,2) except possibly the last, which may be 2

  void validate() const;
};

// Lamination of a conditioned tree together with its open-face boundaries.
DecoratedLamination decorate(const LukasiewiczPath& path);

// Insert laminations into faces through their boundary enumerations: chords
// of insert f map through face_decorations[f]; identical images are
// deduplicated; faces of the result inherit composed enumerations.
DecoratedLamination compose(const DecoratedLamination& base,
                            const std::map<std::size_t, DecoratedLamination>& inserts);
DecoratedLamination compose(const DecoratedLamination& base,
                            const std::map<std::size_t, Lamination>& inserts);

// Discrete iterated stable lamination: level 1 is the lamination of a
// conditioned stable(alpha_1) tree of size n; every further level fills each
// face of boundary size beta >= 4 with an independent lamination of a
// conditioned stable(alpha_q) tree of size beta.
Lamination sample_iterated(const AlphaVector& alphas, Index n, Rng& rng);
DecoratedLamination sample_iterated_decorated(const AlphaVector& alphas, Index n, Rng& rng);

// Conjectured Hausdorff dimension of the iterated lamination (reported as a
// reference value, never asserted against).
double dim_formula(const AlphaVector& alphas);

}  // namespace nclam
