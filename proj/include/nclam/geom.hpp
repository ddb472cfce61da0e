#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "nclam/tree.hpp"

namespace nclam {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Circle position p of m -> point exp(-2*i*pi*p/m) (clockwise convention).
inline Vec2 circle_point(Index p, Index m) {
  const double angle = -2.0 * M_PI * static_cast<double>(p) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

inline double dist2(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Visit every cell of the square grid (origin + cell * index) that the
// segment [a,b] passes through.
void walk_segment_cells(Vec2 a, Vec2 b, double origin, double cell,
                        const std::function<void(std::int64_t, std::int64_t)>& visit);

// Uniform-grid index over segments in [-1,1]^2 for nearest-segment queries.
// Resolution follows the segment count; answers stay exact either way.
class SegmentGrid {
 public:
  explicit SegmentGrid(std::vector<std::pair<Vec2, Vec2>> segments);

  // Exact distance from p to the nearest segment; +inf when empty.
  double distance(Vec2 p) const;
  bool empty() const { return segments_.empty(); }

 private:
  std::vector<std::pair<Vec2, Vec2>> segments_;
  double cell_ = 0.0;
  double origin_ = -1.1;
  std::int64_t dim_ = 0;
  std::vector<std::vector<std::int32_t>> buckets_;

  std::int64_t clamp_idx(std::int64_t i) const { return i < 0 ? 0 : (i >= dim_ ? dim_ - 1 : i); }
};

}  // namespace nclam
