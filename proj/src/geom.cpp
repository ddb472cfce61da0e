#include "nclam/geom.hpp"

#include <algorithm>
#include <limits>

namespace nclam {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double len2 = abx * abx + aby * aby;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  const Vec2 q{a.x + t * abx, a.y + t * aby};
  return std::sqrt(dist2(p, q));
}

void walk_segment_cells(Vec2 a, Vec2 b, double origin, double cell,
                        const std::function<void(std::int64_t, std::int64_t)>& visit) {
  // Amanatides & Woo traversal.
  const auto cell_of = [&](double v) { return static_cast<std::int64_t>(std::floor((v - origin) / cell)); };
  std::int64_t ix = cell_of(a.x), iy = cell_of(a.y);
  const std::int64_t ex = cell_of(b.x), ey = cell_of(b.y);
  const double dx = b.x - a.x, dy = b.y - a.y;
  const int sx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int sy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);

  const auto boundary = [&](std::int64_t i, int s) { return origin + cell * static_cast<double>(i + (s > 0 ? 1 : 0)); };
  double t_max_x = sx != 0 ? (boundary(ix, sx) - a.x) / dx : std::numeric_limits<double>::infinity();
  double t_max_y = sy != 0 ? (boundary(iy, sy) - a.y) / dy : std::numeric_limits<double>::infinity();
  const double t_delta_x = sx != 0 ? cell / std::abs(dx) : std::numeric_limits<double>::infinity();
  const double t_delta_y = sy != 0 ? cell / std::abs(dy) : std::numeric_limits<double>::infinity();

  visit(ix, iy);
  // guard against pathological float cases with a generous step cap
  std::int64_t guard = 4 + 2 * (std::abs(ex - ix) + std::abs(ey - iy));
  while ((ix != ex || iy != ey) && guard-- > 0) {
    if (t_max_x < t_max_y) {
      ix += sx;
      t_max_x += t_delta_x;
    } else {
      iy += sy;
      t_max_y += t_delta_y;
    }
    visit(ix, iy);
  }
}

SegmentGrid::SegmentGrid(std::vector<std::pair<Vec2, Vec2>> segments) : segments_(std::move(segments)) {
  dim_ = std::clamp<std::int64_t>(2 * static_cast<std::int64_t>(std::sqrt(static_cast<double>(segments_.size()))) + 8,
                                  8, 1024);
  cell_ = 2.2 / static_cast<double>(dim_);
  buckets_.assign(static_cast<std::size_t>(dim_ * dim_), {});
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    walk_segment_cells(segments_[s].first, segments_[s].second, origin_, cell_,
                       [&](std::int64_t ix, std::int64_t iy) {
                         ix = clamp_idx(ix);
                         iy = clamp_idx(iy);
                         auto& bucket = buckets_[static_cast<std::size_t>(iy * dim_ + ix)];
                         if (bucket.empty() || bucket.back() != static_cast<std::int32_t>(s))
                           bucket.push_back(static_cast<std::int32_t>(s));
                       });
  }
}

double SegmentGrid::distance(Vec2 p) const {
  if (segments_.empty()) return std::numeric_limits<double>::infinity();
  if (segments_.size() <= 32) {  // brute force beats the grid for tiny sets
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : segments_) best = std::min(best, point_segment_distance(p, a, b));
    return best;
  }
  const std::int64_t cx = clamp_idx(static_cast<std::int64_t>(std::floor((p.x - origin_) / cell_)));
  const std::int64_t cy = clamp_idx(static_cast<std::int64_t>(std::floor((p.y - origin_) / cell_)));
  double best = std::numeric_limits<double>::infinity();
  const auto probe = [&](std::int64_t ix, std::int64_t iy) {
    if (ix < 0 || ix >= dim_ || iy < 0 || iy >= dim_) return;
    for (std::int32_t s : buckets_[static_cast<std::size_t>(iy * dim_ + ix)]) {
      best = std::min(best, point_segment_distance(p, segments_[static_cast<std::size_t>(s)].first,
                                                   segments_[static_cast<std::size_t>(s)].second));
    }
  };
  for (std::int64_t r = 0; r < 2 * dim_; ++r) {
    if (best < static_cast<double>(r - 1) * cell_) break;  // farther rings cannot win
    if (r == 0) {
      probe(cx, cy);
      continue;
    }
    for (std::int64_t ix = cx - r; ix <= cx + r; ++ix) {  // top and bottom rows
      probe(ix, cy - r);
      probe(ix, cy + r);
    }
    for (std::int64_t iy = cy - r + 1; iy <= cy + r - 1; ++iy) {  // side columns
      probe(cx - r, iy);
      probe(cx + r, iy);
    }
  }
  return best;
}

}  // namespace nclam
