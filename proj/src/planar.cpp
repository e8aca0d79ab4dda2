#include "hammersley/planar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hammersley/rng.hpp"

namespace hammersley {

bool in_region(const Region& r, Point p) {
  const auto [u, v] = r.anchor;
  switch (r.kind) {
    case RegionKind::kHalfPlaneAbove:
      return p.y > r.slope * (p.x - u) + v;
    case RegionKind::kOutsideOriginCircle:
      return p.x * p.x + p.y * p.y > u * u + v * v;
    case RegionKind::kDominanceRect:
      return p.x >= u && p.y >= v && !(p.x == u && p.y == v);
  }
  return false;
}

double dist_measure(Metric metric, Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  switch (metric) {
    case Metric::kEuclidean:
      return dx * dx + dy * dy;
    case Metric::kManhattan:
      return std::fabs(dx) + std::fabs(dy);
    case Metric::kChebyshev:
      return std::max(std::fabs(dx), std::fabs(dy));
  }
  return 0.0;
}

namespace {

// Shared comparator: smaller measure wins, ties go to smaller x then y.
inline bool better_candidate(double measure, Point p, double best_measure,
                             Point best) {
  if (measure != best_measure) return measure < best_measure;
  if (p.x != best.x) return p.x < best.x;
  return p.y < best.y;
}

}  // namespace

std::optional<Point> nearest_in_region_naive(std::span<const Point> particles,
                                             Point anchor, const Region& r,
                                             Metric metric) {
  std::optional<Point> best;
  double best_measure = 0.0;
  for (const Point p : particles) {
    if (!in_region(r, p)) continue;
    const double m = dist_measure(metric, anchor, p);
    if (!best || better_candidate(m, p, best_measure, *best)) {
      best = p;
      best_measure = m;
    }
  }
  return best;
}

PlanarState::PlanarState(bool use_grid) : use_grid_(use_grid) {
  if (use_grid_) cells_.resize(1);
}

int PlanarState::cell_of(double coord) const {
  const int c = static_cast<int>(coord * g_);
  return std::min(g_ - 1, std::max(0, c));
}

std::vector<std::int32_t>& PlanarState::bucket_of(Point p) {
  return cells_[static_cast<std::size_t>(cell_of(p.y)) * g_ + cell_of(p.x)];
}

void PlanarState::rebuild_grid() {
  g_ = std::max(1, static_cast<int>(std::ceil(std::sqrt(
                       static_cast<double>(points_.size())))));
  size_at_rebuild_ = points_.size();
  cells_.assign(static_cast<std::size_t>(g_) * g_, {});
  for (std::size_t i = 0; i < points_.size(); ++i) {
    bucket_of(points_[i]).push_back(static_cast<std::int32_t>(i));
  }
}

void PlanarState::maybe_rebuild() {
  const std::size_t n = points_.size();
  if (n > 4 * std::max<std::size_t>(1, size_at_rebuild_) ||
      4 * n < size_at_rebuild_) {
    rebuild_grid();
  }
}

void PlanarState::insert(Point p) {
  points_.push_back(p);
  if (!use_grid_) return;
  bucket_of(p).push_back(static_cast<std::int32_t>(points_.size() - 1));
  maybe_rebuild();
}

bool PlanarState::erase(Point p) {
  std::size_t idx = points_.size();
  if (use_grid_) {
    auto& bucket = bucket_of(p);
    auto it = std::find_if(bucket.begin(), bucket.end(), [&](std::int32_t i) {
      return points_[static_cast<std::size_t>(i)] == p;
    });
    if (it == bucket.end()) return false;
    idx = static_cast<std::size_t>(*it);
    bucket.erase(it);
  } else {
    const auto it = std::find(points_.begin(), points_.end(), p);
    if (it == points_.end()) return false;
    idx = static_cast<std::size_t>(it - points_.begin());
  }
  const std::size_t last = points_.size() - 1;
  if (idx != last) {
    if (use_grid_) {
      // the particle moving into slot idx keeps its bucket; fix its index
      auto& moved_bucket = bucket_of(points_[last]);
      const auto mit = std::find(moved_bucket.begin(), moved_bucket.end(),
                                 static_cast<std::int32_t>(last));
      *mit = static_cast<std::int32_t>(idx);
    }
    points_[idx] = points_[last];
  }
  points_.pop_back();
  if (use_grid_) maybe_rebuild();
  return true;
}

std::optional<Point> PlanarState::nearest_in_region(Point anchor,
                                                    const Region& r,
                                                    Metric metric) const {
  if (!use_grid_) return nearest_in_region_naive(points_, anchor, r, metric);
  return nearest_grid(anchor, r, metric);
}

std::optional<Point> PlanarState::nearest_grid(Point anchor, const Region& r,
                                               Metric metric) const {
  if (points_.empty()) return std::nullopt;
  const double h = 1.0 / g_;
  const int cx = cell_of(anchor.x);
  const int cy = cell_of(anchor.y);
  const int max_ring = std::max({cx, g_ - 1 - cx, cy, g_ - 1 - cy});

  std::optional<Point> best;
  double best_measure = 0.0;

  const auto consider_cell = [&](int bx, int by) {
    for (const std::int32_t i : cells_[static_cast<std::size_t>(by) * g_ + bx]) {
      const Point p = points_[static_cast<std::size_t>(i)];
      if (!in_region(r, p)) continue;
      const double m = dist_measure(metric, anchor, p);
      if (!best || better_candidate(m, p, best_measure, *best)) {
        best = p;
        best_measure = m;
      }
    }
  };

  for (int ring = 0; ring <= max_ring; ++ring) {
    if (best && ring > 0) {
      // Any particle at Chebyshev cell distance >= ring lies outside the
      // block of cells within ring-1, so its distance to the anchor is at
      // least the smallest gap from the anchor to that block's boundary.
      // Equal-measure candidates farther out can still win the tie-break,
      // hence the strict comparison.
      const double gap =
          std::max(0.0, std::min({anchor.x - (cx - ring + 1) * h,
                                  (cx + ring) * h - anchor.x,
                                  anchor.y - (cy - ring + 1) * h,
                                  (cy + ring) * h - anchor.y}));
      const double bound = metric == Metric::kEuclidean ? gap * gap : gap;
      if (bound > best_measure) break;
    }
    const int x0 = std::max(0, cx - ring);
    const int x1 = std::min(g_ - 1, cx + ring);
    if (ring == 0) {
      consider_cell(cx, cy);
      continue;
    }
    if (cy - ring >= 0) {
      for (int bx = x0; bx <= x1; ++bx) consider_cell(bx, cy - ring);
    }
    if (cy + ring <= g_ - 1) {
      for (int bx = x0; bx <= x1; ++bx) consider_cell(bx, cy + ring);
    }
    const int y0 = std::max(0, cy - ring + 1);
    const int y1 = std::min(g_ - 1, cy + ring - 1);
    for (int by = y0; by <= y1; ++by) {
      if (cx - ring >= 0) consider_cell(cx - ring, by);
      if (cx + ring <= g_ - 1) consider_cell(cx + ring, by);
    }
  }
  return best;
}

bool PlanarState::grid_consistent() const {
  if (!use_grid_) return true;
  if (cells_.size() != static_cast<std::size_t>(g_) * g_) return false;
  std::vector<bool> seen(points_.size(), false);
  for (int by = 0; by < g_; ++by) {
    for (int bx = 0; bx < g_; ++bx) {
      for (const std::int32_t i : cells_[static_cast<std::size_t>(by) * g_ + bx]) {
        if (i < 0 || static_cast<std::size_t>(i) >= points_.size()) return false;
        if (seen[static_cast<std::size_t>(i)]) return false;
        seen[static_cast<std::size_t>(i)] = true;
        const Point p = points_[static_cast<std::size_t>(i)];
        if (cell_of(p.x) != bx || cell_of(p.y) != by) return false;
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

void plane_step(const PlanarModel& model, PlanarState& state, Point p) {
  if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
    throw std::invalid_argument("plane_step: arrival outside the unit square");
  }
  const Region r = model.region_at(p);
  if (const auto victim = state.nearest_in_region(p, r, model.metric)) {
    state.erase(*victim);
  }
  state.insert(p);
}

std::vector<CheckpointCount> run_plane_trace(
    const PlanarModel& model, std::span<const std::int64_t> checkpoints,
    Pcg64& gen, bool use_grid) {
  if (checkpoints.empty()) {
    throw std::invalid_argument("run_plane_trace: checkpoint list is empty");
  }
  std::int64_t prev = 0;
  for (const std::int64_t n : checkpoints) {
    if (n < 1 || n <= prev) {
      throw std::invalid_argument(
          "run_plane_trace: checkpoints must be strictly ascending and >= 1");
    }
    prev = n;
  }
  PlanarState state(use_grid);
  std::vector<CheckpointCount> out;
  out.reserve(checkpoints.size());
  std::size_t next = 0;
  const std::int64_t n_max = checkpoints.back();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto [x, y] = uniform_square(gen);
    plane_step(model, state, Point{x, y});
    if (n == checkpoints[next]) {
      out.push_back({n, static_cast<std::int64_t>(state.size())});
      ++next;
    }
  }
  return out;
}

}  // namespace hammersley
