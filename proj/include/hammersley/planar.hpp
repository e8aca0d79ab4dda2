#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hammersley/checkpoint.hpp"

namespace hammersley {

class Pcg64;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(Point, Point) = default;
};

enum class Metric { kEuclidean, kManhattan, kChebyshev };

enum class RegionKind {
  kHalfPlaneAbove,       // y > slope * (x - u) + v
  kOutsideOriginCircle,  // x^2 + y^2 > u^2 + v^2
  kDominanceRect,        // x >= u and y >= v, the anchor itself excluded
};

// Deletion region anchored at an arrival point (u, v). All memberships are
// restricted to the unit square by construction of the particle set.
struct Region {
  RegionKind kind = RegionKind::kDominanceRect;
  Point anchor;
  double slope = 0.0;  // half-plane variant only
};

bool in_region(const Region& r, Point p);

// Distance surrogate used for every closest-particle comparison: squared
// distance for Euclidean, the exact distance for L1/Linf. Strictly monotone
// in the true distance, so minima and ties are preserved.
double dist_measure(Metric metric, Point a, Point b);

// Closest particle to anchor among those inside r; ties (equal measure)
// break toward smaller x, then smaller y. Linear scan; this is the reference
// the grid path must reproduce bit for bit.
std::optional<Point> nearest_in_region_naive(std::span<const Point> particles,
                                             Point anchor, const Region& r,
                                             Metric metric = Metric::kEuclidean);

// Process variant: which region shape an arrival anchors.
struct PlanarModel {
  RegionKind kind = RegionKind::kDominanceRect;
  double slope = 1.0;  // half-plane variant only
  Metric metric = Metric::kEuclidean;

  Region region_at(Point anchor) const { return Region{kind, anchor, slope}; }
};

// Live particle set in the unit square, optionally backed by a uniform grid
// index (g x g buckets of particle indices, g ~ sqrt(count), rebuilt when the
// count quadruples or quarters).
class PlanarState {
 public:
  explicit PlanarState(bool use_grid = true);

  bool grid_enabled() const { return use_grid_; }
  std::size_t size() const { return points_.size(); }
  std::span<const Point> particles() const { return points_; }

  // Precondition: p is distinct from every live particle.
  void insert(Point p);

  // Removes the particle exactly equal to p; returns false if absent.
  bool erase(Point p);

  // Grid-accelerated when enabled, otherwise the naive scan. Identical
  // result to nearest_in_region_naive on the same particle set either way.
  std::optional<Point> nearest_in_region(Point anchor, const Region& r,
                                         Metric metric = Metric::kEuclidean) const;

  // Audit: the grid holds exactly the live particle indices, each in the
  // bucket its coordinates select. Always true when the grid is disabled.
  bool grid_consistent() const;

  int grid_cells_per_side() const { return g_; }

 private:
  void rebuild_grid();
  void maybe_rebuild();
  int cell_of(double coord) const;
  std::vector<std::int32_t>& bucket_of(Point p);
  std::optional<Point> nearest_grid(Point anchor, const Region& r,
                                    Metric metric) const;

  std::vector<Point> points_;
  bool use_grid_;
  int g_ = 1;
  std::size_t size_at_rebuild_ = 0;
  std::vector<std::vector<std::int32_t>> cells_;  // row-major, g_ * g_
};

// One process step: the arrival p deletes the closest particle in its region
// (if any), then joins the system. Net count change is 0 or +1.
void plane_step(const PlanarModel& model, PlanarState& state, Point p);

// As run_trace, with uniform arrivals in the unit square.
std::vector<CheckpointCount> run_plane_trace(
    const PlanarModel& model, std::span<const std::int64_t> checkpoints,
    Pcg64& gen, bool use_grid = true);

}  // namespace hammersley
