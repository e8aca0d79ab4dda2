#include "hammersley/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hammersley/moments.hpp"
#include "hammersley/multiline.hpp"
#include "hammersley/oracle.hpp"
#include "hammersley/planar.hpp"
#include "hammersley/rng.hpp"

namespace hammersley {

namespace {

std::string join_values(std::span<const int> values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ' ';
    os << values[i];
  }
  return os.str();
}

std::string point_str(std::optional<Point> p) {
  if (!p) return "none";
  std::ostringstream os;
  os << '(' << p->x << ", " << p->y << ')';
  return os.str();
}

bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// One grid-vs-naive comparison on a fixed particle set.
bool agree(const PlanarState& grid, Point anchor, const Region& region,
           Metric metric, std::string* detail) {
  const auto fast = grid.nearest_in_region(anchor, region, metric);
  const auto slow =
      nearest_in_region_naive(grid.particles(), anchor, region, metric);
  if (fast == slow) return true;
  std::ostringstream os;
  os << "anchor " << point_str(anchor) << ": grid " << point_str(fast)
     << " vs naive " << point_str(slow);
  *detail = os.str();
  return false;
}

}  // namespace

bool all_passed(std::span<const CheckResult> results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

std::vector<CheckResult> verify_equivalence(int n_max, std::span<const int> ks) {
  if (n_max < 1 || n_max > 7) {
    throw std::invalid_argument("verify: n_max must be in [1, 7]");
  }
  for (const int k : ks) {
    if (k < 2) throw std::invalid_argument("verify: every k must be >= 2");
  }

  std::vector<CheckResult> out;
  for (const int k : ks) {
    CheckResult result;
    {
      std::ostringstream os;
      os << "cascade == greene == brute force, k=" << k << ", n<=" << n_max;
      result.name = os.str();
    }
    result.passed = true;
    const Permutation pattern = Permutation::decreasing(k);
    std::int64_t checked = 0;
    for (int n = 1; n <= n_max && result.passed; ++n) {
      std::vector<int> values(static_cast<std::size_t>(n));
      std::iota(values.begin(), values.end(), 1);
      do {
        const Permutation sigma(values);
        const auto cascade = run_permutation(k, sigma);
        const auto greene = greene_stat(sigma, k);
        const auto brute = longest_avoiding_bruteforce(sigma, pattern);
        if (cascade != greene || greene != brute) {
          std::ostringstream os;
          os << "sigma=[" << join_values(values) << "]: cascade=" << cascade
             << " greene=" << greene << " brute=" << brute;
          result.passed = false;
          result.detail = os.str();
          break;
        }
        ++checked;
      } while (std::next_permutation(values.begin(), values.end()));
    }
    if (result.passed) {
      std::ostringstream os;
      os << checked << " permutations";
      result.detail = os.str();
    }
    out.push_back(std::move(result));
  }
  return out;
}

std::string exact_distribution_text(int n, int k) {
  const ExactDistribution dist = exact_distribution(n, k);
  std::ostringstream os;
  bool first = true;
  for (const auto& [value, count] : dist.counts) {
    const auto g = std::gcd(count, dist.total);
    if (!first) os << ", ";
    os << value << ": " << count / g << '/' << dist.total / g;
    first = false;
  }
  return os.str();
}

std::vector<CheckResult> verify_grid_naive(int trials, std::uint64_t seed) {
  std::vector<CheckResult> out;

  // Randomized particle sets; odd trials snap coordinates to an 8x8 lattice
  // so equal-distance ties are common.
  {
    CheckResult result;
    result.name = "grid == naive, randomized";
    result.passed = true;
    Pcg64 gen(seed, 0);
    constexpr RegionKind kKinds[] = {RegionKind::kHalfPlaneAbove,
                                     RegionKind::kOutsideOriginCircle,
                                     RegionKind::kDominanceRect};
    constexpr Metric kMetrics[] = {Metric::kEuclidean, Metric::kManhattan,
                                   Metric::kChebyshev};
    constexpr double kSlopes[] = {1.0, 0.5, 2.0, -0.75};
    for (int t = 0; t < trials && result.passed; ++t) {
      const bool snap = (t % 2) != 0;
      auto draw = [&] {
        if (snap) return static_cast<double>(gen.next_below(9)) / 8.0;
        return gen.uniform01();
      };
      PlanarState state(true);
      std::set<std::pair<double, double>> seen;
      const auto target = 1 + gen.next_below(60);
      while (seen.size() < target) {
        const Point p{draw(), draw()};
        if (seen.emplace(p.x, p.y).second) state.insert(p);
      }
      const Point anchor{draw(), draw()};
      PlanarModel model;
      model.kind = kKinds[t % 3];
      model.slope = kSlopes[t % 4];
      model.metric = kMetrics[(t / 3) % 3];
      if (!agree(state, anchor, model.region_at(anchor), model.metric,
                 &result.detail) ||
          !state.grid_consistent()) {
        result.passed = false;
        if (result.detail.empty()) result.detail = "grid audit failed";
      }
    }
    if (result.passed) {
      std::ostringstream os;
      os << trials << " trials";
      result.detail = os.str();
    }
    out.push_back(std::move(result));
  }

  // Full process traces: run the same snapped arrivals through a gridded and
  // a naive state; particle sets must match after every step.
  {
    CheckResult result;
    result.name = "grid == naive, stepped traces";
    result.passed = true;
    Pcg64 gen(seed, 1);
    constexpr RegionKind kKinds[] = {RegionKind::kHalfPlaneAbove,
                                     RegionKind::kOutsideOriginCircle,
                                     RegionKind::kDominanceRect};
    std::int64_t steps_run = 0;
    for (int trial = 0; trial < 9 && result.passed; ++trial) {
      PlanarModel model;
      model.kind = kKinds[trial % 3];
      model.slope = trial % 2 ? 0.5 : 1.0;
      PlanarState with_grid(true);
      PlanarState without(false);
      std::set<std::pair<double, double>> live;
      int steps = 0;
      while (steps < 300) {
        const Point p{static_cast<double>(gen.next_below(65)) / 64.0,
                      static_cast<double>(gen.next_below(65)) / 64.0};
        if (live.contains({p.x, p.y})) continue;  // arrivals must be distinct
        plane_step(model, with_grid, p);
        plane_step(model, without, p);
        live.clear();
        for (const Point q : without.particles()) live.emplace(q.x, q.y);
        std::set<std::pair<double, double>> gridded;
        for (const Point q : with_grid.particles()) gridded.emplace(q.x, q.y);
        if (gridded != live || !with_grid.grid_consistent()) {
          std::ostringstream os;
          os << "divergence at step " << steps << " of trial " << trial;
          result.passed = false;
          result.detail = os.str();
          break;
        }
        ++steps;
        ++steps_run;
      }
    }
    if (result.passed) {
      std::ostringstream os;
      os << steps_run << " steps across 9 traces";
      result.detail = os.str();
    }
    out.push_back(std::move(result));
  }

  // Hand-built equal-distance ties with a known victim.
  {
    CheckResult result;
    result.name = "grid == naive, crafted ties";
    result.passed = true;

    struct Case {
      std::vector<Point> particles;
      Point anchor;
      RegionKind kind;
      Metric metric;
      Point expected;
    };
    const std::vector<Case> cases = {
        // Equal squared distance 0.3125; smaller x wins.
        {{{0.25, 0.5}, {0.5, 0.25}},
         {0.0, 0.0},
         RegionKind::kDominanceRect,
         Metric::kEuclidean,
         {0.25, 0.5}},
        // Equal distance, equal x; smaller y wins.
        {{{0.8, 0.8}, {0.8, 0.2}},
         {0.5, 0.5},
         RegionKind::kOutsideOriginCircle,
         Metric::kEuclidean,
         {0.8, 0.2}},
        // Three-way Chebyshev tie at 0.5.
        {{{0.5, 0.25}, {0.25, 0.5}, {0.5, 0.5}},
         {0.0, 0.0},
         RegionKind::kDominanceRect,
         Metric::kChebyshev,
         {0.25, 0.5}},
        // Three-way Manhattan tie at 0.5.
        {{{0.1, 0.4}, {0.3, 0.2}, {0.25, 0.25}},
         {0.0, 0.0},
         RegionKind::kDominanceRect,
         Metric::kManhattan,
         {0.1, 0.4}},
    };
    for (std::size_t i = 0; i < cases.size() && result.passed; ++i) {
      const Case& c = cases[i];
      PlanarState state(true);
      for (const Point p : c.particles) state.insert(p);
      const Region region{c.kind, c.anchor, 1.0};
      const auto fast = state.nearest_in_region(c.anchor, region, c.metric);
      const auto slow =
          nearest_in_region_naive(state.particles(), c.anchor, region, c.metric);
      if (fast != slow || !fast || !(*fast == c.expected)) {
        std::ostringstream os;
        os << "case " << i << ": grid " << point_str(fast) << ", naive "
           << point_str(slow) << ", expected " << point_str(c.expected);
        result.passed = false;
        result.detail = os.str();
      }
    }
    if (result.passed) {
      std::ostringstream os;
      os << cases.size() << " cases";
      result.detail = os.str();
    }
    out.push_back(std::move(result));
  }

  return out;
}

std::vector<CheckResult> verify_moment_merge(std::uint64_t seed) {
  std::vector<CheckResult> out;

  // Random partitions merged in random order must match sequential pushing.
  {
    CheckResult result;
    result.name = "moment merge == sequential push";
    result.passed = true;
    Pcg64 gen(seed, 100);
    for (int round = 0; round < 40 && result.passed; ++round) {
      const auto n = 3 + gen.next_below(5000);
      std::vector<double> values;
      values.reserve(n);
      MomentAccumulator sequential;
      for (std::uint64_t i = 0; i < n; ++i) {
        double x = gen.uniform01();
        switch (round % 4) {
          case 1: x = -std::log(1.0 - x); break;           // exponential
          case 2: x = 1000.0 + 5.0 * x; break;             // shifted/scaled
          case 3: x = x * x * x; break;                    // skewed
          default: break;
        }
        values.push_back(x);
        sequential.push(x);
      }

      // Split into chunks at random cut points, then fold in random order.
      std::vector<MomentAccumulator> chunks(1 + gen.next_below(32));
      for (const double x : values) {
        chunks[gen.next_below(chunks.size())].push(x);
      }
      while (chunks.size() > 1) {
        const auto i = gen.next_below(chunks.size());
        auto j = gen.next_below(chunks.size() - 1);
        if (j >= i) ++j;
        chunks[std::min(i, j)] =
            merge(chunks[std::min(i, j)], chunks[std::max(i, j)]);
        chunks.erase(chunks.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
      }
      const MomentAccumulator& merged = chunks.front();

      const bool ok = merged.count() == sequential.count() &&
                      close_rel(merged.mean(), sequential.mean(), 1e-9) &&
                      close_rel(merged.sd(), sequential.sd(), 1e-9) &&
                      close_rel(merged.skewness(), sequential.skewness(), 1e-9) &&
                      close_rel(merged.kurtosis(), sequential.kurtosis(), 1e-9);
      if (!ok) {
        std::ostringstream os;
        os << "round " << round << ": merged (" << merged.mean() << ", "
           << merged.sd() << ", " << merged.skewness() << ", "
           << merged.kurtosis() << ") vs sequential (" << sequential.mean()
           << ", " << sequential.sd() << ", " << sequential.skewness() << ", "
           << sequential.kurtosis() << ")";
        result.passed = false;
        result.detail = os.str();
      }
    }
    if (result.passed) result.detail = "40 partition rounds";
    out.push_back(std::move(result));
  }

  // A large Gaussian sample must land close to kurtosis 3.
  {
    CheckResult result;
    result.name = "gaussian kurtosis within 3.0 +/- 0.05";
    Pcg64 gen(seed, 999);
    MomentAccumulator acc;
    for (int i = 0; i < 500000; ++i) {
      const double u1 = 1.0 - gen.uniform01();
      const double u2 = gen.uniform01();
      const double r = std::sqrt(-2.0 * std::log(u1));
      acc.push(r * std::cos(2.0 * std::numbers::pi * u2));
      acc.push(r * std::sin(2.0 * std::numbers::pi * u2));
    }
    const double kurt = acc.kurtosis();
    result.passed = std::fabs(kurt - 3.0) <= 0.05;
    std::ostringstream os;
    os << "kurtosis " << kurt << " over " << acc.count() << " draws";
    result.detail = os.str();
    out.push_back(std::move(result));
  }

  return out;
}

}  // namespace hammersley
