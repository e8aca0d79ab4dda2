#include "hammersley/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hammersley/multiline.hpp"
#include "hammersley/planar.hpp"
#include "hammersley/rng.hpp"

namespace hammersley {

namespace {

constexpr std::int64_t kBatchSize = 256;

Metric metric_from(const std::string& name) {
  if (name == "manhattan") return Metric::kManhattan;
  if (name == "chebyshev") return Metric::kChebyshev;
  return Metric::kEuclidean;
}

PlanarModel model_from(const ExperimentConfig& cfg) {
  PlanarModel m;
  if (cfg.process == "plane-i") {
    m.kind = RegionKind::kHalfPlaneAbove;
    m.slope = cfg.slope;
  } else if (cfg.process == "plane-ii") {
    m.kind = RegionKind::kOutsideOriginCircle;
  } else {
    m.kind = RegionKind::kDominanceRect;
  }
  m.metric = metric_from(cfg.metric);
  return m;
}

}  // namespace

ResultsFile run_experiment(const ExperimentConfig& config, int workers) {
  config.validate();
  if (workers < 1) {
    throw std::invalid_argument("run: workers must be >= 1");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto sched = config.schedule();
  const auto n_checkpoints = sched.size();
  const auto n_batches = (config.samples + kBatchSize - 1) / kBatchSize;
  std::vector<std::vector<MomentAccumulator>> slots(
      static_cast<std::size_t>(n_batches),
      std::vector<MomentAccumulator>(n_checkpoints));

  const bool is_multiline = config.process == "multiline";
  const PlanarModel model = model_from(config);

  std::atomic<std::int64_t> next_batch{0};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto work = [&] {
    try {
      for (;;) {
        const auto b = next_batch.fetch_add(1, std::memory_order_relaxed);
        if (b >= n_batches) return;
        auto& accs = slots[static_cast<std::size_t>(b)];
        const auto lo = b * kBatchSize;
        const auto hi = std::min(config.samples, lo + kBatchSize);
        for (auto r = lo; r < hi; ++r) {
          Pcg64 gen(config.seed,
                    config.stream_offset + static_cast<std::uint64_t>(r));
          const auto trace = is_multiline
                                 ? run_trace(config.k, sched, gen)
                                 : run_plane_trace(model, sched, gen, config.grid);
          for (std::size_t c = 0; c < n_checkpoints; ++c) {
            accs[c].push(static_cast<double>(trace[c].count));
          }
        }
      }
    } catch (...) {
      const std::scoped_lock lock(error_mu);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ResultsFile out;
  out.config = config;
  out.runs = {{config.seed, config.stream_offset, config.samples}};
  out.rows.resize(n_checkpoints);
  for (std::size_t c = 0; c < n_checkpoints; ++c) out.rows[c].n = sched[c];
  for (const auto& batch : slots) {
    for (std::size_t c = 0; c < n_checkpoints; ++c) {
      out.rows[c].acc = merge(out.rows[c].acc, batch[c]);
    }
  }
  out.workers = workers;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.check();
  return out;
}

}  // namespace hammersley
