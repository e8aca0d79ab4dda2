#include "hammersley/multiline.hpp"

#include <stdexcept>

#include "hammersley/oracle.hpp"
#include "hammersley/rng.hpp"

namespace hammersley {

LineSystem::LineSystem(int k) : k_(k) {
  if (k < 2) throw std::invalid_argument("LineSystem: k must be >= 2");
  lines_.resize(static_cast<std::size_t>(k) - 1);
}

void LineSystem::step(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("LineSystem::step: arrival outside [0, 1]");
  }
  double v = u;
  for (auto& line : lines_) {
    const auto [it, inserted] = line.insert(v);
    if (!inserted) {
      throw std::invalid_argument(
          "LineSystem::step: duplicate position on a line (arrivals must be "
          "distinct)");
    }
    const auto succ = std::next(it);
    if (succ == line.end()) return;  // nothing to the right; cascade stops
    v = *succ;
    line.erase(succ);
  }
  // bumped off the bottom line: leaves the system
}

std::int64_t LineSystem::particle_count() const {
  std::int64_t total = 0;
  for (const auto& line : lines_) total += static_cast<std::int64_t>(line.size());
  return total;
}

namespace {

void validate_checkpoints(std::span<const std::int64_t> checkpoints) {
  if (checkpoints.empty()) {
    throw std::invalid_argument("run_trace: checkpoint list is empty");
  }
  std::int64_t prev = 0;
  for (const std::int64_t n : checkpoints) {
    if (n < 1 || n <= prev) {
      throw std::invalid_argument(
          "run_trace: checkpoints must be strictly ascending and >= 1");
    }
    prev = n;
  }
}

}  // namespace

std::vector<CheckpointCount> run_trace(int k,
                                       std::span<const std::int64_t> checkpoints,
                                       Pcg64& gen) {
  validate_checkpoints(checkpoints);
  LineSystem sys(k);
  std::vector<CheckpointCount> out;
  out.reserve(checkpoints.size());
  std::size_t next = 0;
  const std::int64_t n_max = checkpoints.back();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    sys.step(gen.uniform01());
    if (n == checkpoints[next]) {
      out.push_back({n, sys.particle_count()});
      ++next;
    }
  }
  return out;
}

std::int64_t run_permutation(int k, const Permutation& sigma) {
  LineSystem sys(k);
  const double denom = static_cast<double>(sigma.size()) + 1.0;
  for (const int v : sigma.values()) {
    sys.step(static_cast<double>(v) / denom);
  }
  return sys.particle_count();
}

}  // namespace hammersley
