#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "hammersley/checkpoint.hpp"

namespace hammersley {

class Pcg64;
class Permutation;

// The k-line cascade on [0,1]. An arrival on the top line bumps its strict
// successor (nearest particle to its right) down one line; a particle bumped
// off line k-1 leaves the system. Line j always holds the contents of row j
// of the row-insertion tableau of the arrival sequence, so after n steps the
// occupancy equals the longest k(k-1)...21-avoiding subsequence length of
// the arrivals' rank sequence. k = 2 is the classic Hammersley process.
class LineSystem {
 public:
  explicit LineSystem(int k);  // k >= 2

  int k() const { return k_; }

  // Inserts arrival u on the top line and runs the cascade.
  // Throws std::invalid_argument if u is outside [0, 1] or already present
  // on the line it lands on (a driver bug: arrivals must be distinct).
  void step(double u);

  std::int64_t particle_count() const;

  // Line idx of the k-1 lines, topmost first (idx in [0, k-2]).
  const std::set<double>& line(int idx) const { return lines_[idx]; }

 private:
  int k_;
  std::vector<std::set<double>> lines_;
};

// Runs one trajectory driven by uniform arrivals to max(checkpoints) steps,
// recording the particle count at each checkpoint. Checkpoints must be
// non-empty, strictly ascending, all >= 1.
std::vector<CheckpointCount> run_trace(int k,
                                       std::span<const std::int64_t> checkpoints,
                                       Pcg64& gen);

// Drives the cascade with sigma embedded as sigma_i / (n+1) and returns the
// final particle count. Equals greene_stat(sigma, k) for every sigma.
std::int64_t run_permutation(int k, const Permutation& sigma);

}  // namespace hammersley
