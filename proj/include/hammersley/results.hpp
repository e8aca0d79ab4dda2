#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hammersley/moments.hpp"

namespace hammersley {

// Unreadable, unparseable, or internally inconsistent results file.
class ResultsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Files whose configurations (or stream ranges) cannot be merged.
class IncompatibleResultsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything needed to rerun an experiment. The process fields double as the
// merge-compatibility signature; samples/seed/stream_offset describe one
// contiguous block of replicas (replica r uses rng stream stream_offset + r).
struct ExperimentConfig {
  std::string process = "multiline";  // multiline | plane-i | plane-ii | plane-iii
  int k = 3;                          // multiline only
  double slope = 1.0;                 // plane-i only
  std::string metric = "euclidean";   // euclidean | manhattan | chebyshev
  bool grid = true;                   // planar index on, or force the naive scan
  std::int64_t n_min = 1;
  std::int64_t n_max = 1;
  int checkpoint_count = 1;
  std::int64_t samples = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream_offset = 0;

  void validate() const;  // throws std::invalid_argument
  std::vector<std::int64_t> schedule() const;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// True when the two configs describe the same process and schedule; sampling
// provenance (samples, seed, stream_offset) is allowed to differ.
bool compatible(const ExperimentConfig& a, const ExperimentConfig& b);

// Provenance of one block of replicas: streams
// [stream_offset, stream_offset + samples) drawn under seed.
struct StreamRun {
  std::uint64_t seed = 0;
  std::uint64_t stream_offset = 0;
  std::int64_t samples = 0;
  friend bool operator==(const StreamRun&, const StreamRun&) = default;
};

struct CheckpointRow {
  std::int64_t n = 0;
  MomentAccumulator acc;
  friend bool operator==(const CheckpointRow&, const CheckpointRow&) = default;
};

// On-disk layout (plain text):
//   # hammersley results v1
//   # config {json}
//   # run workers=N wall_seconds=X     <- volatile metadata, excluded from
//                                         determinism comparisons
//   # columns n count mean M2 M3 M4
//   <one row per checkpoint, shortest round-trip decimal floats>
struct ResultsFile {
  ExperimentConfig config;
  std::vector<StreamRun> runs;
  std::vector<CheckpointRow> rows;
  int workers = 1;
  double wall_seconds = 0.0;

  std::int64_t total_samples() const;

  // Structural invariants: runs present and internally disjoint, row n's
  // equal to the config schedule, every accumulator holding total_samples()
  // observations. Throws ResultsError on violation.
  void check() const;
};

void write_results(const ResultsFile& file, const std::string& path);
ResultsFile read_results(const std::string& path);

// Accumulator union of compatible files. Requires at least one input, equal
// config signatures, and pairwise-disjoint stream ranges among runs that
// share a seed. Throws IncompatibleResultsError otherwise.
ResultsFile merge_results(std::span<const ResultsFile> files);

// File content with the volatile "# run" line removed: what determinism
// guarantees to be byte-identical across worker counts.
std::string stable_bytes(const std::string& path);

}  // namespace hammersley
