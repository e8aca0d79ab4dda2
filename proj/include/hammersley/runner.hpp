#pragma once

#include "hammersley/results.hpp"

namespace hammersley {

// Runs config.samples independent replicas, replica r driven by rng stream
// config.stream_offset + r under config.seed. Replicas are grouped into
// fixed batches of 256; workers pull whole batches, accumulate privately,
// and the batch accumulators are merged in batch order at the end — so the
// result is identical for every worker count.
ResultsFile run_experiment(const ExperimentConfig& config, int workers);

}  // namespace hammersley
