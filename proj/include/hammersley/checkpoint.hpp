#pragma once

#include <cstdint>

namespace hammersley {

// Particle count observed after n steps of one trajectory.
struct CheckpointCount {
  std::int64_t n = 0;
  std::int64_t count = 0;
  friend bool operator==(const CheckpointCount&, const CheckpointCount&) = default;
};

}  // namespace hammersley
