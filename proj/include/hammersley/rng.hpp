#pragma once

#include <bit>
#include <cstdint>
#include <utility>

#ifndef __SIZEOF_INT128__
#error "hammersley requires a compiler with __int128 support"
#endif

namespace hammersley {

// Identifies one reproducible random stream. Replica r of an experiment with
// master seed s always draws from (seed = s, stream_id = r), so results are
// independent of how replicas are scheduled across threads.
struct StreamSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// pcg64 (PCG XSL RR 128/64): a 128-bit linear congruential generator with
// xorshift-low/random-rotate output. The stream id selects the (odd) LCG
// increment, giving 2^63 distinct full-period sequences per seed.
//
// Constants and seeding follow the PCG reference implementation:
//   state' = state * 0x2360ed051fc65da44385df649fccf645 + inc
//   inc    = (stream_id << 1) | 1
//   seed:    state = 0; step; state += seed; step
//   output:  rotr64((state >> 64) ^ state, state >> 122)
class Pcg64 {
 public:
  Pcg64() : Pcg64(StreamSpec{}) {}

  explicit Pcg64(StreamSpec spec)
      : state_(0), inc_((u128{spec.stream_id} << 1) | 1u) {
    state_ = state_ * kMultiplier + inc_;
    state_ += spec.seed;
    state_ = state_ * kMultiplier + inc_;
  }

  Pcg64(std::uint64_t seed, std::uint64_t stream_id)
      : Pcg64(StreamSpec{seed, stream_id}) {}

  std::uint64_t next_u64() {
    state_ = state_ * kMultiplier + inc_;
    const auto xored = static_cast<std::uint64_t>(state_ >> 64) ^
                       static_cast<std::uint64_t>(state_);
    const auto rot = static_cast<int>(state_ >> 122);
    return std::rotr(xored, rot);
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound), bound >= 1 (Lemire multiply-reject).
  std::uint64_t next_below(std::uint64_t bound) {
    u128 m = u128{next_u64()} * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        m = u128{next_u64()} * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  friend bool operator==(const Pcg64&, const Pcg64&) = default;

 private:
  using u128 = unsigned __int128;
  static constexpr u128 kMultiplier =
      (u128{0x2360ed051fc65da4ULL} << 64) | 0x4385df649fccf645ULL;

  u128 state_;
  u128 inc_;
};

// One uniform point in the unit square; x is drawn before y.
inline std::pair<double, double> uniform_square(Pcg64& gen) {
  const double x = gen.uniform01();
  const double y = gen.uniform01();
  return {x, y};
}

}  // namespace hammersley
