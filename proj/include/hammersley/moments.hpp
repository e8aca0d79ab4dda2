#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hammersley {

// Requested summary statistic is not defined for the accumulated data
// (too few observations, or zero variance for skewness/kurtosis).
class UndefinedMomentError : public std::domain_error {
  using std::domain_error::domain_error;
};

struct MomentSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // non-excess: Gaussian data sits near 3
  double se_mean = 0.0;
};

// One-pass central-moment accumulator: count, running mean, and sums of
// squared/cubed/fourth-power deviations (M2, M3, M4). Mergeable across
// partitions, so replica batches can be combined after the fact.
class MomentAccumulator {
 public:
  void push(double x);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double m2() const { return m2_; }
  double m3() const { return m3_; }
  double m4() const { return m4_; }

  double sd() const;        // sample sd (count-1 divisor); count >= 2
  double se_mean() const;   // sd / sqrt(count); count >= 2
  double skewness() const;  // count >= 3 and M2 > 0
  double kurtosis() const;  // count >= 3 and M2 > 0
  MomentSummary summary() const;

  static MomentAccumulator from_raw(std::uint64_t count, double mean,
                                    double m2, double m3, double m4);

  friend bool operator==(const MomentAccumulator&,
                         const MomentAccumulator&) = default;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

// Equivalent to pushing all of b's observations into a.
MomentAccumulator merge(const MomentAccumulator& a, const MomentAccumulator& b);

// `count` values whose logarithms are equally spaced between log(n_min) and
// log(n_max), rounded to nearest integer, deduplicated; the first value is
// n_min and the last is n_max. count == 1 requires n_min == n_max.
std::vector<std::int64_t> checkpoint_schedule(std::int64_t n_min,
                                              std::int64_t n_max, int count);

}  // namespace hammersley
