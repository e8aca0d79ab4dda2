#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hammersley {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // cases checked, or the first counterexample
};

bool all_passed(std::span<const CheckResult> results);

// Exhaustive sweep of S_n for every n <= n_max (guard: n_max <= 7) and each
// k: the cascade count, the Greene row sum, and the brute-force longest
// k...21-avoiding subsequence length must agree exactly. One result per k.
std::vector<CheckResult> verify_equivalence(int n_max, std::span<const int> ks);

// Distribution of the count over all of S_n as exact rationals, e.g.
// "2: 1/6, 3: 5/6" for n = k = 3.
std::string exact_distribution_text(int n, int k);

// Randomized grid-vs-naive agreement over all three region kinds and all
// three metrics, plus crafted equal-distance tie cases; exact agreement
// including the victim chosen under ties.
std::vector<CheckResult> verify_grid_naive(int trials, std::uint64_t seed);

// Merge-order invariance of the moment accumulator (1e-9 relative on mean,
// sd, skewness, kurtosis against sequential pushing) and the 10^6-sample
// Gaussian kurtosis window 3.0 +/- 0.05.
std::vector<CheckResult> verify_moment_merge(std::uint64_t seed);

}  // namespace hammersley
