#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace hammersley {

class Pcg64;

// Permutation of {1..n} in one-line notation (0-based positions, 1-based
// values).
class Permutation {
 public:
  Permutation() = default;
  // Throws std::invalid_argument unless values is a bijection on {1..n}.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);
  static Permutation decreasing(int n);  // n, n-1, ..., 1
  static Permutation random(int n, Pcg64& gen);

  int size() const { return static_cast<int>(values_.size()); }
  int operator[](int pos) const { return values_[pos]; }
  const std::vector<int>& values() const { return values_; }

  Permutation reversed() const;
  Permutation complemented() const;  // value v -> n + 1 - v

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

// Integer partition shape, parts weakly decreasing.
struct Shape {
  std::vector<int> parts;
  friend bool operator==(const Shape&, const Shape&) = default;
};

// True iff some subsequence of seq is order-isomorphic to pattern.
// Backtracking search; intended for short patterns.
bool contains_pattern(std::span<const int> seq, std::span<const int> pattern);
bool contains_pattern(const Permutation& sigma, const Permutation& tau);

// Longest increasing subsequence length via patience-sorting pile tops.
int lis_patience(const Permutation& sigma);

// Shape of the row-insertion (Robinson-Schensted) tableau of sigma.
// parts[0] equals lis_patience(sigma).
Shape rsk_shape(const Permutation& sigma);

// Sum of the first k-1 parts of rsk_shape(sigma): by Greene's theorem the
// length of the longest subsequence avoiding the decreasing pattern k...21.
int greene_stat(const Permutation& sigma, int k);

// Exhaustive longest tau-avoiding subsequence length. Guarded to
// sigma.size() <= 20.
int longest_avoiding_bruteforce(const Permutation& sigma,
                                const Permutation& tau);

// Exact distribution of greene_stat over all of S_n as rational counts.
struct ExactDistribution {
  std::uint64_t total = 0;               // n!
  std::map<int, std::uint64_t> counts;   // value -> number of permutations
  friend bool operator==(const ExactDistribution&,
                         const ExactDistribution&) = default;
};

// Enumerates all n! permutations; n <= 8.
ExactDistribution exact_distribution(int n, int k);

}  // namespace hammersley
