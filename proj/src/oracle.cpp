#include "hammersley/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hammersley/rng.hpp"

namespace hammersley {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const int n = static_cast<int>(values_.size());
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : values_) {
    if (v < 1 || v > n || seen[v]) {
      throw std::invalid_argument("Permutation: not a bijection on {1..n}");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::decreasing(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

Permutation Permutation::random(int n, Pcg64& gen) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(gen.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(v[i], v[j]);
  }
  return Permutation(std::move(v));
}

Permutation Permutation::reversed() const {
  std::vector<int> v(values_.rbegin(), values_.rend());
  return Permutation(std::move(v));
}

Permutation Permutation::complemented() const {
  const int n = size();
  std::vector<int> v(values_.size());
  for (int i = 0; i < n; ++i) v[i] = n + 1 - values_[i];
  return Permutation(std::move(v));
}

namespace {

// Extends a partial embedding of pattern into seq one index at a time,
// keeping pairwise relative order consistent.
bool extend_embedding(std::span<const int> seq, std::span<const int> pattern,
                      std::vector<int>& chosen, int start) {
  const auto depth = static_cast<int>(chosen.size());
  if (depth == static_cast<int>(pattern.size())) return true;
  const int remaining = static_cast<int>(pattern.size()) - depth;
  for (int i = start; i + remaining <= static_cast<int>(seq.size()); ++i) {
    bool ok = true;
    for (int t = 0; t < depth; ++t) {
      if ((seq[i] < seq[chosen[t]]) != (pattern[depth] < pattern[t])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    chosen.push_back(i);
    if (extend_embedding(seq, pattern, chosen, i + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool contains_pattern(std::span<const int> seq, std::span<const int> pattern) {
  if (pattern.empty()) return true;
  if (pattern.size() > seq.size()) return false;
  std::vector<int> chosen;
  chosen.reserve(pattern.size());
  return extend_embedding(seq, pattern, chosen, 0);
}

bool contains_pattern(const Permutation& sigma, const Permutation& tau) {
  return contains_pattern(std::span<const int>(sigma.values()),
                          std::span<const int>(tau.values()));
}

int lis_patience(const Permutation& sigma) {
  std::vector<int> tops;  // smallest visible card per pile, strictly increasing
  for (int v : sigma.values()) {
    auto it = std::lower_bound(tops.begin(), tops.end(), v);
    if (it == tops.end()) {
      tops.push_back(v);
    } else {
      *it = v;
    }
  }
  return static_cast<int>(tops.size());
}

Shape rsk_shape(const Permutation& sigma) {
  std::vector<std::vector<int>> rows;
  for (int v : sigma.values()) {
    int x = v;
    bool placed = false;
    for (auto& row : rows) {
      auto it = std::upper_bound(row.begin(), row.end(), x);
      if (it == row.end()) {
        row.push_back(x);
        placed = true;
        break;
      }
      std::swap(x, *it);  // bump
    }
    if (!placed) rows.push_back({x});
  }
  Shape shape;
  shape.parts.reserve(rows.size());
  for (const auto& row : rows) shape.parts.push_back(static_cast<int>(row.size()));
  return shape;
}

int greene_stat(const Permutation& sigma, int k) {
  if (k < 2) throw std::invalid_argument("greene_stat: k must be >= 2");
  const Shape shape = rsk_shape(sigma);
  const int rows = std::min<int>(k - 1, static_cast<int>(shape.parts.size()));
  int sum = 0;
  for (int i = 0; i < rows; ++i) sum += shape.parts[i];
  return sum;
}

namespace {

// Depth-first search over subsequences of sigma that avoid tau. A prefix
// containing tau can never be extended into an avoiding subsequence, so the
// branch is cut as soon as containment appears.
void longest_avoiding_dfs(std::span<const int> seq, std::span<const int> tau,
                          int pos, std::vector<int>& current, int& best) {
  const int n = static_cast<int>(seq.size());
  if (static_cast<int>(current.size()) > best) {
    best = static_cast<int>(current.size());
  }
  if (pos == n) return;
  if (static_cast<int>(current.size()) + (n - pos) <= best) return;  // bound
  // take seq[pos] if the subsequence stays tau-avoiding
  current.push_back(seq[pos]);
  if (!contains_pattern(std::span<const int>(current), tau)) {
    longest_avoiding_dfs(seq, tau, pos + 1, current, best);
  }
  current.pop_back();
  // skip seq[pos]
  longest_avoiding_dfs(seq, tau, pos + 1, current, best);
}

}  // namespace

int longest_avoiding_bruteforce(const Permutation& sigma,
                                const Permutation& tau) {
  if (sigma.size() > 20) {
    throw std::invalid_argument(
        "longest_avoiding_bruteforce: sigma length capped at 20");
  }
  int best = 0;
  std::vector<int> current;
  current.reserve(sigma.size());
  longest_avoiding_dfs(std::span<const int>(sigma.values()),
                       std::span<const int>(tau.values()), 0, current, best);
  return best;
}

ExactDistribution exact_distribution(int n, int k) {
  if (n < 0 || n > 8) {
    throw std::invalid_argument("exact_distribution: n must be in [0, 8]");
  }
  if (k < 2) throw std::invalid_argument("exact_distribution: k must be >= 2");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  ExactDistribution dist;
  do {
    ++dist.counts[greene_stat(Permutation(v), k)];
    ++dist.total;
  } while (std::next_permutation(v.begin(), v.end()));
  return dist;
}

}  // namespace hammersley
