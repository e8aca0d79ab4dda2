#include "hammersley/moments.hpp"

#include <cmath>

namespace hammersley {

void MomentAccumulator::push(double x) {
  const double n1 = static_cast<double>(count_);
  ++count_;
  const double n = static_cast<double>(count_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ -
         4.0 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term1;
}

MomentAccumulator merge(const MomentAccumulator& a, const MomentAccumulator& b) {
  if (a.count() == 0) return b;
  if (b.count() == 0) return a;
  const double na = static_cast<double>(a.count());
  const double nb = static_cast<double>(b.count());
  const double n = na + nb;
  const double delta = b.mean() - a.mean();
  const double delta2 = delta * delta;

  MomentAccumulator out;
  const double mean = a.mean() + delta * nb / n;
  const double m2 = a.m2() + b.m2() + delta2 * na * nb / n;
  const double m3 = a.m3() + b.m3() +
                    delta2 * delta * na * nb * (na - nb) / (n * n) +
                    3.0 * delta * (na * b.m2() - nb * a.m2()) / n;
  const double m4 =
      a.m4() + b.m4() +
      delta2 * delta2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
      6.0 * delta2 * (na * na * b.m2() + nb * nb * a.m2()) / (n * n) +
      4.0 * delta * (na * b.m3() - nb * a.m3()) / n;
  return MomentAccumulator::from_raw(a.count() + b.count(), mean, m2, m3, m4);
}

double MomentAccumulator::sd() const {
  if (count_ < 2) throw UndefinedMomentError("sd requires at least 2 values");
  return std::sqrt(m2_ / static_cast<double>(count_ - 1));
}

double MomentAccumulator::se_mean() const {
  return sd() / std::sqrt(static_cast<double>(count_));
}

double MomentAccumulator::skewness() const {
  if (count_ < 3 || m2_ <= 0.0) {
    throw UndefinedMomentError("skewness requires count >= 3 and M2 > 0");
  }
  const double n = static_cast<double>(count_);
  const double v2 = m2_ / n;
  return (m3_ / n) / (v2 * std::sqrt(v2));
}

double MomentAccumulator::kurtosis() const {
  if (count_ < 3 || m2_ <= 0.0) {
    throw UndefinedMomentError("kurtosis requires count >= 3 and M2 > 0");
  }
  const double n = static_cast<double>(count_);
  const double v2 = m2_ / n;
  return (m4_ / n) / (v2 * v2);
}

MomentSummary MomentAccumulator::summary() const {
  return MomentSummary{count_, mean_, sd(), skewness(), kurtosis(), se_mean()};
}

MomentAccumulator MomentAccumulator::from_raw(std::uint64_t count, double mean,
                                              double m2, double m3, double m4) {
  MomentAccumulator acc;
  acc.count_ = count;
  acc.mean_ = mean;
  acc.m2_ = m2;
  acc.m3_ = m3;
  acc.m4_ = m4;
  return acc;
}

std::vector<std::int64_t> checkpoint_schedule(std::int64_t n_min,
                                              std::int64_t n_max, int count) {
  if (n_min < 1 || n_max < n_min || count < 1) {
    throw std::invalid_argument(
        "checkpoint_schedule: need 1 <= n_min <= n_max and count >= 1");
  }
  if (count == 1) {
    if (n_min != n_max) {
      throw std::invalid_argument(
          "checkpoint_schedule: count == 1 requires n_min == n_max");
    }
    return {n_min};
  }
  const double lmin = std::log(static_cast<double>(n_min));
  const double lmax = std::log(static_cast<double>(n_max));
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    std::int64_t v = std::llround(std::exp(lmin + t * (lmax - lmin)));
    if (i == 0) v = n_min;
    if (i == count - 1) v = n_max;
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

}  // namespace hammersley
