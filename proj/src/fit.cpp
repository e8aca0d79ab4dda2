#include "hammersley/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace hammersley {

namespace {

// Continued fraction for the regularized incomplete beta (Lentz).
double beta_cont_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-14) break;
  }
  return h;
}

double regularized_ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cont_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_cont_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_ibeta(0.5 * df, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double r_squared_of(const Eigen::VectorXd& y, double ssr) {
  const double mean = y.mean();
  const double sst = (y.array() - mean).square().sum();
  if (sst <= 0.0) return ssr <= 1e-300 ? 1.0 : 0.0;
  return 1.0 - ssr / sst;
}

void require_nonempty(std::span<const FitPoint> points, const char* who) {
  if (points.empty()) {
    throw std::invalid_argument(std::string(who) + ": no data points");
  }
}

// Least squares for a single coefficient on one regressor (no intercept).
FitReport fit_single_regressor(std::span<const FitPoint> points,
                               std::string model, std::string param_name,
                               const std::vector<double>& regressor,
                               const std::vector<double>& target) {
  const auto m = static_cast<std::int64_t>(points.size());
  double sg2 = 0.0;
  double srg = 0.0;
  for (std::int64_t i = 0; i < m; ++i) {
    sg2 += regressor[i] * regressor[i];
    srg += target[i] * regressor[i];
  }
  if (sg2 <= 0.0) {
    throw std::invalid_argument(model + ": degenerate regressor");
  }
  const double coef = srg / sg2;

  FitReport report;
  report.model = std::move(model);
  report.residuals.resize(static_cast<std::size_t>(m));
  double ssr = 0.0;
  Eigen::VectorXd tv(m);
  for (std::int64_t i = 0; i < m; ++i) {
    const double res = target[i] - coef * regressor[i];
    report.residuals[static_cast<std::size_t>(i)] = res;
    ssr += res * res;
    tv[i] = target[i];
  }
  report.mse = ssr / static_cast<double>(m);
  report.r_squared = r_squared_of(tv, ssr);

  const auto df = static_cast<double>(m - 1);
  double lo = coef;
  double hi = coef;
  if (df >= 1.0) {
    const double se = std::sqrt((ssr / df) / sg2);
    const double tq = student_t_quantile975(df);
    lo = coef - tq * se;
    hi = coef + tq * se;
  } else {
    report.ci_degenerate = true;
  }
  report.params.push_back({std::move(param_name), coef, lo, hi});
  return report;
}

struct OlsResult {
  Eigen::VectorXd beta;
  Eigen::VectorXd se;     // valid when df > 0
  double ssr = 0.0;
  double condition = 0.0;
  double df = 0.0;
};

OlsResult solve_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const char* who) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0 || smax / smin > 1e12) {
    throw std::invalid_argument(std::string(who) + ": singular design");
  }
  OlsResult r;
  r.condition = smax / smin;
  r.beta = svd.solve(y);
  const Eigen::VectorXd res = y - x * r.beta;
  r.ssr = res.squaredNorm();
  r.df = static_cast<double>(x.rows() - x.cols());
  r.se = Eigen::VectorXd::Zero(x.cols());
  if (r.df > 0.0) {
    const double s2 = r.ssr / r.df;
    const Eigen::MatrixXd xtx_inv =
        (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(x.cols(), x.cols()));
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      r.se(j) = std::sqrt(s2 * xtx_inv(j, j));
    }
  }
  return r;
}

std::size_t count_distinct_n(std::span<const FitPoint> points) {
  std::set<double> distinct;
  for (const auto& p : points) distinct.insert(p.n);
  return distinct.size();
}

}  // namespace

double student_t_quantile975(double df) {
  if (df < 1.0) {
    throw std::invalid_argument("student_t_quantile975: df must be >= 1");
  }
  double lo = 0.0;
  double hi = 1000.0;  // covers df >= 1 (t = 12.71 at df = 1)
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    (student_t_cdf(mid, df) < 0.975 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FitReport fit_corrected_sqrt(std::span<const FitPoint> points, double c0) {
  require_nonempty(points, "fit_corrected_sqrt");
  std::vector<double> regressor;
  std::vector<double> target;
  for (const auto& p : points) {
    if (p.n <= 0.0) {
      throw std::invalid_argument("fit_corrected_sqrt: n must be positive");
    }
    regressor.push_back(std::pow(p.n, 1.0 / 6.0));
    target.push_back(p.y - c0 * std::sqrt(p.n));
  }
  FitReport report = fit_single_regressor(points, "corrected_sqrt", "a",
                                          regressor, target);
  // residuals of the target series are residuals of y itself; r_squared is
  // recomputed against the raw y values
  Eigen::VectorXd y(points.size());
  double ssr = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    y[static_cast<Eigen::Index>(i)] = points[i].y;
    ssr += report.residuals[i] * report.residuals[i];
  }
  report.r_squared = r_squared_of(y, ssr);
  return report;
}

FitReport fit_scaled_power(std::span<const FitPoint> points, double exponent) {
  require_nonempty(points, "fit_scaled_power");
  std::vector<double> regressor;
  std::vector<double> target;
  for (const auto& p : points) {
    if (p.n <= 0.0) {
      throw std::invalid_argument("fit_scaled_power: n must be positive");
    }
    regressor.push_back(std::pow(p.n, exponent));
    target.push_back(p.y);
  }
  return fit_single_regressor(points, "scaled_power", "b", regressor, target);
}

FitReport fit_power(std::span<const FitPoint> points) {
  require_nonempty(points, "fit_power");
  if (count_distinct_n(points) < 2) {
    throw std::invalid_argument("fit_power: need at least 2 distinct n");
  }
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd x(m, 2);
  Eigen::VectorXd ly(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    if (p.n <= 0.0 || p.y <= 0.0) {
      throw std::invalid_argument("fit_power: requires n > 0 and y > 0");
    }
    x(i, 0) = 1.0;
    x(i, 1) = std::log(p.n);
    ly(i) = std::log(p.y);
  }
  const OlsResult ols = solve_ols(x, ly, "fit_power");

  FitReport report;
  report.model = "power";
  report.condition = ols.condition;
  report.ci_degenerate = ols.df <= 0.0;
  const double tq = report.ci_degenerate ? 0.0 : student_t_quantile975(ols.df);
  const double d = std::exp(ols.beta(0));
  const double f = ols.beta(1);
  report.params.push_back({"d", d, std::exp(ols.beta(0) - tq * ols.se(0)),
                           std::exp(ols.beta(0) + tq * ols.se(0))});
  report.params.push_back({"f", f, f - tq * ols.se(1), f + tq * ols.se(1)});
  report.r_squared = r_squared_of(ly, ols.ssr);
  double ssr_orig = 0.0;
  report.residuals.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double res = points[i].y - d * std::pow(points[i].n, f);
    report.residuals[i] = res;
    ssr_orig += res * res;
  }
  report.mse = ssr_orig / static_cast<double>(points.size());
  return report;
}

FitReport fit_log_power(std::span<const FitPoint> points) {
  require_nonempty(points, "fit_log_power");
  if (count_distinct_n(points) < 3) {
    throw std::invalid_argument("fit_log_power: singular design, need at least 3 distinct n");
  }
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd x(m, 3);
  Eigen::VectorXd ly(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    if (p.n < 2.0 || p.y <= 0.0) {
      throw std::invalid_argument("fit_log_power: requires n >= 2 and y > 0");
    }
    x(i, 0) = 1.0;
    x(i, 1) = std::log(std::log(p.n));
    x(i, 2) = std::log(p.n);
    ly(i) = std::log(p.y);
  }
  const OlsResult ols = solve_ols(x, ly, "fit_log_power");

  FitReport report;
  report.model = "log_power";
  report.condition = ols.condition;
  report.collinearity_warning = ols.condition > 1e6;
  report.ci_degenerate = ols.df <= 0.0;
  const double tq = report.ci_degenerate ? 0.0 : student_t_quantile975(ols.df);
  const double a = std::exp(ols.beta(0));
  const double b = ols.beta(1);
  const double c = ols.beta(2);
  report.params.push_back({"a", a, std::exp(ols.beta(0) - tq * ols.se(0)),
                           std::exp(ols.beta(0) + tq * ols.se(0))});
  report.params.push_back({"b", b, b - tq * ols.se(1), b + tq * ols.se(1)});
  report.params.push_back({"c", c, c - tq * ols.se(2), c + tq * ols.se(2)});
  report.r_squared = r_squared_of(ly, ols.ssr);
  double ssr_orig = 0.0;
  report.residuals.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double fitted = a * std::pow(std::log(points[i].n), b) *
                          std::pow(points[i].n, c);
    const double res = points[i].y - fitted;
    report.residuals[i] = res;
    ssr_orig += res * res;
  }
  report.mse = ssr_orig / static_cast<double>(points.size());
  return report;
}

}  // namespace hammersley
