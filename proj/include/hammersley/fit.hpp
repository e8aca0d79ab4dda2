#pragma once

#include <span>
#include <string>
#include <vector>

namespace hammersley {

struct FitPoint {
  double n = 0.0;
  double y = 0.0;
};

struct ParamEstimate {
  std::string name;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

// One fitted model: parameter estimates with 95% confidence intervals, mean
// squared residual in the original y scale, and per-point residuals.
// r_squared is computed in the scale the least squares was solved in
// (original scale for the linear-in-one-parameter forms, log scale for the
// power forms). condition is the design-matrix condition number for the
// multi-regressor form; ci_degenerate flags fits with no residual degrees of
// freedom.
struct FitReport {
  std::string model;
  std::vector<ParamEstimate> params;
  double mse = 0.0;
  double r_squared = 0.0;
  std::vector<double> residuals;
  double condition = 0.0;
  bool ci_degenerate = false;
  bool collinearity_warning = false;
};

// y = c0 * sqrt(n) + a * n^(1/6), least squares for a alone.
FitReport fit_corrected_sqrt(std::span<const FitPoint> points, double c0);

// y = b * n^exponent, least squares for b alone.
FitReport fit_scaled_power(std::span<const FitPoint> points, double exponent);

// y = d * n^f via OLS on log y = log d + f log n. Requires positive y and
// at least 2 distinct n.
FitReport fit_power(std::span<const FitPoint> points);

// y = a * (log n)^b * n^c via OLS on log y = log a + b log log n + c log n.
// Requires positive y, n >= 2, and at least 3 distinct n. Natural logs
// throughout; the log base only rescales a, never b or c.
FitReport fit_log_power(std::span<const FitPoint> points);

// Two-sided 95% Student-t quantile, df >= 1. Exposed for tests.
double student_t_quantile975(double df);

}  // namespace hammersley
