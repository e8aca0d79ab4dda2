#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hammersley/fit.hpp"
#include "hammersley/results.hpp"

namespace hammersley {

// Exponents for the normalized planar columns. Any field left unset is
// fitted from the data (log-power on means, free power on sds); fits that
// cannot run (too few distinct checkpoints) leave the column as nan.
struct ReportOptions {
  std::optional<double> mean_log_exp;  // b in mean/((log n)^b * n^c)
  std::optional<double> mean_pow_exp;  // c
  std::optional<double> sd_pow_exp;    // f in sd/n^f
};

// (n, mean) or (n, sd) series for fitting; column is "mean" or "sd".
// Throws std::invalid_argument on an unknown column and UndefinedMomentError
// when sd is requested with fewer than 2 samples.
std::vector<FitPoint> series_from(const ResultsFile& file,
                                  const std::string& column);

// Per-checkpoint summary table with the normalized columns the tables in the
// write-up use: for the line process (c0*sqrt(n) - mean)/n^(1/6) and
// sd/n^(1/6) with c0 = 2(k-1); for planar processes mean/((log n)^b * n^c)
// and sd/n^f. Undefined statistics render as nan.
std::string render_report(const ResultsFile& file,
                          const ReportOptions& options = {});

// Writes two-column plot files (n, series) named <stem>-mean.dat,
// <stem>-sd.dat, <stem>-norm-mean.dat, <stem>-norm-sd.dat; returns the paths
// written. Norm files are skipped when the normalization is unavailable.
std::vector<std::string> write_plot_data(const ResultsFile& file,
                                         const std::string& stem,
                                         const ReportOptions& options = {});

// JSON rendering of a fit: model, params (estimate + ci95), mse, r_squared,
// residuals, condition diagnostics.
std::string fit_report_to_json(const FitReport& report);

}  // namespace hammersley
