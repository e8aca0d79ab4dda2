#include "hammersley/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace hammersley {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string render_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double sd_or_nan(const MomentAccumulator& a) {
  return a.count() >= 2 ? a.sd() : kNan;
}

double se_or_nan(const MomentAccumulator& a) {
  return a.count() >= 2 ? a.se_mean() : kNan;
}

double skew_or_nan(const MomentAccumulator& a) {
  try {
    return a.skewness();
  } catch (const UndefinedMomentError&) {
    return kNan;
  }
}

double kurt_or_nan(const MomentAccumulator& a) {
  try {
    return a.kurtosis();
  } catch (const UndefinedMomentError&) {
    return kNan;
  }
}

bool is_multiline(const ResultsFile& f) { return f.config.process == "multiline"; }

// How the norm_mean / norm_sd columns are computed for this file.
struct Normalization {
  bool line = false;
  double c0 = 0.0;        // line process: 2(k-1)
  double b = 0.0, c = 0.0;  // planar mean exponents
  double f = 0.0;           // planar sd exponent
  bool mean_ok = false;
  bool sd_ok = false;
  std::string mean_note;
  std::string sd_note;
};

Normalization resolve(const ResultsFile& file, const ReportOptions& options) {
  Normalization norm;
  if (is_multiline(file)) {
    norm.line = true;
    norm.c0 = 2.0 * (file.config.k - 1);
    norm.mean_ok = norm.sd_ok = true;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "norm_mean = (%g*sqrt(n) - mean)/n^(1/6); norm_sd = sd/n^(1/6)",
                  norm.c0);
    norm.mean_note = buf;
    return norm;
  }

  if (options.mean_log_exp && options.mean_pow_exp) {
    norm.b = *options.mean_log_exp;
    norm.c = *options.mean_pow_exp;
    norm.mean_ok = true;
    norm.mean_note = "given";
  } else {
    try {
      const auto fit = fit_log_power(series_from(file, "mean"));
      norm.b = options.mean_log_exp.value_or(fit.params[1].estimate);
      norm.c = options.mean_pow_exp.value_or(fit.params[2].estimate);
      norm.mean_ok = true;
      norm.mean_note = "fitted";
    } catch (const std::exception&) {
      norm.mean_note = "unavailable (log-power fit failed)";
    }
  }
  if (options.sd_pow_exp) {
    norm.f = *options.sd_pow_exp;
    norm.sd_ok = true;
    norm.sd_note = "given";
  } else {
    try {
      const auto fit = fit_power(series_from(file, "sd"));
      norm.f = fit.params[1].estimate;
      norm.sd_ok = true;
      norm.sd_note = "fitted";
    } catch (const std::exception&) {
      norm.sd_note = "unavailable (power fit failed)";
    }
  }
  return norm;
}

double norm_mean_of(const Normalization& norm, std::int64_t n, double mean) {
  if (norm.line) {
    const double nn = static_cast<double>(n);
    return (norm.c0 * std::sqrt(nn) - mean) / std::pow(nn, 1.0 / 6.0);
  }
  if (!norm.mean_ok || n < 2) return kNan;
  const double nn = static_cast<double>(n);
  return mean / (std::pow(std::log(nn), norm.b) * std::pow(nn, norm.c));
}

double norm_sd_of(const Normalization& norm, std::int64_t n, double sd) {
  const double nn = static_cast<double>(n);
  if (norm.line) return sd / std::pow(nn, 1.0 / 6.0);
  if (!norm.sd_ok) return kNan;
  return sd / std::pow(nn, norm.f);
}

}  // namespace

std::vector<FitPoint> series_from(const ResultsFile& file,
                                  const std::string& column) {
  if (column != "mean" && column != "sd") {
    throw std::invalid_argument("series: column must be 'mean' or 'sd'");
  }
  std::vector<FitPoint> points;
  points.reserve(file.rows.size());
  for (const auto& row : file.rows) {
    const double y = column == "mean" ? row.acc.mean() : row.acc.sd();
    points.push_back({static_cast<double>(row.n), y});
  }
  return points;
}

std::string render_report(const ResultsFile& file, const ReportOptions& options) {
  const Normalization norm = resolve(file, options);
  const auto& cfg = file.config;

  std::ostringstream out;
  out << "# hammersley report\n";
  out << "# process=" << cfg.process;
  if (norm.line) {
    out << " k=" << cfg.k;
  } else if (cfg.process == "plane-i") {
    out << " slope=" << render_double(cfg.slope);
  }
  out << " metric=" << cfg.metric << " samples=" << file.total_samples()
      << '\n';
  out << "# schedule nmin=" << cfg.n_min << " nmax=" << cfg.n_max
      << " checkpoints=" << cfg.checkpoint_count << '\n';
  if (norm.line) {
    out << "# " << norm.mean_note << '\n';
  } else {
    char buf[160];
    if (norm.mean_ok) {
      std::snprintf(buf, sizeof buf,
                    "# norm_mean = mean/((log n)^%.3f * n^%.3f) [%s]\n", norm.b,
                    norm.c, norm.mean_note.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "# norm_mean %s\n", norm.mean_note.c_str());
    }
    out << buf;
    if (norm.sd_ok) {
      std::snprintf(buf, sizeof buf, "# norm_sd = sd/n^%.3f [%s]\n", norm.f,
                    norm.sd_note.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "# norm_sd %s\n", norm.sd_note.c_str());
    }
    out << buf;
  }

  char line[256];
  std::snprintf(line, sizeof line, "%12s %14s %12s %12s %9s %9s %11s %10s\n",
                "n", "mean", "sd", "se_mean", "skew", "kurt", "norm_mean",
                "norm_sd");
  out << line;
  for (const auto& row : file.rows) {
    const double mean = row.acc.mean();
    const double sd = sd_or_nan(row.acc);
    std::snprintf(line, sizeof line,
                  "%12lld %14.6f %12.6f %12.6f %9.4f %9.4f %11.3f %10.3f\n",
                  static_cast<long long>(row.n), mean, sd, se_or_nan(row.acc),
                  skew_or_nan(row.acc), kurt_or_nan(row.acc),
                  norm_mean_of(norm, row.n, mean), norm_sd_of(norm, row.n, sd));
    out << line;
  }
  return out.str();
}

std::vector<std::string> write_plot_data(const ResultsFile& file,
                                         const std::string& stem,
                                         const ReportOptions& options) {
  const Normalization norm = resolve(file, options);
  std::vector<std::string> written;

  auto emit = [&](const std::string& suffix, const std::string& label,
                  auto&& value_of) {
    const std::string path = stem + suffix;
    std::ofstream out(path);
    if (!out) throw ResultsError("report: cannot open '" + path + "' for writing");
    out << "# n " << label << '\n';
    for (const auto& row : file.rows) {
      out << row.n << ' ' << render_double(value_of(row)) << '\n';
    }
    if (!out.good()) throw ResultsError("report: write to '" + path + "' failed");
    written.push_back(path);
  };

  emit("-mean.dat", "mean",
       [](const CheckpointRow& r) { return r.acc.mean(); });
  emit("-sd.dat", "sd", [](const CheckpointRow& r) { return sd_or_nan(r.acc); });
  if (norm.mean_ok) {
    emit("-norm-mean.dat", "norm_mean", [&](const CheckpointRow& r) {
      return norm_mean_of(norm, r.n, r.acc.mean());
    });
  }
  if (norm.sd_ok) {
    emit("-norm-sd.dat", "norm_sd", [&](const CheckpointRow& r) {
      return norm_sd_of(norm, r.n, sd_or_nan(r.acc));
    });
  }
  return written;
}

std::string fit_report_to_json(const FitReport& report) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : report.params) {
    params.push_back({{"name", p.name},
                      {"estimate", p.estimate},
                      {"ci95", {p.ci_lo, p.ci_hi}}});
  }
  const nlohmann::json j = {{"model", report.model},
                            {"params", params},
                            {"mse", report.mse},
                            {"r_squared", report.r_squared},
                            {"residuals", report.residuals},
                            {"condition", report.condition},
                            {"ci_degenerate", report.ci_degenerate},
                            {"collinearity_warning", report.collinearity_warning}};
  return j.dump(2);
}

}  // namespace hammersley
