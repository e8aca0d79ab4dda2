#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hammersley/report.hpp"
#include "hammersley/results.hpp"
#include "hammersley/runner.hpp"
#include "hammersley/verify.hpp"

namespace {

using namespace hammersley;

int print_checks(const std::vector<CheckResult>& checks) {
  int failures = 0;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << '\n';
    if (!c.passed) ++failures;
  }
  return failures;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ResultsError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.good()) throw ResultsError("write to '" + path + "' failed");
}

struct SimulateArgs {
  std::string process = "multiline";
  int k = 3;
  double slope = 1.0;
  std::string metric = "euclidean";
  std::int64_t nmin = 1;
  std::int64_t nmax = 1;
  int checkpoints = 1;
  std::int64_t samples = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream_offset = 0;
  int workers = 1;
  bool naive = false;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  ExperimentConfig cfg;
  cfg.process = args.process;
  cfg.k = args.k;
  cfg.slope = args.slope;
  cfg.metric = args.metric;
  cfg.grid = !args.naive;
  cfg.n_min = args.nmin;
  cfg.n_max = args.nmax;
  cfg.checkpoint_count = args.checkpoints;
  cfg.samples = args.samples;
  cfg.seed = args.seed;
  cfg.stream_offset = args.stream_offset;
  cfg.validate();

  const ResultsFile results = run_experiment(cfg, args.workers);
  write_results(results, args.out);
  std::cout << "wrote " << args.out << ": " << results.total_samples()
            << " samples x " << results.rows.size() << " checkpoints in "
            << results.wall_seconds << " s\n";
  return 0;
}

struct VerifyArgs {
  int nmax = 7;
  std::vector<int> ks = {2, 3, 4};
  int trials = 10000;
  std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& args) {
  std::vector<CheckResult> checks = verify_equivalence(args.nmax, args.ks);
  for (const int k : args.ks) {
    std::cout << "exact distribution n=" << args.nmax << " k=" << k << ": "
              << exact_distribution_text(args.nmax, k) << '\n';
  }
  const auto grid = verify_grid_naive(args.trials, args.seed);
  checks.insert(checks.end(), grid.begin(), grid.end());
  const auto moments = verify_moment_merge(args.seed);
  checks.insert(checks.end(), moments.begin(), moments.end());
  return print_checks(checks) == 0 ? 0 : 2;
}

struct FitArgs {
  std::string results;
  std::string model;
  std::string column = "mean";
  std::optional<double> c0;
  std::optional<double> exponent;
  std::string out;
};

int run_fit(const FitArgs& args) {
  const ResultsFile file = read_results(args.results);
  const auto points = series_from(file, args.column);

  FitReport report;
  if (args.model == "corrected-sqrt") {
    double c0 = 0.0;
    if (args.c0) {
      c0 = *args.c0;
    } else if (file.config.process == "multiline") {
      c0 = 2.0 * (file.config.k - 1);
    } else {
      throw std::invalid_argument("fit: --c0 is required for planar results");
    }
    report = fit_corrected_sqrt(points, c0);
  } else if (args.model == "scaled-power") {
    if (!args.exponent) {
      throw std::invalid_argument("fit: --exponent is required for scaled-power");
    }
    report = fit_scaled_power(points, *args.exponent);
  } else if (args.model == "power") {
    report = fit_power(points);
  } else {
    report = fit_log_power(points);
  }

  const std::string json = fit_report_to_json(report);
  if (args.out.empty()) {
    std::cout << json << '\n';
  } else {
    write_text(args.out, json + "\n");
  }
  return 0;
}

struct ReportArgs {
  std::string results;
  std::string out;
  std::string plot_stem;
  std::optional<double> norm_b;
  std::optional<double> norm_c;
  std::optional<double> norm_f;
};

int run_report(const ReportArgs& args) {
  const ResultsFile file = read_results(args.results);
  ReportOptions options;
  options.mean_log_exp = args.norm_b;
  options.mean_pow_exp = args.norm_c;
  options.sd_pow_exp = args.norm_f;

  const std::string table = render_report(file, options);
  if (args.out.empty()) {
    std::cout << table;
  } else {
    write_text(args.out, table);
  }
  const std::string stem =
      args.plot_stem.empty() ? args.results : args.plot_stem;
  const auto written = write_plot_data(file, stem, options);
  for (const auto& path : written) {
    std::cout << "# plot data: " << path << '\n';
  }
  return 0;
}

struct MergeArgs {
  std::vector<std::string> inputs;
  std::string out;
};

int run_merge(const MergeArgs& args) {
  std::vector<ResultsFile> files;
  files.reserve(args.inputs.size());
  for (const auto& path : args.inputs) {
    files.push_back(read_results(path));
  }
  const ResultsFile merged = merge_results(files);
  write_results(merged, args.out);
  std::cout << "wrote " << args.out << ": " << merged.total_samples()
            << " samples from " << merged.runs.size() << " stream runs\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hammersley-type interacting particle processes: simulate, "
               "verify, fit, report, merge"};
  app.set_version_flag("--version", "hammersley 1.0");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Run replicas of a process and write a results file");
  simulate
      ->add_option("--process", sim.process,
                   "multiline, plane-i (half-plane), plane-ii "
                   "(outside-circle), or plane-iii (dominance rectangle)")
      ->check(CLI::IsMember({"multiline", "plane-i", "plane-ii", "plane-iii"}));
  simulate->add_option("--k", sim.k, "line count for --process multiline (>= 2)");
  simulate->add_option("--slope", sim.slope, "half-plane slope for plane-i");
  simulate
      ->add_option("--metric", sim.metric, "planar distance measure")
      ->check(CLI::IsMember({"euclidean", "manhattan", "chebyshev"}));
  simulate->add_option("--nmin", sim.nmin, "first checkpoint (steps)");
  simulate->add_option("--nmax", sim.nmax, "last checkpoint (steps)");
  simulate->add_option("--checkpoints", sim.checkpoints,
                       "log-spaced checkpoint count");
  simulate->add_option("--samples", sim.samples, "independent replicas");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--stream-offset", sim.stream_offset,
                       "first rng stream id (replica r uses offset + r)");
  simulate->add_option("--workers", sim.workers, "worker threads");
  simulate->add_flag("--naive", sim.naive,
                     "force the linear-scan nearest-particle path");
  simulate->add_option("--out", sim.out, "results file path")->required();

  VerifyArgs ver;
  auto* verify = app.add_subcommand(
      "verify", "Exhaustive and randomized self-checks; exit 2 on failure");
  verify->add_option("--nmax", ver.nmax, "sweep all of S_n for n <= nmax (<= 7)");
  verify->add_option("--k", ver.ks, "line counts to check")->delimiter(',');
  verify->add_option("--trials", ver.trials, "randomized grid-vs-naive trials");
  verify->add_option("--seed", ver.seed, "seed for the randomized suites");

  FitArgs fit;
  auto* fitcmd = app.add_subcommand(
      "fit", "Fit a scaling law to a results file, print a JSON report");
  fitcmd->add_option("--results", fit.results, "results file")->required();
  fitcmd
      ->add_option("--model", fit.model,
                   "corrected-sqrt: y = c0 sqrt(n) + a n^(1/6); scaled-power: "
                   "y = b n^e0; power: y = d n^f; log-power: y = a (log n)^b n^c")
      ->required()
      ->check(CLI::IsMember({"corrected-sqrt", "scaled-power", "power",
                             "log-power"}));
  fitcmd->add_option("--column", fit.column, "series to fit: mean or sd")
      ->check(CLI::IsMember({"mean", "sd"}));
  fitcmd->add_option("--c0", fit.c0,
                     "sqrt coefficient for corrected-sqrt (default 2(k-1) for "
                     "multiline results)");
  fitcmd->add_option("--exponent", fit.exponent, "fixed exponent for scaled-power");
  fitcmd->add_option("--out", fit.out, "write the JSON here instead of stdout");

  ReportArgs rep;
  auto* report = app.add_subcommand(
      "report", "Summary table with normalized columns, plus plot-data files");
  report->add_option("--results", rep.results, "results file")->required();
  report->add_option("--out", rep.out, "write the table here instead of stdout");
  report->add_option("--plot-stem", rep.plot_stem,
                     "stem for the plot-data files (default: the results path)");
  report->add_option("--norm-b", rep.norm_b,
                     "log exponent for the planar normalized mean");
  report->add_option("--norm-c", rep.norm_c,
                     "power exponent for the planar normalized mean");
  report->add_option("--norm-f", rep.norm_f,
                     "power exponent for the planar normalized sd");

  MergeArgs mrg;
  auto* merge = app.add_subcommand(
      "merge", "Merge results files with disjoint stream ranges");
  merge->add_option("inputs", mrg.inputs, "results files")->required();
  merge->add_option("--out", mrg.out, "merged output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (verify->parsed()) return run_verify(ver);
    if (fitcmd->parsed()) return run_fit(fit);
    if (report->parsed()) return run_report(rep);
    if (merge->parsed()) return run_merge(mrg);
  } catch (const IncompatibleResultsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
