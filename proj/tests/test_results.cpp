#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hammersley/report.hpp"
#include "hammersley/results.hpp"
#include "hammersley/runner.hpp"

using namespace hammersley;

namespace {

std::filesystem::path tmp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "hammersley-results-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string tmp_path(const std::string& name) {
  return (tmp_dir() / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.process = "multiline";
  cfg.k = 3;
  cfg.n_min = 10;
  cfg.n_max = 1000;
  cfg.checkpoint_count = 3;
  cfg.samples = 300;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());

  ExperimentConfig bad = cfg;
  bad.process = "triangle";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.k = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.metric = "hamming";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.n_min = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.n_max = 5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.checkpoint_count = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.checkpoint_count = 1;  // nmin != nmax
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.samples = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("compatibility ignores sampling provenance") {
  const ExperimentConfig a = small_config();
  ExperimentConfig b = a;
  b.seed = 99;
  b.samples = 17;
  b.stream_offset = 1000;
  CHECK(compatible(a, b));
  b.k = 4;
  CHECK_FALSE(compatible(a, b));
}

TEST_CASE("write/read round trip preserves everything") {
  const auto file = run_experiment(small_config(), 1);
  const auto path = tmp_path("roundtrip.txt");
  write_results(file, path);
  const auto back = read_results(path);

  CHECK(back.config == file.config);
  CHECK(back.runs == file.runs);
  REQUIRE(back.rows.size() == file.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    CHECK(back.rows[i] == file.rows[i]);  // bit-exact via round-trip decimals
  }

  // a rewrite of the parsed file is byte-identical apart from the run line
  const auto path2 = tmp_path("roundtrip2.txt");
  write_results(back, path2);
  CHECK(stable_bytes(path) == stable_bytes(path2));
}

TEST_CASE("worker count does not change the result") {
  ExperimentConfig cfg = small_config();
  cfg.samples = 700;  // spans three 256-replica batches
  const auto serial = run_experiment(cfg, 1);
  const auto threaded = run_experiment(cfg, 4);

  REQUIRE(serial.rows.size() == threaded.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i] == threaded.rows[i]);
  }

  const auto p1 = tmp_path("workers1.txt");
  const auto p4 = tmp_path("workers4.txt");
  write_results(serial, p1);
  write_results(threaded, p4);
  CHECK(stable_bytes(p1) == stable_bytes(p4));
}

TEST_CASE("merging split runs matches one long run") {
  ExperimentConfig whole = small_config();
  whole.samples = 400;
  whole.seed = 9;
  const auto full = run_experiment(whole, 1);

  ExperimentConfig first = whole;
  first.samples = 200;
  ExperimentConfig second = whole;
  second.samples = 200;
  second.stream_offset = 200;

  const std::vector<ResultsFile> parts = {run_experiment(first, 1),
                                          run_experiment(second, 1)};
  const auto merged = merge_results(parts);

  CHECK(merged.config.samples == 400);
  CHECK(merged.runs.size() == 2);
  REQUIRE(merged.rows.size() == full.rows.size());
  for (std::size_t i = 0; i < merged.rows.size(); ++i) {
    const auto& a = merged.rows[i].acc;
    const auto& b = full.rows[i].acc;
    REQUIRE(a.count() == b.count());
    CHECK(a.mean() == doctest::Approx(b.mean()).epsilon(1e-12));
    CHECK(a.sd() == doctest::Approx(b.sd()).epsilon(1e-9));
    CHECK(a.skewness() == doctest::Approx(b.skewness()).epsilon(1e-9));
    CHECK(a.kurtosis() == doctest::Approx(b.kurtosis()).epsilon(1e-9));
  }
}

TEST_CASE("merging a single file is the identity") {
  const auto file = run_experiment(small_config(), 1);
  const std::vector<ResultsFile> one = {file};
  const auto merged = merge_results(one);
  CHECK(merged.config == file.config);
  CHECK(merged.runs == file.runs);
  for (std::size_t i = 0; i < merged.rows.size(); ++i) {
    CHECK(merged.rows[i] == file.rows[i]);
  }
}

TEST_CASE("merge rejects incompatible or overlapping inputs") {
  ExperimentConfig cfg = small_config();
  cfg.samples = 50;
  const auto base = run_experiment(cfg, 1);

  ExperimentConfig other = cfg;
  other.k = 4;
  const std::vector<ResultsFile> mixed = {base, run_experiment(other, 1)};
  CHECK_THROWS_AS(merge_results(mixed), IncompatibleResultsError);

  ExperimentConfig overlapping = cfg;
  overlapping.stream_offset = 25;  // collides with [0, 50)
  const std::vector<ResultsFile> overlap = {base, run_experiment(overlapping, 1)};
  CHECK_THROWS_AS(merge_results(overlap), IncompatibleResultsError);

  // same offsets under a different seed are fine
  ExperimentConfig reseeded = cfg;
  reseeded.seed = 8;
  const std::vector<ResultsFile> ok = {base, run_experiment(reseeded, 1)};
  CHECK_NOTHROW(merge_results(ok));

  const std::vector<ResultsFile> none;
  CHECK_THROWS_AS(merge_results(none), IncompatibleResultsError);
}

TEST_CASE("unreadable or malformed files raise ResultsError") {
  CHECK_THROWS_AS(read_results(tmp_path("missing.txt")), ResultsError);

  const auto bad_magic = tmp_path("bad_magic.txt");
  write_text(bad_magic, "not a results file\n1 2 3\n");
  CHECK_THROWS_AS(read_results(bad_magic), ResultsError);

  const auto no_config = tmp_path("no_config.txt");
  write_text(no_config, "# hammersley results v1\n# columns n count mean M2 M3 M4\n");
  CHECK_THROWS_AS(read_results(no_config), ResultsError);

  // start from a valid file, then break it in several ways
  ExperimentConfig cfg;
  cfg.n_min = 5;
  cfg.n_max = 5;
  cfg.samples = 20;
  const auto good = run_experiment(cfg, 1);
  const auto good_path = tmp_path("good.txt");
  write_results(good, good_path);
  std::ifstream in(good_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  const auto short_row = tmp_path("short_row.txt");
  write_text(short_row, text.substr(0, text.rfind(' ')));  // drop last field
  CHECK_THROWS_AS(read_results(short_row), ResultsError);

  const auto no_rows = tmp_path("no_rows.txt");
  write_text(no_rows, text.substr(0, text.rfind("5 20")));
  CHECK_THROWS_AS(read_results(no_rows), ResultsError);

  const auto bad_number = tmp_path("bad_number.txt");
  auto mangled = text;
  mangled.replace(mangled.rfind("20"), 2, "2x");
  write_text(bad_number, mangled);
  CHECK_THROWS_AS(read_results(bad_number), ResultsError);
}

TEST_CASE("a single-step run has mean exactly 1") {
  ExperimentConfig cfg;
  cfg.n_min = 1;
  cfg.n_max = 1;
  cfg.samples = 50;
  const auto file = run_experiment(cfg, 1);
  REQUIRE(file.rows.size() == 1);
  CHECK(file.rows[0].acc.mean() == 1.0);
  CHECK(file.rows[0].acc.m2() == 0.0);
}

TEST_CASE("series extraction and its guards") {
  const auto file = run_experiment(small_config(), 1);
  const auto means = series_from(file, "mean");
  REQUIRE(means.size() == 3);
  CHECK(means[0].n == 10.0);
  CHECK(means[0].y == file.rows[0].acc.mean());
  const auto sds = series_from(file, "sd");
  CHECK(sds[2].y == file.rows[2].acc.sd());
  CHECK_THROWS_AS(series_from(file, "median"), std::invalid_argument);

  ExperimentConfig lone;
  lone.n_min = 4;
  lone.n_max = 4;
  lone.samples = 1;
  const auto single = run_experiment(lone, 1);
  CHECK_THROWS_AS(series_from(single, "sd"), UndefinedMomentError);
}

TEST_CASE("report renders pinned normalized values") {
  // synthesize one checkpoint whose normalized columns are known exactly
  const double n = 10000.0;
  const double g = std::pow(n, 1.0 / 6.0);
  const std::uint64_t count = 20000;
  const double mean = 4.0 * std::sqrt(n) - 4.790 * g;
  const double sd = 1.345 * g;
  const double m2 = sd * sd * static_cast<double>(count - 1);
  const double m2c = m2 / static_cast<double>(count);
  const double m3 = 0.13 * std::pow(m2c, 1.5) * static_cast<double>(count);
  const double m4 = 3.02 * m2c * m2c * static_cast<double>(count);

  ResultsFile file;
  file.config.n_min = 10000;
  file.config.n_max = 10000;
  file.config.samples = static_cast<std::int64_t>(count);
  file.config.seed = 1;
  file.runs.push_back({1, 0, static_cast<std::int64_t>(count)});
  file.rows.push_back(
      {10000, MomentAccumulator::from_raw(count, mean, m2, m3, m4)});

  const auto text = render_report(file);
  CHECK(text.find("4.790") != std::string::npos);
  CHECK(text.find("1.345") != std::string::npos);
  CHECK(text.find("0.1300") != std::string::npos);
  CHECK(text.find("3.0200") != std::string::npos);
  CHECK(text.find("norm_mean = (4*sqrt(n) - mean)/n^(1/6)") != std::string::npos);
}

TEST_CASE("plot data files land next to the requested stem") {
  const auto file = run_experiment(small_config(), 1);
  const auto stem = tmp_path("plots");
  const auto written = write_plot_data(file, stem);
  REQUIRE(written.size() == 4);  // multiline normalization is always known
  for (const auto& p : written) {
    CHECK(std::filesystem::exists(p));
  }
  std::ifstream first(written[0]);
  std::string header;
  std::getline(first, header);
  CHECK(header.starts_with("# n "));
}

TEST_CASE("fit reports serialize to parseable json") {
  const std::vector<FitPoint> pts = {{100.0, 2.0 * std::pow(100.0, 0.3)},
                                     {10000.0, 2.0 * std::pow(10000.0, 0.3)},
                                     {1000000.0, 2.0 * std::pow(1000000.0, 0.3)}};
  const auto rep = fit_power(pts);
  const auto j = nlohmann::json::parse(fit_report_to_json(rep));
  CHECK(j.at("model") == "power");
  CHECK(j.at("params").size() == 2);
  CHECK(j.at("params")[0].at("name") == "d");
  CHECK(j.at("params")[1].at("estimate").get<double>() ==
        doctest::Approx(0.3).epsilon(1e-9));
  CHECK(j.at("params")[1].at("ci95").size() == 2);
  CHECK(j.at("residuals").size() == 3);
}

TEST_CASE("stable bytes ignore the volatile run line") {
  auto file = run_experiment(small_config(), 1);
  const auto a = tmp_path("stable_a.txt");
  file.workers = 1;
  file.wall_seconds = 0.125;
  write_results(file, a);
  const auto b = tmp_path("stable_b.txt");
  file.workers = 7;
  file.wall_seconds = 99.5;
  write_results(file, b);

  std::ifstream fa(a), fb(b);
  const std::string ta((std::istreambuf_iterator<char>(fa)),
                       std::istreambuf_iterator<char>());
  const std::string tb((std::istreambuf_iterator<char>(fb)),
                       std::istreambuf_iterator<char>());
  CHECK(ta != tb);
  CHECK(stable_bytes(a) == stable_bytes(b));
}
