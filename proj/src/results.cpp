#include "hammersley/results.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <tuple>

#include <json.hpp>

namespace hammersley {

namespace {

constexpr const char* kMagic = "# hammersley results v1";

std::string render_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view tok, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ResultsError(std::string("results: bad ") + what + " value '" +
                       std::string(tok) + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view tok, const char* what) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ResultsError(std::string("results: bad ") + what + " value '" +
                       std::string(tok) + "'");
  }
  return v;
}

nlohmann::json config_json(const ResultsFile& f) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : f.runs) {
    runs.push_back({{"samples", r.samples},
                    {"seed", r.seed},
                    {"stream_offset", r.stream_offset}});
  }
  return {{"process", f.config.process},
          {"k", f.config.k},
          {"slope", f.config.slope},
          {"metric", f.config.metric},
          {"grid", f.config.grid},
          {"nmin", f.config.n_min},
          {"nmax", f.config.n_max},
          {"checkpoints", f.config.checkpoint_count},
          {"runs", runs}};
}

// Ranges under the same seed must not reuse a stream id.
void check_disjoint(const std::vector<StreamRun>& runs, const char* who) {
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      const auto& a = runs[i];
      const auto& b = runs[j];
      if (a.seed != b.seed) continue;
      const auto a_end = a.stream_offset + static_cast<std::uint64_t>(a.samples);
      const auto b_end = b.stream_offset + static_cast<std::uint64_t>(b.samples);
      if (a.stream_offset < b_end && b.stream_offset < a_end) {
        std::ostringstream os;
        os << who << ": overlapping stream ranges under seed " << a.seed
           << " ([" << a.stream_offset << ", " << a_end << ") vs ["
           << b.stream_offset << ", " << b_end << "))";
        throw IncompatibleResultsError(os.str());
      }
    }
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (process != "multiline" && process != "plane-i" && process != "plane-ii" &&
      process != "plane-iii") {
    throw std::invalid_argument("config: unknown process '" + process + "'");
  }
  if (process == "multiline" && k < 2) {
    throw std::invalid_argument("config: k must be >= 2");
  }
  if (process == "plane-i" && !std::isfinite(slope)) {
    throw std::invalid_argument("config: slope must be finite");
  }
  if (metric != "euclidean" && metric != "manhattan" && metric != "chebyshev") {
    throw std::invalid_argument("config: unknown metric '" + metric + "'");
  }
  if (n_min < 1 || n_max < n_min) {
    throw std::invalid_argument("config: need 1 <= nmin <= nmax");
  }
  if (checkpoint_count < 1) {
    throw std::invalid_argument("config: checkpoints must be >= 1");
  }
  if (checkpoint_count == 1 && n_min != n_max) {
    throw std::invalid_argument("config: 1 checkpoint requires nmin == nmax");
  }
  if (samples < 1) {
    throw std::invalid_argument("config: samples must be >= 1");
  }
}

std::vector<std::int64_t> ExperimentConfig::schedule() const {
  return checkpoint_schedule(n_min, n_max, checkpoint_count);
}

bool compatible(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.process == b.process && a.k == b.k && a.slope == b.slope &&
         a.metric == b.metric && a.grid == b.grid && a.n_min == b.n_min &&
         a.n_max == b.n_max && a.checkpoint_count == b.checkpoint_count;
}

std::int64_t ResultsFile::total_samples() const {
  std::int64_t total = 0;
  for (const auto& r : runs) total += r.samples;
  return total;
}

void ResultsFile::check() const {
  if (runs.empty()) throw ResultsError("results: no stream runs recorded");
  for (const auto& r : runs) {
    if (r.samples < 1) throw ResultsError("results: run with samples < 1");
  }
  try {
    check_disjoint(runs, "results");
  } catch (const IncompatibleResultsError& e) {
    throw ResultsError(e.what());
  }
  const auto sched = config.schedule();
  if (rows.size() != sched.size()) {
    throw ResultsError("results: row count does not match the schedule");
  }
  const auto total = static_cast<std::uint64_t>(total_samples());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].n != sched[i]) {
      throw ResultsError("results: checkpoint n mismatch against the schedule");
    }
    if (rows[i].acc.count() != total) {
      throw ResultsError("results: accumulator count != total samples");
    }
  }
}

void write_results(const ResultsFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ResultsError("results: cannot open '" + path + "' for writing");
  out << kMagic << '\n';
  out << "# config " << config_json(file).dump() << '\n';
  out << "# run workers=" << file.workers
      << " wall_seconds=" << render_double(file.wall_seconds) << '\n';
  out << "# columns n count mean M2 M3 M4\n";
  for (const auto& row : file.rows) {
    out << row.n << ' ' << row.acc.count() << ' '
        << render_double(row.acc.mean()) << ' ' << render_double(row.acc.m2())
        << ' ' << render_double(row.acc.m3()) << ' '
        << render_double(row.acc.m4()) << '\n';
  }
  if (!out.good()) throw ResultsError("results: write to '" + path + "' failed");
}

ResultsFile read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResultsError("results: cannot open '" + path + "'");

  ResultsFile file;
  file.workers = 0;
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    throw ResultsError("results: '" + path + "' is not a results file");
  }

  bool have_config = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.starts_with("# config ")) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line.substr(9));
        file.config.process = j.at("process").get<std::string>();
        file.config.k = j.at("k").get<int>();
        file.config.slope = j.at("slope").get<double>();
        file.config.metric = j.at("metric").get<std::string>();
        file.config.grid = j.at("grid").get<bool>();
        file.config.n_min = j.at("nmin").get<std::int64_t>();
        file.config.n_max = j.at("nmax").get<std::int64_t>();
        file.config.checkpoint_count = j.at("checkpoints").get<int>();
        for (const auto& r : j.at("runs")) {
          StreamRun run;
          run.seed = r.at("seed").get<std::uint64_t>();
          run.stream_offset = r.at("stream_offset").get<std::uint64_t>();
          run.samples = r.at("samples").get<std::int64_t>();
          file.runs.push_back(run);
        }
      } catch (const nlohmann::json::exception& e) {
        throw ResultsError(std::string("results: bad config header: ") + e.what());
      }
      have_config = true;
      continue;
    }
    if (line.starts_with("# run ")) {
      std::istringstream is(line.substr(6));
      std::string tok;
      while (is >> tok) {
        if (tok.starts_with("workers=")) {
          file.workers = parse_int<int>(std::string_view(tok).substr(8), "workers");
        } else if (tok.starts_with("wall_seconds=")) {
          file.wall_seconds =
              parse_double(std::string_view(tok).substr(13), "wall_seconds");
        }
      }
      continue;
    }
    if (line.starts_with("#")) continue;

    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string tok;
    while (is >> tok) toks.push_back(tok);
    if (toks.size() != 6) {
      throw ResultsError("results: malformed data row '" + line + "'");
    }
    CheckpointRow row;
    row.n = parse_int<std::int64_t>(toks[0], "n");
    const auto count = parse_int<std::uint64_t>(toks[1], "count");
    row.acc = MomentAccumulator::from_raw(count, parse_double(toks[2], "mean"),
                                          parse_double(toks[3], "M2"),
                                          parse_double(toks[4], "M3"),
                                          parse_double(toks[5], "M4"));
    file.rows.push_back(row);
  }

  if (!have_config) throw ResultsError("results: missing config header");
  if (!file.runs.empty()) {
    file.config.seed = file.runs.front().seed;
    file.config.stream_offset = file.runs.front().stream_offset;
    file.config.samples = file.total_samples();
  }
  file.check();
  try {
    file.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ResultsError(std::string("results: invalid config: ") + e.what());
  }
  return file;
}

ResultsFile merge_results(std::span<const ResultsFile> files) {
  if (files.empty()) {
    throw IncompatibleResultsError("merge: no input files");
  }
  ResultsFile merged = files.front();
  for (std::size_t i = 1; i < files.size(); ++i) {
    const ResultsFile& f = files[i];
    if (!compatible(merged.config, f.config)) {
      throw IncompatibleResultsError("merge: incompatible configurations");
    }
    if (f.rows.size() != merged.rows.size()) {
      throw IncompatibleResultsError("merge: row counts differ");
    }
    merged.runs.insert(merged.runs.end(), f.runs.begin(), f.runs.end());
    for (std::size_t r = 0; r < merged.rows.size(); ++r) {
      merged.rows[r].acc = merge(merged.rows[r].acc, f.rows[r].acc);
    }
  }
  check_disjoint(merged.runs, "merge");
  std::sort(merged.runs.begin(), merged.runs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.seed, a.stream_offset) < std::tie(b.seed, b.stream_offset);
  });
  merged.config.seed = merged.runs.front().seed;
  merged.config.stream_offset = merged.runs.front().stream_offset;
  merged.config.samples = merged.total_samples();
  merged.workers = 0;
  merged.wall_seconds = 0.0;
  merged.check();
  return merged;
}

std::string stable_bytes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResultsError("results: cannot open '" + path + "'");
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("# run ")) continue;
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace hammersley
