// Copyright 2026 The qsac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsac/exp.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qsac/pendulum.hpp"
#include "qsac/version.hpp"

namespace qsac::exp {

namespace {

constexpr const char* kHashPrefix = "# config_hash=";

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("cannot parse '" + v + "' as a number for " + key);
  }
  return out;
}

template <typename Int>
Int parse_int(const std::string& v, const std::string& key) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("cannot parse '" + v + "' as an integer for " + key);
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string agent_settings(const AgentConfig& a) {
  std::ostringstream out;
  out << "policy_kind=" << to_string(a.policy_kind) << '\n'
      << "n_layers=" << a.n_layers << '\n'
      << "gamma=" << format_double(a.gamma) << '\n'
      << "alpha=" << format_double(a.alpha) << '\n'
      << "rho=" << format_double(a.rho) << '\n'
      << "critic_lr=" << format_double(a.critic_lr) << '\n'
      << "policy_lr=" << format_double(a.policy_lr) << '\n'
      << "batch_size=" << a.batch_size << '\n'
      << "replay_capacity=" << a.replay_capacity << '\n'
      << "total_steps=" << a.total_steps << '\n'
      << "warmup_steps=" << a.warmup_steps << '\n'
      << "updates_per_step=" << a.updates_per_step << '\n';
  return out.str();
}

const std::set<std::string>& metadata_only_keys() {
  static const std::set<std::string> keys = {"config_hash", "code_version",
                                             "wall_clock_seconds", "unverified_settings",
                                             "episodes"};
  return keys;
}

// Reads the leading hash comment, leaving the stream at the header row.
std::string read_hash_line(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kHashPrefix, 0) != 0) {
    throw std::runtime_error(path.string() + ": missing config_hash comment line");
  }
  return trim(line.substr(std::string(kHashPrefix).size()));
}

double sorted_sum(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double total = 0.0;
  for (double x : v) total += x;
  return total;
}

// Mean and sample standard error, independent of input order.
std::pair<double, double> mean_stderr(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  const double mean = sorted_sum(values) / n;
  if (values.size() < 2) return {mean, 0.0};
  std::vector<double> sq;
  sq.reserve(values.size());
  for (double v : values) sq.push_back((v - mean) * (v - mean));
  const double var = sorted_sum(std::move(sq)) / (n - 1.0);
  return {mean, std::sqrt(var) / std::sqrt(n)};
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

double episode_step(std::size_t episode) {
  return static_cast<double>((episode + 1) * pendulum::kEpisodeLength);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string config_hash(const AgentConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : agent_settings(config)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  const auto res = std::to_chars(buf, buf + 16, h, 16);
  std::string hex(buf, res.ptr);
  return std::string(16 - hex.size(), '0') + hex;
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << agent_settings(config.agent) << "seed=" << config.seed << '\n'
      << "out_dir=" << config.out_dir << '\n'
      << "label=" << config.label << '\n';
  return out.str();
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  AgentConfig& a = config.agent;
  if (key == "policy_kind") a.policy_kind = policy_kind_from_string(value);
  else if (key == "n_layers") a.n_layers = parse_int<int>(value, key);
  else if (key == "gamma") a.gamma = parse_double(value, key);
  else if (key == "alpha") a.alpha = parse_double(value, key);
  else if (key == "rho") a.rho = parse_double(value, key);
  else if (key == "critic_lr") a.critic_lr = parse_double(value, key);
  else if (key == "policy_lr") a.policy_lr = parse_double(value, key);
  else if (key == "batch_size") a.batch_size = parse_int<int>(value, key);
  else if (key == "replay_capacity") a.replay_capacity = parse_int<int>(value, key);
  else if (key == "total_steps") a.total_steps = parse_int<long long>(value, key);
  else if (key == "warmup_steps") a.warmup_steps = parse_int<long long>(value, key);
  else if (key == "updates_per_step") a.updates_per_step = parse_int<int>(value, key);
  else if (key == "seed") config.seed = parse_int<std::uint64_t>(value, key);
  else if (key == "out_dir") config.out_dir = value;
  else if (key == "label") config.label = value;
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    // Values keep interior whitespace; only the line ending is dropped.
    std::string value = line.substr(line.find('=') + 1);
    if (!value.empty() && value.back() == '\r') value.pop_back();
    if (metadata_only_keys().count(key)) continue;
    if (key != "out_dir" && key != "label") value = trim(value);
    apply_setting(config, key, value);
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text(path));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " +
                               ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string episode_csv(const std::vector<EpisodeRecord>& records, const std::string& hash) {
  std::ostringstream out;
  out << kHashPrefix << hash << '\n' << "episode,step,return\n";
  for (const EpisodeRecord& r : records) {
    out << r.episode << ',' << r.step << ',' << format_double(r.ret) << '\n';
  }
  return out.str();
}

EpisodeFile read_episode_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  EpisodeFile file;
  file.config_hash = read_hash_line(in, path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "episode,step,return") {
    throw std::runtime_error(path.string() + ": expected header episode,step,return");
  }
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cols = split(trim(line), ',');
    if (cols.size() != 3) throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
    file.records.push_back({parse_int<int>(cols[0], "episode"),
                            parse_int<long long>(cols[1], "step"),
                            parse_double(cols[2], "return")});
  }
  return file;
}

RunResult run_experiment(const RunConfig& config) {
  config.agent.validate();
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.records = train(config.agent, config.seed);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string hash = config_hash(config.agent);
  const std::filesystem::path dir(config.out_dir);
  const std::string stem = config.label + "-seed" + std::to_string(config.seed);
  result.csv_path = dir / (stem + ".csv");
  result.meta_path = dir / (stem + ".meta");
  write_text(result.csv_path, episode_csv(result.records, hash));

  std::ostringstream meta;
  meta << serialize_config(config) << "config_hash=" << hash << '\n'
       << "code_version=" << kVersion << '+' << kGitRevision << '\n'
       << "episodes=" << result.records.size() << '\n'
       << "wall_clock_seconds=" << format_double(result.wall_seconds) << '\n'
       << "unverified_settings=warmup_steps,updates_per_step\n";
  write_text(result.meta_path, meta.str());
  return result;
}

double trailing_mean(const std::vector<EpisodeRecord>& records, int k) {
  if (k < 1) throw std::invalid_argument("trailing window must be positive");
  if (records.size() < static_cast<std::size_t>(k)) {
    throw std::invalid_argument("trailing mean over " + std::to_string(k) + " episodes needs " +
                                "at least that many records, got " +
                                std::to_string(records.size()));
  }
  double total = 0.0;
  for (auto it = records.end() - k; it != records.end(); ++it) total += it->ret;
  return total / k;
}

std::vector<double> smooth_curve(const std::vector<double>& returns, double weight) {
  if (returns.empty()) throw std::invalid_argument("cannot smooth an empty series");
  if (!(weight >= 0.0 && weight < 1.0)) throw std::invalid_argument("weight must lie in [0, 1)");
  std::vector<double> out(returns.size());
  out[0] = returns[0];
  for (std::size_t t = 1; t < returns.size(); ++t) {
    out[t] = weight * out[t - 1] + (1.0 - weight) * returns[t];
  }
  return out;
}

CurveSummary aggregate(const std::vector<EpisodeFile>& runs) {
  if (runs.empty()) throw std::invalid_argument("no runs to aggregate");
  const std::size_t length = runs.front().records.size();
  for (const EpisodeFile& r : runs) {
    if (r.records.size() != length) {
      throw std::invalid_argument("runs have mismatched episode counts (" +
                                  std::to_string(length) + " vs " +
                                  std::to_string(r.records.size()) + ")");
    }
    if (r.config_hash != runs.front().config_hash) {
      throw std::invalid_argument("runs have different config hashes (" +
                                  runs.front().config_hash + " vs " + r.config_hash + ")");
    }
  }
  CurveSummary s;
  s.runs = runs.size();
  s.config_hash = runs.front().config_hash;
  s.mean.resize(length);
  s.stderr_.resize(length);
  std::vector<double> column(runs.size());
  for (std::size_t e = 0; e < length; ++e) {
    for (std::size_t r = 0; r < runs.size(); ++r) column[r] = runs[r].records[e].ret;
    std::tie(s.mean[e], s.stderr_[e]) = mean_stderr(column);
  }
  return s;
}

std::string summary_csv(const CurveSummary& summary) {
  std::ostringstream out;
  const bool flag = !summary.stderr_defined();
  out << kHashPrefix << summary.config_hash << '\n'
      << "episode,mean,stderr" << (flag ? ",stderr_undefined" : "") << '\n';
  for (std::size_t e = 0; e < summary.mean.size(); ++e) {
    out << e << ',' << format_double(summary.mean[e]) << ',' << format_double(summary.stderr_[e])
        << (flag ? ",1" : "") << '\n';
  }
  return out.str();
}

CurveSummary read_summary_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  CurveSummary s;
  s.config_hash = read_hash_line(in, path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header");
  const std::string header = trim(line);
  const bool flagged = header == "episode,mean,stderr,stderr_undefined";
  if (!flagged && header != "episode,mean,stderr") {
    throw std::runtime_error(path.string() + ": unexpected header '" + header + "'");
  }
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cols = split(trim(line), ',');
    if (cols.size() != (flagged ? 4U : 3U)) {
      throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
    }
    s.mean.push_back(parse_double(cols[1], "mean"));
    s.stderr_.push_back(parse_double(cols[2], "stderr"));
  }
  // Run count is not stored; only whether stderr was defined.
  s.runs = flagged ? 1 : 2;
  return s;
}

CurveSummary aggregate_runs(const std::vector<std::filesystem::path>& run_csvs,
                            const std::filesystem::path& out) {
  std::vector<EpisodeFile> runs;
  runs.reserve(run_csvs.size());
  for (const auto& p : run_csvs) runs.push_back(read_episode_csv(p));
  CurveSummary s = aggregate(runs);
  write_text(out, summary_csv(s));
  return s;
}

int worker_count() {
  const char* env = std::getenv(kWorkersEnv);
  if (!env || !*env) return 1;
  int n = 1;
  const std::string v(env);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || ptr != v.data() + v.size() || n < 1) return 1;
  return n;
}

std::string cell_label(const std::string& base, double lr) {
  return base + "-lr" + format_double(lr);
}

GridResult grid_search(const RunConfig& base, const std::vector<double>& lrs,
                       const std::vector<std::uint64_t>& seeds, const Runner& runner,
                       int workers, const std::filesystem::path& out_csv) {
  if (lrs.empty()) throw std::invalid_argument("grid search needs at least one step-size");
  if (seeds.empty()) throw std::invalid_argument("grid search needs at least one seed");

  struct Task {
    std::size_t cell = 0;
    RunConfig config;
    double trailing = std::numeric_limits<double>::quiet_NaN();
    std::string error;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < lrs.size(); ++c) {
    for (std::uint64_t seed : seeds) {
      RunConfig rc = base;
      rc.agent.policy_lr = lrs[c];
      rc.seed = seed;
      rc.label = cell_label(base.label, lrs[c]);
      Task task;
      task.cell = c;
      task.config = std::move(rc);
      tasks.push_back(std::move(task));
    }
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      Task& task = tasks[i];
      try {
        task.trailing = trailing_mean(runner(task.config));
      } catch (const std::exception& e) {
        task.error = e.what();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  GridResult result;
  result.cells.resize(lrs.size());
  for (std::size_t c = 0; c < lrs.size(); ++c) result.cells[c].lr = lrs[c];
  for (const Task& task : tasks) {
    GridCell& cell = result.cells[task.cell];
    if (!task.error.empty()) {
      cell.failed = true;
      if (cell.error.empty()) cell.error = task.error;
      continue;
    }
    cell.trailing.push_back(task.trailing);
    ++cell.runs_ok;
  }

  bool have_best = false;
  double best_mean = 0.0;
  for (GridCell& cell : result.cells) {
    if (!cell.failed) {
      std::tie(cell.mean, cell.stderr_) = mean_stderr(cell.trailing);
      if (!std::isfinite(cell.mean)) {
        cell.failed = true;
        cell.error = "non-finite trailing return";
      }
    }
    if (cell.failed) continue;
    if (!have_best || cell.mean > best_mean ||
        (cell.mean == best_mean && cell.lr < result.best_lr)) {
      have_best = true;
      best_mean = cell.mean;
      result.best_lr = cell.lr;
    }
  }
  if (!have_best) throw std::runtime_error("every grid cell failed");

  if (!out_csv.empty()) {
    std::ostringstream table;
    table << kHashPrefix << config_hash(base.agent) << '\n' << "lr,mean,stderr,runs,status\n";
    for (const GridCell& cell : result.cells) {
      table << format_double(cell.lr) << ',' << (cell.failed ? "nan" : format_double(cell.mean))
            << ',' << (cell.failed ? "nan" : format_double(cell.stderr_)) << ',' << cell.runs_ok
            << ',' << (cell.failed ? "failed" : (cell.lr == result.best_lr ? "best" : "ok"))
            << '\n';
    }
    write_text(out_csv, table.str());
  }
  return result;
}

Runner file_runner() {
  return [](const RunConfig& config) { return run_experiment(config).records; };
}

double PlotFrame::x_px(double x) const {
  const double w = width - margin_left - margin_right;
  return margin_left + (x - x_min) / (x_max - x_min) * w;
}

double PlotFrame::y_px(double y) const {
  return margin_top + (y_max - y) * y_scale();
}

double PlotFrame::y_scale() const {
  return (height - margin_top - margin_bottom) / (y_max - y_min);
}

PlotFrame fit_frame(const std::vector<CurveSummary>& summaries, double smoothing_weight) {
  PlotFrame frame;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t longest = 0;
  for (const CurveSummary& s : summaries) {
    if (s.mean.empty()) continue;
    const std::vector<double> sm = smooth_curve(s.mean, smoothing_weight);
    for (std::size_t i = 0; i < sm.size(); ++i) {
      lo = std::min(lo, sm[i] - s.stderr_[i]);
      hi = std::max(hi, sm[i] + s.stderr_[i]);
    }
    longest = std::max(longest, s.mean.size());
  }
  if (longest == 0) throw std::invalid_argument("nothing to plot");
  if (hi - lo < 1e-9) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  frame.y_min = lo - pad;
  frame.y_max = hi + pad;
  frame.x_min = 0.0;
  frame.x_max = episode_step(longest - 1);
  return frame;
}

std::string render_svg(const std::vector<CurveSummary>& summaries,
                       const std::vector<std::string>& labels, double smoothing_weight) {
  if (summaries.empty()) throw std::invalid_argument("plot needs at least one summary");
  if (labels.size() != summaries.size()) {
    throw std::invalid_argument("plot needs one label per summary");
  }
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  const PlotFrame f = fit_frame(summaries, smoothing_weight);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(f.width) << "\" height=\""
      << px(f.height) << "\" viewBox=\"0 0 " << px(f.width) << ' ' << px(f.height) << "\">\n"
      << "<!-- smoothing_weight=" << format_double(smoothing_weight) << " -->\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << px(f.width) << "\" height=\"" << px(f.height)
      << "\" fill=\"white\"/>\n";

  const double left = f.margin_left, right = f.width - f.margin_right;
  const double top = f.margin_top, bottom = f.height - f.margin_bottom;
  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" font-family=\"sans-serif\" "
         "font-size=\"11\">\n"
      << "<line x1=\"" << px(left) << "\" y1=\"" << px(bottom) << "\" x2=\"" << px(right)
      << "\" y2=\"" << px(bottom) << "\"/>\n"
      << "<line x1=\"" << px(left) << "\" y1=\"" << px(top) << "\" x2=\"" << px(left)
      << "\" y2=\"" << px(bottom) << "\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = f.x_min + (f.x_max - f.x_min) * i / kTicks;
    const double yv = f.y_min + (f.y_max - f.y_min) * i / kTicks;
    svg << "<line x1=\"" << px(f.x_px(xv)) << "\" y1=\"" << px(bottom) << "\" x2=\""
        << px(f.x_px(xv)) << "\" y2=\"" << px(bottom + 4) << "\"/>\n"
        << "<text x=\"" << px(f.x_px(xv)) << "\" y=\"" << px(bottom + 16)
        << "\" stroke=\"none\" text-anchor=\"middle\">" << static_cast<long long>(std::lround(xv))
        << "</text>\n"
        << "<line x1=\"" << px(left - 4) << "\" y1=\"" << px(f.y_px(yv)) << "\" x2=\""
        << px(left) << "\" y2=\"" << px(f.y_px(yv)) << "\"/>\n"
        << "<text x=\"" << px(left - 6) << "\" y=\"" << px(f.y_px(yv) + 4)
        << "\" stroke=\"none\" text-anchor=\"end\">" << static_cast<long long>(std::lround(yv))
        << "</text>\n";
  }
  svg << "<text x=\"" << px((left + right) / 2) << "\" y=\"" << px(f.height - 15)
      << "\" stroke=\"none\" text-anchor=\"middle\" font-size=\"13\">step</text>\n"
      << "<text x=\"20\" y=\"" << px((top + bottom) / 2)
      << "\" stroke=\"none\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
      << px((top + bottom) / 2) << ")\">average return</text>\n"
      << "</g>\n";

  for (std::size_t k = 0; k < summaries.size(); ++k) {
    const CurveSummary& s = summaries[k];
    if (s.mean.empty()) continue;
    const char* color = kColors[k % std::size(kColors)];
    const std::vector<double> sm = smooth_curve(s.mean, smoothing_weight);
    std::ostringstream band, line;
    for (std::size_t i = 0; i < sm.size(); ++i) {
      band << (i == 0 ? "M" : " L") << format_double(f.x_px(episode_step(i))) << ','
           << format_double(f.y_px(sm[i] + s.stderr_[i]));
    }
    for (std::size_t i = sm.size(); i-- > 0;) {
      band << " L" << format_double(f.x_px(episode_step(i))) << ','
           << format_double(f.y_px(sm[i] - s.stderr_[i]));
    }
    band << " Z";
    for (std::size_t i = 0; i < sm.size(); ++i) {
      line << (i == 0 ? "M" : " L") << format_double(f.x_px(episode_step(i))) << ','
           << format_double(f.y_px(sm[i]));
    }
    svg << "<g class=\"series\" data-label=\"" << xml_escape(labels[k])
        << "\" data-config-hash=\"" << xml_escape(s.config_hash) << "\">\n"
        << "<path class=\"band\" d=\"" << band.str() << "\" fill=\"" << color
        << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n"
        << "<path class=\"mean\" d=\"" << line.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << px(right + 12) << "\" y=\"" << px(top + 16 + 18.0 * k)
        << "\" fill=\"" << color << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(labels[k]) << "</text>\n"
        << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void plot_svg(const std::vector<CurveSummary>& summaries, const std::vector<std::string>& labels,
              const std::filesystem::path& out, double smoothing_weight) {
  write_text(out, render_svg(summaries, labels, smoothing_weight));
}

}  // namespace qsac::exp
