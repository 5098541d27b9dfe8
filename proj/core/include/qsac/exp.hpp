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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qsac/sac.hpp"

namespace qsac::exp {

/// Policy step-sizes swept by default.
inline const std::vector<double> kDefaultLearningRates = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4};
inline constexpr double kSmoothingWeight = 0.9;
inline constexpr int kTrailingEpisodes = 10;
inline constexpr const char* kWorkersEnv = "QSAC_WORKERS";

struct RunConfig {
  AgentConfig agent;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string label = "run";

  bool operator==(const RunConfig&) const = default;
};

/// 16 hex digits identifying the agent configuration (seed, output
/// directory and label excluded).
std::string config_hash(const AgentConfig& config);

/// Flat key=value text, one pair per line, keys in a fixed order.
std::string serialize_config(const RunConfig& config);

/// Sets one key on the config. Throws std::invalid_argument on an unknown
/// key or unparsable value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Parses key=value text. Blank lines and '#' comments are skipped; keys that
/// only appear in run metadata (hash, version, timing) are ignored.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

struct RunResult {
  std::vector<EpisodeRecord> records;
  std::filesystem::path csv_path;
  std::filesystem::path meta_path;
  double wall_seconds = 0.0;
};

/// Trains one agent and writes <out_dir>/<label>-seed<seed>.csv plus a
/// matching .meta file.
RunResult run_experiment(const RunConfig& config);

/// Episode CSV: "# config_hash=<hash>", header "episode,step,return", rows.
std::string episode_csv(const std::vector<EpisodeRecord>& records, const std::string& hash);

struct EpisodeFile {
  std::string config_hash;
  std::vector<EpisodeRecord> records;
};

EpisodeFile read_episode_csv(const std::filesystem::path& path);

double trailing_mean(const std::vector<EpisodeRecord>& records, int k = kTrailingEpisodes);

/// y_0 = x_0, y_t = weight * y_{t-1} + (1 - weight) * x_t.
std::vector<double> smooth_curve(const std::vector<double>& returns, double weight);

struct CurveSummary {
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::size_t runs = 0;
  std::string config_hash;

  /// Standard error is undefined for a single run and reported as 0.
  bool stderr_defined() const { return runs > 1; }
};

/// Per-episode mean and sample standard error across runs. Throws when the
/// runs have different lengths or config hashes.
CurveSummary aggregate(const std::vector<EpisodeFile>& runs);

/// Summary CSV: "# config_hash=<hash>", header "episode,mean,stderr". A
/// single-run summary gains a trailing "stderr_undefined" column set to 1.
std::string summary_csv(const CurveSummary& summary);
CurveSummary read_summary_csv(const std::filesystem::path& path);

CurveSummary aggregate_runs(const std::vector<std::filesystem::path>& run_csvs,
                            const std::filesystem::path& out);

using Runner = std::function<std::vector<EpisodeRecord>(const RunConfig&)>;

struct GridCell {
  double lr = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
  int runs_ok = 0;
  bool failed = false;
  std::string error;
  std::vector<double> trailing;
};

struct GridResult {
  double best_lr = 0.0;
  std::vector<GridCell> cells;
};

/// Worker count from QSAC_WORKERS, at least 1.
int worker_count();

/// Label used for grid cells: "<base>-lr<lr>".
std::string cell_label(const std::string& base, double lr);

/// Runs every (lr, seed) pair, averages trailing_mean per lr, and picks the
/// highest mean (ties go to the smaller lr). A cell with any run error or a
/// non-finite mean is marked failed and never chosen. When out_csv is
/// non-empty the table "lr,mean,stderr,runs,status" is written there.
GridResult grid_search(const RunConfig& base, const std::vector<double>& lrs,
                       const std::vector<std::uint64_t>& seeds, const Runner& runner,
                       int workers = 1, const std::filesystem::path& out_csv = {});

/// Runner that calls run_experiment with the cell's label.
Runner file_runner();

struct PlotFrame {
  double width = 720.0;
  double height = 440.0;
  double margin_left = 80.0;
  double margin_right = 160.0;
  double margin_top = 30.0;
  double margin_bottom = 60.0;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double x_px(double x) const;
  double y_px(double y) const;
  /// Pixels per return unit along y.
  double y_scale() const;
};

/// Frame covering every smoothed mean +/- stderr band.
PlotFrame fit_frame(const std::vector<CurveSummary>& summaries, double smoothing_weight);

/// Smoothed mean lines with +/- one standard error bands; x is the
/// environment step at the end of each episode.
std::string render_svg(const std::vector<CurveSummary>& summaries,
                       const std::vector<std::string>& labels,
                       double smoothing_weight = kSmoothingWeight);

void plot_svg(const std::vector<CurveSummary>& summaries, const std::vector<std::string>& labels,
              const std::filesystem::path& out, double smoothing_weight = kSmoothingWeight);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace qsac::exp
