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

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsac/exp.hpp"
#include "qsac/version.hpp"

namespace {

using qsac::exp::RunConfig;

struct RunFlags {
  std::string config_file;
  std::string agent;
  std::optional<int> layers;
  std::optional<double> policy_lr;
  std::optional<double> critic_lr;
  std::optional<long long> steps;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string label;
};

qsac::PolicyKind agent_kind(const std::string& name) {
  if (name == "sac") return qsac::PolicyKind::Classical;
  if (name == "qsac-vanilla") return qsac::PolicyKind::VanillaVqc;
  if (name == "qsac-reuploading") return qsac::PolicyKind::ReuploadingVqc;
  throw std::invalid_argument("unknown agent '" + name + "'");
}

std::string agent_name(qsac::PolicyKind kind) {
  switch (kind) {
    case qsac::PolicyKind::Classical: return "sac";
    case qsac::PolicyKind::VanillaVqc: return "qsac-vanilla";
    case qsac::PolicyKind::ReuploadingVqc: return "qsac-reuploading";
  }
  return "run";
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_file, "key=value config file; flags override it")
      ->check(CLI::ExistingFile);
  cmd->add_option("--agent", f.agent, "sac | qsac-vanilla | qsac-reuploading")
      ->check(CLI::IsMember({"sac", "qsac-vanilla", "qsac-reuploading"}));
  cmd->add_option("--layers", f.layers, "circuit layers")->check(CLI::PositiveNumber);
  cmd->add_option("--policy-lr", f.policy_lr, "policy Adam step-size");
  cmd->add_option("--critic-lr", f.critic_lr, "critic Adam step-size");
  cmd->add_option("--steps", f.steps, "environment steps")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f.seed, "run seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--label", f.label, "file name prefix (default derived from agent)");
}

RunConfig resolve(const RunFlags& f) {
  RunConfig rc;
  bool label_from_file = false;
  if (!f.config_file.empty()) {
    rc = qsac::exp::load_config(f.config_file);
    label_from_file = true;
  }
  if (!f.agent.empty()) rc.agent.policy_kind = agent_kind(f.agent);
  if (f.layers) rc.agent.n_layers = *f.layers;
  if (f.policy_lr) rc.agent.policy_lr = *f.policy_lr;
  if (f.critic_lr) rc.agent.critic_lr = *f.critic_lr;
  if (f.steps) rc.agent.total_steps = *f.steps;
  if (f.seed) rc.seed = *f.seed;
  if (!f.out.empty()) rc.out_dir = f.out;
  if (!f.label.empty()) {
    rc.label = f.label;
  } else if (!label_from_file) {
    rc.label = agent_name(rc.agent.policy_kind);
    if (rc.agent.policy_kind != qsac::PolicyKind::Classical) {
      rc.label += "-n" + std::to_string(rc.agent.n_layers);
    }
  }
  rc.agent.validate();
  return rc;
}

int cmd_train(const RunFlags& f) {
  const RunConfig rc = resolve(f);
  const qsac::exp::RunResult r = qsac::exp::run_experiment(rc);
  std::cout << "wrote " << r.csv_path.string() << " (" << r.records.size() << " episodes, "
            << qsac::exp::format_double(r.wall_seconds) << " s)\n";
  if (static_cast<int>(r.records.size()) >= qsac::exp::kTrailingEpisodes) {
    std::cout << "trailing mean " << qsac::exp::format_double(qsac::exp::trailing_mean(r.records))
              << '\n';
  }
  return 0;
}

int cmd_grid(const RunFlags& f, const std::vector<double>& lrs,
             const std::vector<std::uint64_t>& seeds) {
  const RunConfig base = resolve(f);
  const int workers = qsac::exp::worker_count();
  const std::filesystem::path table =
      std::filesystem::path(base.out_dir) / (base.label + "-grid.csv");
  const qsac::exp::GridResult g =
      qsac::exp::grid_search(base, lrs, seeds, qsac::exp::file_runner(), workers, table);
  for (const auto& cell : g.cells) {
    std::cout << "lr " << qsac::exp::format_double(cell.lr) << ": ";
    if (cell.failed) {
      std::cout << "failed (" << cell.error << ")\n";
    } else {
      std::cout << qsac::exp::format_double(cell.mean) << " +/- "
                << qsac::exp::format_double(cell.stderr_) << '\n';
    }
  }

  std::vector<std::filesystem::path> best_runs;
  const std::string best_label = qsac::exp::cell_label(base.label, g.best_lr);
  for (std::uint64_t seed : seeds) {
    best_runs.push_back(std::filesystem::path(base.out_dir) /
                        (best_label + "-seed" + std::to_string(seed) + ".csv"));
  }
  const std::filesystem::path summary =
      std::filesystem::path(base.out_dir) / (base.label + "-best.csv");
  qsac::exp::aggregate_runs(best_runs, summary);
  std::cout << "best lr " << qsac::exp::format_double(g.best_lr) << "\nwrote " << table.string()
            << "\nwrote " << summary.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft actor-critic with classical and variational-circuit policies"};
  app.set_version_flag("--version",
                       std::string(qsac::kVersion) + "+" + std::string(qsac::kGitRevision));
  app.require_subcommand(1);

  RunFlags train_flags;
  CLI::App* train = app.add_subcommand("train", "train one agent and write its episode CSV");
  add_run_flags(train, train_flags);

  RunFlags grid_flags;
  std::vector<double> lrs = qsac::exp::kDefaultLearningRates;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  CLI::App* grid = app.add_subcommand("grid", "sweep policy step-sizes over seeds");
  add_run_flags(grid, grid_flags);
  grid->add_option("--lrs", lrs, "policy step-sizes")->delimiter(',');
  grid->add_option("--seeds", seeds, "seeds per step-size")->delimiter(',');

  std::vector<std::string> runs;
  std::string aggregate_out;
  CLI::App* aggregate = app.add_subcommand("aggregate", "mean and standard error across runs");
  aggregate->add_option("--runs", runs, "episode CSVs")->required()->check(CLI::ExistingFile);
  aggregate->add_option("--out", aggregate_out, "summary CSV")->required();

  std::vector<std::string> summaries;
  std::vector<std::string> labels;
  std::string plot_out;
  double smoothing = qsac::exp::kSmoothingWeight;
  CLI::App* plot = app.add_subcommand("plot", "render summaries as an SVG line chart");
  plot->add_option("--summaries", summaries, "summary CSVs")
      ->required()
      ->check(CLI::ExistingFile);
  plot->add_option("--labels", labels, "one label per summary")->required()->delimiter(',');
  plot->add_option("--out", plot_out, "SVG file")->required();
  plot->add_option("--smoothing", smoothing, "exponential smoothing weight in [0, 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return cmd_train(train_flags);
    if (*grid) return cmd_grid(grid_flags, lrs, seeds);
    if (*aggregate) {
      std::vector<std::filesystem::path> paths(runs.begin(), runs.end());
      const qsac::exp::CurveSummary s = qsac::exp::aggregate_runs(paths, aggregate_out);
      if (!s.stderr_defined()) {
        std::cerr << "warning: single run, stderr reported as 0\n";
      }
      std::cout << "wrote " << aggregate_out << " (" << s.runs << " runs, " << s.mean.size()
                << " episodes)\n";
      return 0;
    }
    if (*plot) {
      std::vector<qsac::exp::CurveSummary> curves;
      for (const auto& p : summaries) curves.push_back(qsac::exp::read_summary_csv(p));
      qsac::exp::plot_svg(curves, labels, plot_out, smoothing);
      std::cout << "wrote " << plot_out << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
