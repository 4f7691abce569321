#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mogra/config.hpp"
#include "mogra/metrics.hpp"
#include "mogra/taskfile.hpp"

namespace mogra {

struct TrainLogRecord {
  int step = 0;
  double loss = 0.0;
  double mean_total_reward = 0.0;
  std::vector<double> raw_means;     // task property order, valid candidates
  std::vector<double> shaped_means;  // sigmoid-shaped scores, always logged
  double mean_advantage = 0.0;
  double kl = 0.0;
  double beta = 0.0;
  double wall_ms = 0.0;
};

struct RunResult {
  MetricsReport metrics;
  std::vector<TrainLogRecord> records;
  // fraction of valid final-beam candidates with any stabilize property
  // outside its band (1.0 when a beam has no valid candidates)
  double band_violation_rate = 0.0;
  std::map<std::string, double> final_shaped_means;
  double step0_mean_reward = 0.0;
  double final_mean_reward = 0.0;
  std::size_t ri_guard_events = 0;
  std::string out_dir;
};

// Full training run: rollout loop, optimization, per-step logging, final
// beam-search evaluation with candidate selection, and artifact emission
// (config echo, train_log.csv, metrics.csv, eval_detail.csv, checkpoint).
RunResult run_training(const RunConfig& config);

// Evaluation of an existing checkpoint against a task file: beam search,
// candidate selection, metrics. Writes the same evaluation artifacts when
// out_dir is nonempty.
RunResult evaluate_policy(const std::string& checkpoint_path, const std::string& task_file,
                          int beam_width, const std::string& out_dir, bool ssor_gated = true);

// Ablation presets over (algorithm, aggregation, sigmoid alignment):
//   grpo_am, grpo_gm, grpo_gm_sigmoid, gdpo_am, gdpo_lse, gdpo_lse_sigmoid
std::vector<std::string> ablation_presets();
RunConfig preset_config(const std::string& preset, RunConfig base);

struct AblationRow {
  std::string preset;
  std::uint64_t seed = 0;
  MetricsReport metrics;
  double band_violation_rate = 0.0;
  double final_mean_reward = 0.0;
};

// Runs one preset (or "all") across the given seeds and appends rows to
// <out_dir>/summary.csv. Per-run artifacts land in <out_dir>/<preset>_s<seed>.
std::vector<AblationRow> run_ablation(const std::string& preset, const RunConfig& base,
                                      const std::vector<std::uint64_t>& seeds);

// Appendix-style aggregation geometry study: contour tables for each
// aggregator and argmax classifications for each shipped front.
void run_pareto_analysis(const std::string& front_name, const std::string& out_dir);

}  // namespace mogra
