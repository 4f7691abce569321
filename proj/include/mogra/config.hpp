#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mogra/aggregate.hpp"
#include "mogra/optimizer.hpp"

namespace mogra {

enum class Algorithm { grpo, gdpo };

Algorithm algorithm_from_string(const std::string& s);
std::string to_string(Algorithm a);

// Fully-resolved settings for one training run. The seed is deliberately an
// optional with no default: every run must state one, so every reported
// number is reproducible.
struct RunConfig {
  std::string task_file;
  std::string out_dir;
  Algorithm algorithm = Algorithm::grpo;
  AggregatorKind aggregation = AggregatorKind::geometric_mean;
  bool sigmoid_align = true;
  int group_size = 4;
  int rollout_batch = 32;  // groups sampled per step
  int epochs = 2;          // optimization epochs per rollout
  int minibatches = 1;     // mini-batches per epoch
  int max_steps = 300;
  std::optional<std::uint64_t> seed;
  double learning_rate = 1e-2;
  double clip_eps = 0.2;
  double kl_initial = 0.05;
  double kl_target = 1.0;
  double kl_adapt_rate = 0.1;
  double eps_grp = 1e-8;
  double eps_bn = 1e-8;
  double lse_k = 1.0;
  double steepness_proportionality = 1.0;
  int beam_width = 20;
  int policy_order = 2;
  RatioMode ratio_mode = RatioMode::token_level;
  bool ssor_gated = true;

  void validate() const;

  // Deterministic key=value rendering of every field, written next to the
  // logs of each run.
  std::string echo() const;

  // The GDPO aggregation mode implied by `aggregation`: arithmetic_mean
  // selects the sum + batch-normalization route, lse_softmin the soft-min
  // route. geometric_mean is rejected (undefined on signed advantages).
  AdvantageMode gdpo_mode() const;
};

}  // namespace mogra
