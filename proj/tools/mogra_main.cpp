// Command-line front end: train / ablate / pareto / eval.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mogra/config.hpp"
#include "mogra/train.hpp"
#include "mogra/util.hpp"

namespace {

void add_run_options(CLI::App& cmd, mogra::RunConfig& cfg, std::string& algorithm,
                     std::string& aggregation, std::string& ratio) {
  cmd.add_option("--task", cfg.task_file, "task file (see tasks/)");
  cmd.add_option("--out", cfg.out_dir, "output directory");
  cmd.add_option("--algorithm", algorithm, "grpo | gdpo");
  cmd.add_option("--aggregation", aggregation, "arithmetic_mean | geometric_mean | lse_softmin");
  cmd.add_flag("--sigmoid-align,!--no-sigmoid-align", cfg.sigmoid_align,
               "shape rewards through the aligned sigmoids (default) or train on raw "
               "direction-oriented values");
  cmd.add_option("--group-size", cfg.group_size, "candidates per group (G)");
  cmd.add_option("--rollout-batch", cfg.rollout_batch, "groups sampled per step");
  cmd.add_option("--epochs", cfg.epochs, "optimization epochs per rollout");
  cmd.add_option("--minibatches", cfg.minibatches, "mini-batches per epoch");
  cmd.add_option("--max-steps", cfg.max_steps, "training steps");
  cmd.add_option("--learning-rate", cfg.learning_rate, "logits descent step size");
  cmd.add_option("--clip-eps", cfg.clip_eps, "surrogate clip range");
  cmd.add_option("--kl-initial", cfg.kl_initial, "initial KL coefficient");
  cmd.add_option("--kl-target", cfg.kl_target, "KL controller target");
  cmd.add_option("--kl-adapt-rate", cfg.kl_adapt_rate, "KL controller adaptation rate");
  cmd.add_option("--eps-grp", cfg.eps_grp, "group normalization epsilon");
  cmd.add_option("--eps-bn", cfg.eps_bn, "batch normalization epsilon");
  cmd.add_option("--lse-k", cfg.lse_k, "soft-min temperature");
  cmd.add_option("--steepness", cfg.steepness_proportionality, "sigmoid steepness proportionality");
  cmd.add_option("--beam-width", cfg.beam_width, "evaluation beam width");
  cmd.add_option("--policy-order", cfg.policy_order, "context order of the policy (1 or 2)");
  cmd.add_option("--ratio", ratio, "token | sequence importance ratios");
  cmd.add_flag("--ssor-ungated", "score SSOR on thresholds alone, without the SOR gate");
}

void finish_run_config(const CLI::App& cmd, mogra::RunConfig& cfg, const std::string& algorithm,
                       const std::string& aggregation, const std::string& ratio) {
  cfg.algorithm = mogra::algorithm_from_string(algorithm);
  cfg.aggregation = mogra::aggregator_from_string(aggregation);
  if (ratio == "token") {
    cfg.ratio_mode = mogra::RatioMode::token_level;
  } else if (ratio == "sequence") {
    cfg.ratio_mode = mogra::RatioMode::sequence_level;
  } else {
    throw CLI::ValidationError("--ratio must be token or sequence");
  }
  cfg.ssor_gated = cmd.count("--ssor-ungated") == 0;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) seeds.push_back(std::stoull(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return seeds;
}

void print_metrics(const mogra::MetricsReport& m) {
  std::cout << "sor=" << mogra::format_double(m.sor) << " ssor=" << mogra::format_double(m.ssor)
            << " sim=" << mogra::format_double(m.sim) << " ri=" << mogra::format_double(m.ri)
            << " n=" << m.n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-objective group-relative sequence optimization"};
  app.require_subcommand(1);

  mogra::RunConfig cfg;
  std::string algorithm = "grpo";
  std::string aggregation = "geometric_mean";
  std::string ratio = "token";
  std::uint64_t seed = 0;

  auto* train = app.add_subcommand("train", "run one training configuration");
  train->set_config("--config", "", "read options from a TOML/INI file");
  add_run_options(*train, cfg, algorithm, aggregation, ratio);
  train->add_option("--seed", seed, "run seed (required; no default)")->required();
  train->callback([&] {
    finish_run_config(*train, cfg, algorithm, aggregation, ratio);
    cfg.seed = seed;
    const auto result = mogra::run_training(cfg);
    print_metrics(result.metrics);
    std::cout << "band_violation_rate=" << mogra::format_double(result.band_violation_rate)
              << " out=" << result.out_dir << "\n";
  });

  auto* ablate = app.add_subcommand("ablate", "run an ablation preset over shared seeds");
  std::string preset = "all";
  std::string seed_list = "1,2,3";
  ablate->set_config("--config", "", "read options from a TOML/INI file");
  add_run_options(*ablate, cfg, algorithm, aggregation, ratio);
  ablate->add_option("--preset", preset,
                     "grpo_am | grpo_gm | grpo_gm_sigmoid | gdpo_am | gdpo_lse | "
                     "gdpo_lse_sigmoid | all");
  ablate->add_option("--seeds", seed_list, "comma-separated seed list");
  ablate->callback([&] {
    finish_run_config(*ablate, cfg, algorithm, aggregation, ratio);
    const auto rows = mogra::run_ablation(preset, cfg, parse_seed_list(seed_list));
    for (const auto& row : rows) {
      std::cout << row.preset << " seed=" << row.seed << " ";
      print_metrics(row.metrics);
    }
    std::cout << "summary: " << cfg.out_dir << "/summary.csv\n";
  });

  auto* pareto = app.add_subcommand("pareto", "aggregation geometry study on shipped fronts");
  std::string front = "all";
  std::string pareto_out;
  pareto->add_option("--front", front, "nonconvex_q30 | nonconvex_q50 | nonconvex_q70 | linear | all");
  pareto->add_option("--out", pareto_out, "output directory")->required();
  pareto->callback([&] { mogra::run_pareto_analysis(front, pareto_out); });

  auto* eval = app.add_subcommand("eval", "evaluate a saved checkpoint on a task file");
  std::string checkpoint, eval_task, eval_out;
  int beam_width = 20;
  bool ungated = false;
  eval->add_option("--checkpoint", checkpoint, "policy checkpoint file")->required();
  eval->add_option("--task", eval_task, "task file")->required();
  eval->add_option("--beam-width", beam_width, "beam width");
  eval->add_option("--out", eval_out, "optional output directory");
  eval->add_flag("--ssor-ungated", ungated, "score SSOR on thresholds alone");
  eval->callback([&] {
    const auto result = mogra::evaluate_policy(checkpoint, eval_task, beam_width, eval_out, !ungated);
    print_metrics(result.metrics);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
