#include "mogra/train.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>

#include "mogra/logging.hpp"
#include "mogra/pareto.hpp"
#include "mogra/policy.hpp"
#include "mogra/shaping.hpp"
#include "mogra/util.hpp"

namespace mogra {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> log_header(const TaskSuite& suite) {
  std::vector<std::string> h{"step", "loss", "mean_total_reward"};
  for (const auto& p : suite.property_specs) h.push_back("raw_" + p.name);
  for (const auto& p : suite.property_specs) h.push_back("shaped_" + p.name);
  h.push_back("mean_advantage");
  h.push_back("kl");
  h.push_back("beta");
  h.push_back("wall_ms");
  return h;
}

struct StepStats {
  double mean_total_reward = 0.0;
  std::vector<double> raw_means;
  std::vector<double> shaped_means;
};

// Means over the step's rollouts. Raw and shaped per-property means cover
// valid candidates only; the shaped columns always report the sigmoid
// scores, also in runs that train on raw values.
StepStats rollout_stats(const std::vector<GroupRollout>& batch, const TaskSuite& suite,
                        const SteepnessConfig& steep) {
  StepStats s;
  const std::size_t m = suite.property_specs.size();
  s.raw_means.assign(m, 0.0);
  s.shaped_means.assign(m, 0.0);
  std::size_t n_total = 0, n_valid = 0;
  for (const auto& roll : batch) {
    for (std::size_t j = 0; j < roll.candidates.size(); ++j) {
      s.mean_total_reward += roll.total_rewards[j];
      ++n_total;
      const auto& cand = roll.candidates[j];
      if (!cand.valid || !cand.props) continue;
      ++n_valid;
      const auto shaped = shaped_vector(*cand.props, *roll.task, steep);
      for (std::size_t p = 0; p < m; ++p) {
        s.raw_means[p] += (*cand.props)[p];
        s.shaped_means[p] += shaped[p];
      }
    }
  }
  s.mean_total_reward /= static_cast<double>(n_total);
  if (n_valid > 0) {
    for (std::size_t p = 0; p < m; ++p) {
      s.raw_means[p] /= static_cast<double>(n_valid);
      s.shaped_means[p] /= static_cast<double>(n_valid);
    }
  }
  return s;
}

GroupRollout make_rollout(const TaskSpec& task, const TaskSuite& suite, const Policy& sampler,
                          const PolicySnapshot& reference, const RunConfig& config,
                          const SteepnessConfig& steep, std::mt19937_64& rng) {
  GroupRollout roll;
  roll.task = &task;
  roll.episodes = sample_group(sampler, config.group_size, suite.max_len, rng);
  const Aggregator agg{config.aggregation, config.lse_k};
  for (const auto& ep : roll.episodes) {
    Candidate cand = ep.to_candidate();
    std::vector<double> rewards(task.properties.size(), 0.0);
    double total = 0.0;
    if (cand.valid) {
      const auto& vals = eval_properties(cand, task, suite.registry);
      rewards = config.sigmoid_align ? shaped_vector(vals, task, steep) : raw_vector(vals, task);
      total = agg(rewards);
    }
    roll.reward_matrix.push_back(std::move(rewards));
    roll.total_rewards.push_back(total);
    roll.logp_ref.push_back(log_prob(reference.params, ep.actions));
    roll.candidates.push_back(std::move(cand));
  }
  return roll;
}

AdvantageBatch compute_advantages(const std::vector<GroupRollout>& chunk, const RunConfig& config) {
  AdvantageBatch adv;
  adv.eps_grp = config.eps_grp;
  adv.eps_bn = config.eps_bn;
  if (config.algorithm == Algorithm::grpo) {
    adv.mode = AdvantageMode::grpo;
    for (const auto& roll : chunk) {
      adv.values.push_back(grpo_advantages(roll.total_rewards, config.eps_grp));
    }
    return adv;
  }
  adv.mode = config.gdpo_mode();
  if (adv.mode == AdvantageMode::gdpo_lse) {
    for (const auto& roll : chunk) {
      adv.values.push_back(
          gdpo_advantages(roll.reward_matrix, {}, adv.mode, config.eps_grp, config.eps_bn));
    }
    return adv;
  }
  // sum + batch normalization over every response in the mini-batch
  std::vector<double> batch_tilde;
  for (const auto& roll : chunk) {
    const auto tilde = gdpo_tilde(roll.reward_matrix, {}, config.eps_grp);
    batch_tilde.insert(batch_tilde.end(), tilde.begin(), tilde.end());
  }
  for (const auto& roll : chunk) {
    adv.values.push_back(gdpo_advantages(roll.reward_matrix, {}, adv.mode, config.eps_grp,
                                         config.eps_bn, batch_tilde));
  }
  return adv;
}

struct FinalEvaluation {
  MetricsReport metrics;
  double band_violation_rate = 0.0;
  std::size_t ri_guard_events = 0;
  std::vector<EvalPair> pairs;
  std::vector<std::size_t> selected_ranks;
};

bool violates_band(const Candidate& cand, const TaskSpec& task) {
  if (!cand.props || !task.source.props) {
    throw std::logic_error("violates_band: candidate or source not evaluated");
  }
  for (const auto& name : task.stabilize_set) {
    const std::size_t i = task.property_index(name);
    if (std::abs((*cand.props)[i] - (*task.source.props)[i]) > task.properties[i].delta) {
      return true;
    }
  }
  return false;
}

FinalEvaluation final_evaluation(const Policy& policy, const TaskSuite& suite, int beam_width,
                                 bool ssor_gated) {
  FinalEvaluation ev;
  std::size_t violating = 0, valid_total = 0, beams_without_valid = 0;
  for (const auto& task : suite.tasks) {
    const auto episodes = beam_search(policy, beam_width, suite.max_len);
    std::vector<Candidate> beam;
    beam.reserve(episodes.size());
    for (const auto& ep : episodes) beam.push_back(ep.to_candidate());

    bool any_valid = false;
    for (auto& cand : beam) {
      if (!cand.valid) continue;
      any_valid = true;
      ++valid_total;
      eval_properties(cand, task, suite.registry);
      if (violates_band(cand, task)) ++violating;
    }
    if (!any_valid) ++beams_without_valid;

    const std::size_t pick = select_candidate_index(task.source, beam, task, suite.registry);
    ev.selected_ranks.push_back(pick);
    ev.pairs.push_back(make_eval_pair(task.source, beam[pick], task, suite.registry));
  }
  ev.metrics = compute_metrics(ev.pairs, ssor_gated, Fingerprint::kDefaultWidth, &ev.ri_guard_events);
  if (beams_without_valid > 0) {
    ev.band_violation_rate = 1.0;
  } else {
    ev.band_violation_rate =
        valid_total == 0 ? 1.0 : static_cast<double>(violating) / static_cast<double>(valid_total);
  }
  return ev;
}

void write_metrics_file(const std::string& path, const MetricsReport& m) {
  DsvWriter writer(path, {"sor", "ssor", "sim", "ri", "n"});
  writer.write_row({format_double(m.sor), format_double(m.ssor), format_double(m.sim),
                    format_double(m.ri), std::to_string(m.n)});
}

void write_eval_detail(const std::string& path, const TaskSuite& suite, const FinalEvaluation& ev) {
  std::vector<std::string> header{"task", "selected_rank", "selected_valid", "sor_pass", "ri", "tokens"};
  for (const auto& p : suite.property_specs) header.push_back("src_" + p.name);
  for (const auto& p : suite.property_specs) header.push_back("gen_" + p.name);
  DsvWriter writer(path, header);
  for (std::size_t t = 0; t < ev.pairs.size(); ++t) {
    const auto& pair = ev.pairs[t];
    std::string tokens;
    for (int tok : pair.generated.tokens) {
      if (!tokens.empty()) tokens += ' ';
      tokens += suite.vocab.symbol(tok);
    }
    std::vector<std::string> row{std::to_string(t), std::to_string(ev.selected_ranks[t]),
                                 pair.generated.valid ? "1" : "0", sor_pass(pair) ? "1" : "0",
                                 format_double(pair_ri(pair)), tokens};
    for (std::size_t p = 0; p < suite.property_specs.size(); ++p) {
      row.push_back(format_double((*pair.source.props)[p]));
    }
    for (std::size_t p = 0; p < suite.property_specs.size(); ++p) {
      row.push_back(pair.generated.valid ? format_double((*pair.generated.props)[p]) : "");
    }
    writer.write_row(row);
  }
}

}  // namespace

RunResult run_training(const RunConfig& config) {
  config.validate();
  TaskSuite suite = load_task_file(config.task_file);
  if (config.out_dir.empty()) throw std::invalid_argument("config: out directory is required");
  fs::create_directories(config.out_dir);

  {
    std::ofstream echo(fs::path(config.out_dir) / "config.txt");
    if (!echo) throw std::runtime_error("cannot write config echo");
    echo << config.echo();
  }

  Policy policy(suite.vocab, config.policy_order);
  const PolicySnapshot reference(policy, SnapshotRole::reference);
  KlController kl{config.kl_initial, config.kl_target, config.kl_adapt_rate};
  const ClipConfig clip{config.clip_eps};
  const SteepnessConfig steep{config.steepness_proportionality};
  std::mt19937_64 rng(*config.seed);

  RunResult result;
  result.out_dir = config.out_dir;
  DsvWriter log(fs::path(config.out_dir) / "train_log.csv", log_header(suite));

  for (int step = 1; step <= config.max_steps; ++step) {
    const auto t0 = std::chrono::steady_clock::now();
    const PolicySnapshot old_policy(policy, SnapshotRole::old_policy);

    std::vector<GroupRollout> batch;
    batch.reserve(config.rollout_batch);
    for (int b = 0; b < config.rollout_batch; ++b) {
      const TaskSpec& task = suite.tasks[b % suite.tasks.size()];
      batch.push_back(make_rollout(task, suite, old_policy.params, reference, config, steep, rng));
    }
    const StepStats stats = rollout_stats(batch, suite, steep);

    // contiguous mini-batch split; advantages depend only on rewards, so
    // they are computed once and reused across epochs
    std::vector<std::vector<GroupRollout>> chunks;
    std::vector<AdvantageBatch> chunk_advantages;
    const int per = (config.rollout_batch + config.minibatches - 1) / config.minibatches;
    for (int begin = 0; begin < config.rollout_batch; begin += per) {
      const int end = std::min(begin + per, config.rollout_batch);
      chunks.emplace_back(batch.begin() + begin, batch.begin() + end);
      chunk_advantages.push_back(compute_advantages(chunks.back(), config));
    }

    double step_loss = 0.0, step_kl = 0.0, step_adv = 0.0;
    int n_updates = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      for (std::size_t c = 0; c < chunks.size(); ++c) {
        const LossReport rep = policy_loss(chunks[c], chunk_advantages[c], policy, reference, clip,
                                           kl.coef, config.ratio_mode);
        if (!std::isfinite(rep.loss)) {
          std::vector<std::string> diag{std::to_string(step), format_double(rep.loss),
                                        format_double(stats.mean_total_reward)};
          diag.resize(log_header(suite).size(), "");
          log.write_row(diag);
          throw std::runtime_error("non-finite loss at step " + std::to_string(step));
        }
        policy.apply_gradient(rep.grad, config.learning_rate);
        step_loss += rep.loss;
        step_kl += rep.kl;
        step_adv += rep.mean_advantage;
        ++n_updates;
      }
    }
    step_loss /= n_updates;
    step_kl /= n_updates;
    step_adv /= n_updates;
    kl = adapt_kl_coef(kl, step_kl);

    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    TrainLogRecord rec{step,     step_loss, stats.mean_total_reward, stats.raw_means,
                       stats.shaped_means, step_adv, step_kl, kl.coef, wall_ms};
    std::vector<std::string> row{std::to_string(step), format_double(rec.loss),
                                 format_double(rec.mean_total_reward)};
    for (double v : rec.raw_means) row.push_back(format_double(v));
    for (double v : rec.shaped_means) row.push_back(format_double(v));
    row.push_back(format_double(rec.mean_advantage));
    row.push_back(format_double(rec.kl));
    row.push_back(format_double(rec.beta));
    row.push_back(format_double(rec.wall_ms));
    log.write_row(row);
    result.records.push_back(std::move(rec));
  }

  policy.save((fs::path(config.out_dir) / "policy_final.txt").string());

  const FinalEvaluation ev = final_evaluation(policy, suite, config.beam_width, config.ssor_gated);
  result.metrics = ev.metrics;
  result.band_violation_rate = ev.band_violation_rate;
  result.ri_guard_events = ev.ri_guard_events;
  if (ev.ri_guard_events > 0) {
    std::cerr << "warning: " << ev.ri_guard_events
              << " zero-magnitude source values hit the guarded RI denominator\n";
  }
  write_metrics_file((fs::path(config.out_dir) / "metrics.csv").string(), ev.metrics);
  write_eval_detail((fs::path(config.out_dir) / "eval_detail.csv").string(), suite, ev);

  if (!result.records.empty()) {
    result.step0_mean_reward = result.records.front().mean_total_reward;
    result.final_mean_reward = result.records.back().mean_total_reward;
    for (std::size_t p = 0; p < suite.property_specs.size(); ++p) {
      result.final_shaped_means[suite.property_specs[p].name] =
          result.records.back().shaped_means[p];
    }
  }
  return result;
}

RunResult evaluate_policy(const std::string& checkpoint_path, const std::string& task_file,
                          int beam_width, const std::string& out_dir, bool ssor_gated) {
  const TaskSuite suite = load_task_file(task_file);
  const Policy policy = Policy::load(checkpoint_path);
  if (policy.vocab().symbols() != suite.vocab.symbols()) {
    throw std::invalid_argument("checkpoint vocabulary does not match the task file");
  }
  const FinalEvaluation ev = final_evaluation(policy, suite, beam_width, ssor_gated);
  RunResult result;
  result.metrics = ev.metrics;
  result.band_violation_rate = ev.band_violation_rate;
  result.ri_guard_events = ev.ri_guard_events;
  result.out_dir = out_dir;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_metrics_file((fs::path(out_dir) / "metrics.csv").string(), ev.metrics);
    write_eval_detail((fs::path(out_dir) / "eval_detail.csv").string(), suite, ev);
  }
  return result;
}

std::vector<std::string> ablation_presets() {
  return {"grpo_am", "grpo_gm", "grpo_gm_sigmoid", "gdpo_am", "gdpo_lse", "gdpo_lse_sigmoid"};
}

RunConfig preset_config(const std::string& preset, RunConfig base) {
  if (preset == "grpo_am") {
    base.algorithm = Algorithm::grpo;
    base.aggregation = AggregatorKind::arithmetic_mean;
    base.sigmoid_align = false;
  } else if (preset == "grpo_gm") {
    base.algorithm = Algorithm::grpo;
    base.aggregation = AggregatorKind::geometric_mean;
    base.sigmoid_align = false;
  } else if (preset == "grpo_gm_sigmoid") {
    base.algorithm = Algorithm::grpo;
    base.aggregation = AggregatorKind::geometric_mean;
    base.sigmoid_align = true;
  } else if (preset == "gdpo_am") {
    base.algorithm = Algorithm::gdpo;
    base.aggregation = AggregatorKind::arithmetic_mean;
    base.sigmoid_align = false;
  } else if (preset == "gdpo_lse") {
    base.algorithm = Algorithm::gdpo;
    base.aggregation = AggregatorKind::lse_softmin;
    base.sigmoid_align = false;
  } else if (preset == "gdpo_lse_sigmoid") {
    base.algorithm = Algorithm::gdpo;
    base.aggregation = AggregatorKind::lse_softmin;
    base.sigmoid_align = true;
  } else {
    throw std::invalid_argument("unknown ablation preset '" + preset + "'");
  }
  return base;
}

std::vector<AblationRow> run_ablation(const std::string& preset, const RunConfig& base,
                                      const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("run_ablation: at least one seed required");
  if (base.out_dir.empty()) throw std::invalid_argument("run_ablation: out directory required");
  std::vector<std::string> presets;
  if (preset == "all") {
    presets = ablation_presets();
  } else {
    preset_config(preset, base);  // validates the name
    presets.push_back(preset);
  }
  fs::create_directories(base.out_dir);

  DsvWriter summary((fs::path(base.out_dir) / "summary.csv").string(),
                    {"preset", "seed", "sor", "ssor", "sim", "ri", "n", "band_violation_rate",
                     "final_mean_reward"});
  std::vector<AblationRow> rows;
  for (const auto& name : presets) {
    for (auto seed : seeds) {
      RunConfig cfg = preset_config(name, base);
      cfg.seed = seed;
      cfg.out_dir = (fs::path(base.out_dir) / (name + "_s" + std::to_string(seed))).string();
      const RunResult res = run_training(cfg);
      AblationRow row{name, seed, res.metrics, res.band_violation_rate, res.final_mean_reward};
      summary.write_row({row.preset, std::to_string(row.seed), format_double(row.metrics.sor),
                         format_double(row.metrics.ssor), format_double(row.metrics.sim),
                         format_double(row.metrics.ri), std::to_string(row.metrics.n),
                         format_double(row.band_violation_rate),
                         format_double(row.final_mean_reward)});
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void run_pareto_analysis(const std::string& front_name, const std::string& out_dir) {
  std::vector<ParetoFront> fronts;
  if (front_name == "all") {
    fronts = shipped_fronts();
  } else {
    fronts.push_back(front_by_name(front_name));
  }
  fs::create_directories(out_dir);

  const std::vector<std::pair<std::string, Aggregator>> aggs{
      {"am", Aggregator{AggregatorKind::arithmetic_mean, 1.0}},
      {"gm", Aggregator{AggregatorKind::geometric_mean, 1.0}},
      {"lse_k1", Aggregator{AggregatorKind::lse_softmin, 1.0}},
      {"lse_k5", Aggregator{AggregatorKind::lse_softmin, 5.0}},
  };

  DsvWriter summary((fs::path(out_dir) / "argmax_summary.csv").string(),
                    {"front", "aggregator", "t_star", "r1", "r2", "value", "location"});
  for (const auto& front : fronts) {
    for (const auto& [name, agg] : aggs) {
      const GridSpec grid{agg.kind == AggregatorKind::geometric_mean ? 0.01 : 0.0, 1.0,
                          agg.kind == AggregatorKind::geometric_mean ? 0.01 : 0.0, 1.0, 60, 60};
      DsvWriter contour((fs::path(out_dir) / ("contour_" + name + ".csv")).string(),
                        {"x", "y", "value"});
      for (const auto& row : contour_data(agg, grid)) {
        contour.write_numeric_row({row.x, row.y, row.value});
      }
      const ParetoArgmax am = pareto_argmax(front, agg);
      summary.write_row({front.name, name, format_double(am.t_star), format_double(am.r1),
                         format_double(am.r2), format_double(am.value),
                         am.location == ArgmaxLocation::boundary ? "boundary" : "interior"});
    }
  }
}

}  // namespace mogra
