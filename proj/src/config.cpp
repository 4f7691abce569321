#include "mogra/config.hpp"

#include <sstream>
#include <stdexcept>

#include "mogra/util.hpp"

namespace mogra {

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "grpo") return Algorithm::grpo;
  if (s == "gdpo") return Algorithm::gdpo;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

std::string to_string(Algorithm a) { return a == Algorithm::grpo ? "grpo" : "gdpo"; }

void RunConfig::validate() const {
  if (task_file.empty()) throw std::invalid_argument("config: task file is required");
  if (!seed.has_value()) throw std::invalid_argument("config: seed is required (no default)");
  if (group_size < 2) throw std::invalid_argument("config: group_size must be >= 2");
  if (rollout_batch < 1) throw std::invalid_argument("config: rollout_batch must be >= 1");
  if (epochs < 1) throw std::invalid_argument("config: epochs must be >= 1");
  if (minibatches < 1) throw std::invalid_argument("config: minibatches must be >= 1");
  if (minibatches > rollout_batch) {
    throw std::invalid_argument("config: more minibatches than rollout groups");
  }
  if (max_steps < 0) throw std::invalid_argument("config: max_steps must be >= 0");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("config: learning rate must be positive");
  if (!(clip_eps > 0.0 && clip_eps < 1.0)) throw std::invalid_argument("config: clip_eps in (0,1)");
  if (!(kl_initial > 0.0)) throw std::invalid_argument("config: kl_initial must be positive");
  if (!(kl_target > 0.0)) throw std::invalid_argument("config: kl_target must be positive");
  if (!(kl_adapt_rate > 0.0)) throw std::invalid_argument("config: kl_adapt_rate must be positive");
  if (!(eps_grp > 0.0) || !(eps_bn > 0.0)) throw std::invalid_argument("config: eps values must be positive");
  if (!(lse_k > 0.0)) throw std::invalid_argument("config: lse_k must be positive");
  if (!(steepness_proportionality > 0.0)) {
    throw std::invalid_argument("config: steepness proportionality must be positive");
  }
  if (beam_width < 1) throw std::invalid_argument("config: beam_width must be >= 1");
  if (policy_order != 1 && policy_order != 2) {
    throw std::invalid_argument("config: policy_order must be 1 or 2");
  }
  if (algorithm == Algorithm::gdpo) gdpo_mode();  // rejects geometric_mean
}

AdvantageMode RunConfig::gdpo_mode() const {
  switch (aggregation) {
    case AggregatorKind::arithmetic_mean: return AdvantageMode::gdpo_sum_bn;
    case AggregatorKind::lse_softmin: return AdvantageMode::gdpo_lse;
    case AggregatorKind::geometric_mean:
      throw std::invalid_argument(
          "config: gdpo aggregates signed advantages; use arithmetic_mean (sum + batch "
          "normalization) or lse_softmin");
  }
  throw std::logic_error("bad aggregation");
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  out << "task = " << task_file << "\n";
  out << "out = " << out_dir << "\n";
  out << "algorithm = " << to_string(algorithm) << "\n";
  out << "aggregation = " << to_string(aggregation) << "\n";
  out << "sigmoid_align = " << (sigmoid_align ? "true" : "false") << "\n";
  out << "group_size = " << group_size << "\n";
  out << "rollout_batch = " << rollout_batch << "\n";
  out << "epochs = " << epochs << "\n";
  out << "minibatches = " << minibatches << "\n";
  out << "max_steps = " << max_steps << "\n";
  out << "seed = " << (seed ? std::to_string(*seed) : std::string("<unset>")) << "\n";
  out << "learning_rate = " << format_double(learning_rate) << "\n";
  out << "clip_eps = " << format_double(clip_eps) << "\n";
  out << "kl_initial = " << format_double(kl_initial) << "\n";
  out << "kl_target = " << format_double(kl_target) << "\n";
  out << "kl_adapt_rate = " << format_double(kl_adapt_rate) << "\n";
  out << "eps_grp = " << format_double(eps_grp) << "\n";
  out << "eps_bn = " << format_double(eps_bn) << "\n";
  out << "lse_k = " << format_double(lse_k) << "\n";
  out << "steepness_proportionality = " << format_double(steepness_proportionality) << "\n";
  out << "beam_width = " << beam_width << "\n";
  out << "policy_order = " << policy_order << "\n";
  out << "ratio = " << (ratio_mode == RatioMode::token_level ? "token" : "sequence") << "\n";
  out << "ssor_gated = " << (ssor_gated ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace mogra
