#include "mogra/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mogra {

AdvantageMode advantage_mode_from_string(const std::string& s) {
  if (s == "grpo") return AdvantageMode::grpo;
  if (s == "gdpo_lse") return AdvantageMode::gdpo_lse;
  if (s == "gdpo_sum_bn") return AdvantageMode::gdpo_sum_bn;
  throw std::invalid_argument("unknown advantage mode '" + s + "'");
}

namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;  // population form, 1/N
};

Moments moments(std::span<const double> v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(ss / n);
  return m;
}

std::vector<double> normalize(std::span<const double> v, double eps) {
  const Moments m = moments(v);
  std::vector<double> out(v.size(), 0.0);
  if (m.stddev == 0.0) return out;  // exact ties carry no ranking signal
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - m.mean) / (m.stddev + eps);
  return out;
}

}  // namespace

std::vector<double> grpo_advantages(std::span<const double> total_rewards, double eps) {
  if (total_rewards.size() < 2) throw std::invalid_argument("grpo_advantages: need G >= 2");
  if (eps < 0.0) throw std::invalid_argument("grpo_advantages: eps must be >= 0");
  return normalize(total_rewards, eps);
}

std::vector<std::vector<double>> gdpo_step1(const std::vector<std::vector<double>>& reward_matrix,
                                            double eps_grp) {
  const std::size_t g = reward_matrix.size();
  if (g < 2) throw std::invalid_argument("gdpo_step1: need G >= 2");
  const std::size_t m = reward_matrix.front().size();
  if (m < 1) throw std::invalid_argument("gdpo_step1: need at least one property");
  for (const auto& row : reward_matrix) {
    if (row.size() != m) throw std::invalid_argument("gdpo_step1: ragged reward matrix");
  }
  std::vector<std::vector<double>> out(g, std::vector<double>(m, 0.0));
  std::vector<double> column(g);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t i = 0; i < g; ++i) column[i] = reward_matrix[i][p];
    const auto norm = normalize(column, eps_grp);
    for (std::size_t i = 0; i < g; ++i) out[i][p] = norm[i];
  }
  return out;
}

std::vector<double> gdpo_tilde(const std::vector<std::vector<double>>& reward_matrix,
                               std::span<const double> weights, double eps_grp) {
  const auto step1 = gdpo_step1(reward_matrix, eps_grp);
  const std::size_t m = step1.front().size();
  if (!weights.empty() && weights.size() != m) {
    throw std::invalid_argument("gdpo_tilde: weight count does not match property count");
  }
  std::vector<double> tilde(step1.size(), 0.0);
  for (std::size_t i = 0; i < step1.size(); ++i) {
    for (std::size_t p = 0; p < m; ++p) {
      tilde[i] += (weights.empty() ? 1.0 : weights[p]) * step1[i][p];
    }
  }
  return tilde;
}

std::vector<double> gdpo_advantages(const std::vector<std::vector<double>>& reward_matrix,
                                    std::span<const double> weights, AdvantageMode mode,
                                    double eps_grp, double eps_bn,
                                    std::span<const double> batch_tilde) {
  if (mode == AdvantageMode::grpo) {
    throw std::invalid_argument("gdpo_advantages: mode must be gdpo_lse or gdpo_sum_bn");
  }
  const auto step1 = gdpo_step1(reward_matrix, eps_grp);
  const std::size_t m = step1.front().size();
  if (!weights.empty() && weights.size() != m) {
    throw std::invalid_argument("gdpo_advantages: weight count does not match property count");
  }

  if (mode == AdvantageMode::gdpo_lse) {
    // soft-min of the decoupled advantages; shift by the row minimum so the
    // exponentials cannot overflow
    std::vector<double> out(step1.size(), 0.0);
    for (std::size_t i = 0; i < step1.size(); ++i) {
      double lo = step1[i][0];
      for (double a : step1[i]) lo = std::min(lo, a);
      double sum = 0.0;
      for (std::size_t p = 0; p < m; ++p) {
        sum += (weights.empty() ? 1.0 : weights[p]) * std::exp(-(step1[i][p] - lo));
      }
      out[i] = lo - std::log(sum);
    }
    return out;
  }

  // gdpo_sum_bn: weighted sum then batch-wise normalization
  if (batch_tilde.empty()) {
    throw std::invalid_argument("gdpo_advantages: sum_bn mode needs the mini-batch context");
  }
  const auto tilde = gdpo_tilde(reward_matrix, weights, eps_grp);
  const Moments bm = moments(batch_tilde);
  std::vector<double> out(tilde.size());
  for (std::size_t i = 0; i < tilde.size(); ++i) {
    out[i] = bm.stddev == 0.0 ? 0.0 : (tilde[i] - bm.mean) / (bm.stddev + eps_bn);
  }
  return out;
}

void ClipConfig::validate() const {
  if (!(eps_clip > 0.0) || !(eps_clip < 1.0)) {
    throw std::invalid_argument("clip epsilon must lie in (0,1)");
  }
}

double clipped_surrogate(double rho, double advantage, const ClipConfig& clip) {
  clip.validate();
  const double clipped = std::clamp(rho, 1.0 - clip.eps_clip, 1.0 + clip.eps_clip);
  return std::min(rho * advantage, clipped * advantage);
}

namespace {

std::vector<double> row_probs(const Policy& p, int ctx) {
  auto logp = p.row_log_probs(ctx);
  std::vector<double> probs(logp.size(), 0.0);
  for (std::size_t i = 1; i < logp.size(); ++i) probs[i] = std::exp(logp[i]);
  return probs;
}

// KL between the two row distributions plus what the gradient needs.
struct RowKl {
  double kl = 0.0;
  std::vector<double> p;        // policy probabilities
  std::vector<double> log_ratio;  // log p - log q per symbol
};

RowKl row_kl(const Policy& policy, const Policy& reference, int ctx) {
  RowKl out;
  const auto lp = policy.row_log_probs(ctx);
  const auto lq = reference.row_log_probs(ctx);
  out.p.assign(lp.size(), 0.0);
  out.log_ratio.assign(lp.size(), 0.0);
  for (std::size_t i = 1; i < lp.size(); ++i) {
    out.p[i] = std::exp(lp[i]);
    out.log_ratio[i] = lp[i] - lq[i];
    out.kl += out.p[i] * out.log_ratio[i];
  }
  return out;
}

}  // namespace

double kl_penalty(const Policy& policy, const Policy& reference, std::span<const int> contexts) {
  if (!policy.same_shape(reference)) {
    throw std::invalid_argument("kl_penalty: policies disagree on vocabulary or order");
  }
  if (contexts.empty()) return 0.0;
  double total = 0.0;
  for (int ctx : contexts) total += row_kl(policy, reference, ctx).kl;
  return total / static_cast<double>(contexts.size());
}

KlController adapt_kl_coef(KlController ctrl, double observed_kl) {
  if (observed_kl < 0.0) throw std::invalid_argument("adapt_kl_coef: observed KL must be >= 0");
  if (observed_kl > 1.5 * ctrl.target) {
    ctrl.coef *= 1.0 + ctrl.adapt_rate;
  } else if (observed_kl < ctrl.target / 1.5) {
    ctrl.coef /= 1.0 + ctrl.adapt_rate;
  }
  ctrl.coef = std::clamp(ctrl.coef, KlController::kMinCoef, KlController::kMaxCoef);
  return ctrl;
}

LossReport policy_loss(const std::vector<GroupRollout>& rollouts, const AdvantageBatch& advantages,
                       const Policy& policy, const PolicySnapshot& reference,
                       const ClipConfig& clip, double kl_coef, RatioMode ratio_mode) {
  clip.validate();
  if (rollouts.empty()) throw std::invalid_argument("policy_loss: empty rollout batch");
  if (advantages.values.size() != rollouts.size()) {
    throw std::invalid_argument("policy_loss: advantages do not align with rollouts");
  }
  if (!policy.same_shape(reference.params)) {
    throw std::invalid_argument("policy_loss: reference snapshot shape mismatch");
  }

  const int v = policy.vocab().size();
  LossReport report;
  report.grad.assign(policy.table_size(), 0.0);

  const double batch_w = 1.0 / static_cast<double>(rollouts.size());
  std::map<int, int> context_counts;
  std::size_t n_advantages = 0;

  for (std::size_t b = 0; b < rollouts.size(); ++b) {
    const auto& roll = rollouts[b];
    if (advantages.values[b].size() != roll.episodes.size()) {
      throw std::invalid_argument("policy_loss: advantages do not align with group");
    }
    const double group_w = batch_w / static_cast<double>(roll.episodes.size());
    for (std::size_t j = 0; j < roll.episodes.size(); ++j) {
      const auto& ep = roll.episodes[j];
      if (ep.logp.size() != ep.actions.size() || ep.actions.empty()) {
        throw std::invalid_argument("policy_loss: episode missing sampling-time log-probs");
      }
      const double adv = advantages.values[b][j];
      report.mean_advantage += adv;
      ++n_advantages;

      // replay the episode to recover contexts and current log-probs
      std::vector<int> prefix;
      std::vector<int> ctxs(ep.actions.size());
      std::vector<double> logp_new(ep.actions.size());
      for (std::size_t t = 0; t < ep.actions.size(); ++t) {
        ctxs[t] = policy.context_index(prefix);
        logp_new[t] = policy.row_log_probs(ctxs[t])[ep.actions[t]];
        context_counts[ctxs[t]] += 1;
        if (ep.actions[t] != Vocabulary::kEnd) prefix.push_back(ep.actions[t]);
      }

      const double len_w = 1.0 / static_cast<double>(ep.actions.size());
      // d term / d logp_new for each token; zero when the clip is active
      std::vector<double> dterm(ep.actions.size(), 0.0);
      if (ratio_mode == RatioMode::token_level) {
        for (std::size_t t = 0; t < ep.actions.size(); ++t) {
          const double rho = std::exp(logp_new[t] - ep.logp[t]);
          const double unclipped = rho * adv;
          const double clipped =
              std::clamp(rho, 1.0 - clip.eps_clip, 1.0 + clip.eps_clip) * adv;
          report.surrogate += group_w * len_w * std::min(unclipped, clipped);
          if (unclipped <= clipped) dterm[t] = group_w * len_w * adv * rho;
        }
      } else {
        double logp_new_sum = 0.0, logp_old_sum = 0.0;
        for (std::size_t t = 0; t < ep.actions.size(); ++t) {
          logp_new_sum += logp_new[t];
          logp_old_sum += ep.logp[t];
        }
        const double rho = std::exp(logp_new_sum - logp_old_sum);
        const double unclipped = rho * adv;
        const double clipped = std::clamp(rho, 1.0 - clip.eps_clip, 1.0 + clip.eps_clip) * adv;
        report.surrogate += group_w * std::min(unclipped, clipped);
        if (unclipped <= clipped) {
          for (std::size_t t = 0; t < ep.actions.size(); ++t) dterm[t] = group_w * adv * rho;
        }
      }

      // surrogate gradient: d logpi(a|c) / d logit(c,w) = [w==a] - p_w
      for (std::size_t t = 0; t < ep.actions.size(); ++t) {
        if (dterm[t] == 0.0) continue;
        const auto probs = row_probs(policy, ctxs[t]);
        double* grow = report.grad.data() + static_cast<std::size_t>(ctxs[t]) * v;
        for (int w = 1; w < v; ++w) {
          const double indicator = (w == ep.actions[t]) ? 1.0 : 0.0;
          // loss carries -surrogate, hence the sign flip
          grow[w] -= dterm[t] * (indicator - probs[w]);
        }
      }
    }
  }
  report.mean_advantage /= static_cast<double>(n_advantages);

  // exact KL against the reference over the visited contexts
  std::size_t total_tokens = 0;
  for (const auto& [ctx, count] : context_counts) total_tokens += count;
  if (total_tokens > 0) {
    const double kl_w = 1.0 / static_cast<double>(total_tokens);
    for (const auto& [ctx, count] : context_counts) {
      const RowKl rk = row_kl(policy, reference.params, ctx);
      report.kl += kl_w * count * rk.kl;
      double* grow = report.grad.data() + static_cast<std::size_t>(ctx) * v;
      const double scale = kl_coef * kl_w * count;
      for (int w = 1; w < v; ++w) {
        grow[w] += scale * rk.p[w] * (rk.log_ratio[w] - rk.kl);
      }
    }
  }

  report.loss = -report.surrogate + kl_coef * report.kl;
  return report;
}

}  // namespace mogra
