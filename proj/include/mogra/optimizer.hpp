#pragma once

#include <span>
#include <string>
#include <vector>

#include "mogra/policy.hpp"
#include "mogra/property.hpp"

namespace mogra {

// Rollout of G candidates for one task: per-property rewards, aggregated
// totals, and the per-action log-probabilities recorded at sampling time.
struct GroupRollout {
  const TaskSpec* task = nullptr;
  std::vector<Candidate> candidates;
  std::vector<Episode> episodes;                   // actions + logp under the rollout policy
  std::vector<std::vector<double>> reward_matrix;  // G x M per-property rewards
  std::vector<double> total_rewards;               // G aggregated rewards
  std::vector<std::vector<double>> logp_ref;       // per-action logp under the reference policy

  int group_size() const { return static_cast<int>(episodes.size()); }
};

enum class AdvantageMode { grpo, gdpo_lse, gdpo_sum_bn };

AdvantageMode advantage_mode_from_string(const std::string& s);

struct AdvantageBatch {
  std::vector<std::vector<double>> values;  // aligned with rollout groups
  AdvantageMode mode = AdvantageMode::grpo;
  double eps_grp = 1e-8;
  double eps_bn = 1e-8;
};

// Group-relative advantages A_i = (R_i - mean) / (population std + eps).
// Groups with exactly zero variance yield all-zero advantages instead of
// eps-inflated sign noise. Requires G >= 2.
std::vector<double> grpo_advantages(std::span<const double> total_rewards, double eps);

// Per-property group normalization: each column of the G x M reward matrix
// is normalized like grpo_advantages.
std::vector<std::vector<double>> gdpo_step1(const std::vector<std::vector<double>>& reward_matrix,
                                            double eps_grp);

// Decoupled advantages. Step 1 always normalizes per property. Mode
// gdpo_lse then aggregates each candidate's row by the soft-min
// -log sum_m w_m exp(-A_m) (all-ones weights give the plain form). Mode
// gdpo_sum_bn takes the weighted sum and normalizes it against
// `batch_tilde`, the weighted sums of every response in the mini-batch
// (which must include this group's own rows).
std::vector<double> gdpo_advantages(const std::vector<std::vector<double>>& reward_matrix,
                                    std::span<const double> weights, AdvantageMode mode,
                                    double eps_grp, double eps_bn,
                                    std::span<const double> batch_tilde = {});

// Weighted sums of the step-1 rows, the quantity batch normalization runs
// over in sum_bn mode.
std::vector<double> gdpo_tilde(const std::vector<std::vector<double>>& reward_matrix,
                               std::span<const double> weights, double eps_grp);

struct ClipConfig {
  double eps_clip = 0.2;

  void validate() const;
};

// min(rho * A, clip(rho, 1-eps, 1+eps) * A).
double clipped_surrogate(double rho, double advantage, const ClipConfig& clip);

// Exact KL(policy || reference) per decoding context, summed over the full
// emittable vocabulary and averaged over the visited contexts (with
// multiplicity). Throws when the policies disagree on vocabulary or order.
double kl_penalty(const Policy& policy, const Policy& reference, std::span<const int> contexts);

// Adaptive coefficient for the KL penalty: multiplied (divided) by
// 1 + adapt_rate when the observed KL leaves the 1.5x dead band around the
// target, clamped to [1e-5, 10].
struct KlController {
  double coef = 0.05;
  double target = 1.0;
  double adapt_rate = 0.1;

  static constexpr double kMinCoef = 1e-5;
  static constexpr double kMaxCoef = 10.0;
};

KlController adapt_kl_coef(KlController ctrl, double observed_kl);

enum class RatioMode { token_level, sequence_level };

struct LossReport {
  double loss = 0.0;        // -surrogate + beta * kl
  double surrogate = 0.0;   // mean clipped surrogate
  double kl = 0.0;          // observed mean KL vs the reference
  double mean_advantage = 0.0;
  std::vector<double> grad;  // d loss / d logits, shaped like the policy table
};

// Clipped-surrogate loss with KL penalty over a batch of rollouts, plus its
// exact gradient through the policy's softmax rows. Token-level importance
// ratios with per-response length normalization by default; sequence-level
// ratios per the aggregate form are available as an option.
LossReport policy_loss(const std::vector<GroupRollout>& rollouts, const AdvantageBatch& advantages,
                       const Policy& policy, const PolicySnapshot& reference,
                       const ClipConfig& clip, double kl_coef,
                       RatioMode ratio_mode = RatioMode::token_level);

}  // namespace mogra
