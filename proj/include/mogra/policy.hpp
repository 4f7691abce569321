#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mogra/property.hpp"
#include "mogra/vocab.hpp"

namespace mogra {

// Tabular autoregressive policy over the vocabulary. One logits row per
// decoding context, where a context is the previous token (order 1) or the
// previous two tokens (order 2). BEGIN is never emitted: its column is
// masked out of every softmax. Small enough that log-probabilities, KL
// divergences, and gradients are all exact.
class Policy {
 public:
  Policy(Vocabulary vocab, int order = 2);

  const Vocabulary& vocab() const { return vocab_; }
  int order() const { return order_; }
  int num_contexts() const { return num_contexts_; }
  std::uint64_t version() const { return version_; }

  std::size_t table_size() const { return logits_.size(); }
  const std::vector<double>& logits() const { return logits_; }
  double& logit_at(int ctx, int token) { return logits_[static_cast<std::size_t>(ctx) * vocab_.size() + token]; }
  double logit_at(int ctx, int token) const { return logits_[static_cast<std::size_t>(ctx) * vocab_.size() + token]; }

  // Context row index for a prefix of already-emitted tokens.
  int context_index(std::span<const int> prefix) const;

  // log softmax over the emittable symbols (everything but BEGIN); the
  // BEGIN entry is -inf. Fixed accumulation order, exact normalization.
  std::vector<double> row_log_probs(int ctx) const;

  // In-place descent step: logits -= lr * grad. Throws on shape mismatch or
  // non-finite gradient entries. Increments the version counter.
  void apply_gradient(std::span<const double> grad, double learning_rate);

  // Checkpoint I/O; plain text, full double precision, versioned header.
  void save(const std::string& path) const;
  static Policy load(const std::string& path);

  bool same_shape(const Policy& other) const;

 private:
  Vocabulary vocab_;
  int order_;
  int num_contexts_;
  std::uint64_t version_ = 0;
  std::vector<double> logits_;
};

enum class SnapshotRole { old_policy, reference };

// Immutable copy of the policy taken at a point in time.
struct PolicySnapshot {
  Policy params;
  SnapshotRole role;

  PolicySnapshot(const Policy& p, SnapshotRole r) : params(p), role(r) {}
};

// One sampled generation: the action sequence (content tokens plus the
// terminating END when one was emitted; truncation at max_len emits no END)
// and the per-action log-probabilities under the sampling policy.
struct Episode {
  std::vector<int> actions;
  std::vector<double> logp;
  bool truncated = false;

  // Content tokens only (END stripped).
  std::vector<int> content() const;
  Candidate to_candidate() const;
  double total_logp() const;
};

// Samples G episodes autoregressively at temperature 1. Deterministic given
// the generator state; the per-step inverse-CDF walk visits token ids in
// ascending order.
std::vector<Episode> sample_group(const Policy& policy, int group_size, int max_len,
                                  std::mt19937_64& rng);

// Exact per-token conditional log-probabilities of a given action sequence
// (the caller decides whether it includes a trailing END). Throws on BEGIN
// or out-of-range tokens.
std::vector<double> log_prob(const Policy& policy, std::span<const int> actions);

// Length-bounded deterministic beam search over summed log-probabilities.
// Returns up to `width` completed episodes, best first; ties are broken
// lexicographically on token indices. A width of one is greedy decoding.
std::vector<Episode> beam_search(const Policy& policy, int width, int max_len);

}  // namespace mogra
