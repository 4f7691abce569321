// Independent re-implementations used as test oracles. Everything here is
// deliberately written from the definitions, structured differently from
// the library code it checks, and kept free of library calls on the checked
// path.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "mogra/metrics.hpp"
#include "mogra/policy.hpp"
#include "mogra/property.hpp"

namespace testsup {

// Central finite difference d f / d x.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// |a - b| measured against max(|a|, |b|, floor).
inline double rel_err(double a, double b, double floor = 1e-9) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

// ---------------------------------------------------------------------------
// Exhaustive episode enumeration for small policies.
// ---------------------------------------------------------------------------

struct EnumeratedSeq {
  std::vector<int> actions;  // includes END unless truncated at max_len
  double logp = 0.0;
  bool truncated = false;
};

// All completed action sequences of a policy with content length <= max_len,
// each with its exact log-probability (END factor included when END was
// emitted).
inline std::vector<EnumeratedSeq> enumerate_episodes(const mogra::Policy& policy, int max_len) {
  std::vector<EnumeratedSeq> out;
  const int v = policy.vocab().size();
  std::function<void(std::vector<int>&, double)> walk = [&](std::vector<int>& prefix, double lp) {
    const auto row = policy.row_log_probs(policy.context_index(prefix));
    // ending here by emitting END
    {
      EnumeratedSeq seq;
      seq.actions = prefix;
      seq.actions.push_back(mogra::Vocabulary::kEnd);
      seq.logp = lp + row[mogra::Vocabulary::kEnd];
      out.push_back(std::move(seq));
    }
    for (int t = 2; t < v; ++t) {
      prefix.push_back(t);
      const double lp2 = lp + row[t];
      if (static_cast<int>(prefix.size()) == max_len) {
        EnumeratedSeq seq;
        seq.actions = prefix;
        seq.logp = lp2;
        seq.truncated = true;
        out.push_back(std::move(seq));
      } else {
        walk(prefix, lp2);
      }
      prefix.pop_back();
    }
  };
  std::vector<int> prefix;
  walk(prefix, 0.0);
  return out;
}

// Ranking used by the beam contract: log-probability descending, then
// lexicographic on the action ids.
inline void rank_episodes(std::vector<EnumeratedSeq>& seqs) {
  std::stable_sort(seqs.begin(), seqs.end(), [](const EnumeratedSeq& a, const EnumeratedSeq& b) {
    if (a.logp != b.logp) return a.logp > b.logp;
    return a.actions < b.actions;
  });
}

// ---------------------------------------------------------------------------
// Metric re-implementations straight from the definitions.
// ---------------------------------------------------------------------------

struct PairView {
  bool gen_valid = false;
  std::vector<double> src;
  std::vector<double> gen;
  double sim = 0.0;  // precomputed fingerprint similarity
};

struct TaskView {
  std::vector<int> direction;
  std::vector<double> delta;
  std::vector<double> theta;
  std::vector<bool> improve;  // partition flag per property
};

inline TaskView view_of(const mogra::TaskSpec& task) {
  TaskView tv;
  for (const auto& p : task.properties) {
    tv.direction.push_back(p.direction);
    tv.delta.push_back(p.delta);
    tv.theta.push_back(p.theta);
    tv.improve.push_back(task.is_improve(p.name));
  }
  return tv;
}

inline bool bf_sor_pair(const TaskView& tv, const PairView& pr) {
  if (!pr.gen_valid) return false;
  for (std::size_t i = 0; i < tv.direction.size(); ++i) {
    const double diff = pr.gen[i] - pr.src[i];
    if (tv.improve[i]) {
      if (tv.direction[i] * diff < tv.delta[i]) return false;
    } else {
      if (std::abs(diff) > tv.delta[i]) return false;
    }
  }
  return true;
}

inline bool bf_strict_pair(const TaskView& tv, const PairView& pr) {
  if (!pr.gen_valid) return false;
  for (std::size_t i = 0; i < tv.direction.size(); ++i) {
    if (tv.direction[i] * pr.gen[i] < tv.direction[i] * tv.theta[i]) return false;
  }
  return true;
}

inline double bf_ri_pair(const TaskView& tv, const PairView& pr) {
  if (!pr.gen_valid) return 0.0;
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < tv.direction.size(); ++i) {
    if (!tv.improve[i]) continue;
    ++n;
    const double denom = std::max(std::abs(pr.src[i]), 1e-8);
    sum += tv.direction[i] * (pr.gen[i] - pr.src[i]) / denom;
  }
  return n == 0 ? 0.0 : sum / n;
}

inline double bf_sor(const TaskView& tv, std::span<const PairView> pairs) {
  std::size_t hits = 0;
  for (const auto& p : pairs) hits += bf_sor_pair(tv, p) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

inline double bf_ssor(const TaskView& tv, std::span<const PairView> pairs, bool gated) {
  std::size_t hits = 0;
  for (const auto& p : pairs) {
    const bool strict = bf_strict_pair(tv, p);
    hits += ((gated ? bf_sor_pair(tv, p) && strict : strict)) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

inline double bf_ri(const TaskView& tv, std::span<const PairView> pairs) {
  double sum = 0.0;
  for (const auto& p : pairs) sum += bf_ri_pair(tv, p);
  return sum / static_cast<double>(pairs.size());
}

inline double bf_sim(std::span<const PairView> pairs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : pairs) {
    if (!p.gen_valid) continue;
    sum += p.sim;
    ++n;
  }
  return sum / static_cast<double>(n);
}

// Candidate selection per the published procedure: SOR-compliant subset,
// max RI, fall back to max RI over the valid beam, earliest rank on ties.
inline std::size_t bf_select(const TaskView& tv, std::span<const PairView> beam) {
  std::vector<std::size_t> compliant, valid;
  for (std::size_t k = 0; k < beam.size(); ++k) {
    if (!beam[k].gen_valid) continue;
    valid.push_back(k);
    if (bf_sor_pair(tv, beam[k])) compliant.push_back(k);
  }
  const auto& pool = !compliant.empty() ? compliant : valid;
  if (pool.empty()) return 0;
  std::size_t best = pool.front();
  for (auto k : pool) {
    if (bf_ri_pair(tv, beam[k]) > bf_ri_pair(tv, beam[best])) best = k;
  }
  return best;
}

}  // namespace testsup
