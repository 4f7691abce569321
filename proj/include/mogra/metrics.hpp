#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mogra/property.hpp"

namespace mogra {

// A (source, generated) pair under one task; both candidates carry cached
// property vectors for that task's oracles (the generated one only when
// valid).
struct EvalPair {
  Candidate source;
  Candidate generated;
  const TaskSpec* task = nullptr;
};

EvalPair make_eval_pair(const Candidate& source, const Candidate& generated, const TaskSpec& task,
                        const OracleRegistry& registry);

struct MetricsReport {
  double sor = 0.0;
  double ssor = 0.0;
  double sim = 0.0;
  double ri = 0.0;
  std::size_t n = 0;
};

// Success indicator for one pair: every improve property gains at least its
// margin in the desired direction and every stabilize property deviates at
// most its margin (both inequalities non-strict). Invalid generated
// candidates fail.
bool sor_pass(const EvalPair& pair);

// Strict indicator: sor_pass and, in addition, every property of the
// generated candidate meets its near-optimal threshold in its direction.
bool ssor_pass(const EvalPair& pair, bool gated_on_sor = true);

// Per-pair mean directional relative change over the improve set. Zero for
// invalid generated candidates and for empty improve sets. Source values of
// magnitude zero fall back to a 1e-8 denominator; *guard_events counts how
// often that happened.
double pair_ri(const EvalPair& pair, std::size_t* guard_events = nullptr);

// Fractions / means over a pair list. All four are permutation-invariant
// and throw on empty input.
double sor(std::span<const EvalPair> pairs);
double ssor(std::span<const EvalPair> pairs, bool gated_on_sor = true);
double ri(std::span<const EvalPair> pairs, std::size_t* guard_events = nullptr);

// Mean fingerprint similarity over pairs whose generated candidate is
// valid; throws when none is.
double similarity_avg(std::span<const EvalPair> pairs, int fp_width = Fingerprint::kDefaultWidth);

MetricsReport compute_metrics(std::span<const EvalPair> pairs, bool ssor_gated = true,
                              int fp_width = Fingerprint::kDefaultWidth,
                              std::size_t* ri_guard_events = nullptr);

// Candidate selection over a ranked beam: the max-RI member of the
// SOR-compliant subset when it is nonempty, otherwise the max-RI valid
// member of the whole beam. Ties keep the earlier (higher-ranked) entry.
// When the beam holds no valid candidate at all, the top-ranked entry is
// returned as-is. The returned index points into `beam`.
std::size_t select_candidate_index(const Candidate& source, std::span<const Candidate> beam,
                                   const TaskSpec& task, const OracleRegistry& registry);

Candidate select_candidate(const Candidate& source, std::span<const Candidate> beam,
                           const TaskSpec& task, const OracleRegistry& registry);

}  // namespace mogra
