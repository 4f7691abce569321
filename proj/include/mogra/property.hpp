#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mogra/fingerprint.hpp"
#include "mogra/oracle.hpp"

namespace mogra {

// One named objective. direction +1 means higher values are better, -1 the
// opposite. delta is the improvement / stability margin, theta the
// near-optimal threshold.
struct PropertySpec {
  std::string name;
  int direction = +1;
  double delta = 0.0;
  double theta = 0.0;
  std::string oracle_id;

  void validate() const;  // direction in {+1,-1}, delta > 0
};

// A generated (or source) token sequence. Validity is grammatical
// well-formedness; here a sequence is well-formed iff it has at least one
// content token. Invalid candidates carry no property vector: they receive
// total reward 0 and count as failures in the success metrics.
struct Candidate {
  std::vector<int> tokens;
  bool valid = false;
  std::optional<std::vector<double>> props;
  std::optional<Fingerprint> fp;

  static Candidate from_tokens(std::vector<int> tokens);
};

// Charter for one optimization episode: the source sequence, the property
// list, and the derived improve/stabilize partition with per-property
// targets T_p (improve) and bands [L_p, U_p] (stabilize).
struct TaskSpec {
  Candidate source;
  std::vector<PropertySpec> properties;
  std::vector<std::string> improve_set;
  std::vector<std::string> stabilize_set;
  std::map<std::string, double> targets;
  std::map<std::string, std::pair<double, double>> bands;
  int max_len = 0;

  bool is_improve(const std::string& name) const;
  const PropertySpec& spec(const std::string& name) const;
  std::size_t property_index(const std::string& name) const;
};

// Splits property indices by comparing each source value against its
// threshold in the property's direction. A value meeting the threshold
// (better than or equal) is near-optimal and lands in the stabilize set.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> partition_properties(
    std::span<const double> source_values, std::span<const PropertySpec> specs);

// Builds the full TaskSpec for a source sequence: evaluates the source,
// partitions the properties, and derives targets and bands
//   improve:   T_p = p(source) + direction * delta
//   stabilize: [L_p, U_p] = [p(source) - delta, p(source) + delta]
TaskSpec make_task(Candidate source, std::vector<PropertySpec> specs,
                   const OracleRegistry& registry, int max_len);

// Evaluates all task properties on a valid candidate, in task property
// order, caching the vector on the candidate. Throws on invalid candidates
// and unresolved oracle ids.
const std::vector<double>& eval_properties(Candidate& cand, const TaskSpec& task,
                                           const OracleRegistry& registry);

// Fingerprint accessor with the same caching behavior.
const Fingerprint& ensure_fingerprint(Candidate& cand, int width = Fingerprint::kDefaultWidth);

}  // namespace mogra
