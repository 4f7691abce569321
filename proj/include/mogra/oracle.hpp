#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mogra/vocab.hpp"

namespace mogra {

// A property oracle: deterministic, total over token sequences, output
// bounded by the declared [lo, hi] range. Stands in for the external
// property predictors of the original setting.
struct Oracle {
  std::function<double(std::span<const int>)> fn;
  double lo = 0.0;
  double hi = 1.0;
};

class OracleRegistry {
 public:
  void add(const std::string& id, Oracle oracle);
  bool contains(const std::string& id) const;
  const Oracle& get(const std::string& id) const;  // throws on unknown id
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, Oracle> oracles_;
};

// Built-in synthetic oracle library. For each content symbol x the registry
// provides:
//   frac_x       fraction of content tokens equal to x, in [0,1]; 0 on empty
//   neg_frac_x   1 - frac_x (conflict partner of frac_x)
//   wide_frac_x  8 * frac_x, range [0,8] (a deliberately broad scale)
// plus:
//   len_norm     length / max_len, in [0,1]; 0 on empty
//   hash_smooth  0.5*(1+sin(2*pi*u)) with u a stable hash of the sequence
OracleRegistry builtin_registry(const Vocabulary& vocab, int max_len);

}  // namespace mogra
