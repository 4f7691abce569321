#include "mogra/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mogra/util.hpp"

namespace mogra {

void OracleRegistry::add(const std::string& id, Oracle oracle) {
  if (oracles_.count(id)) throw std::invalid_argument("duplicate oracle id '" + id + "'");
  oracles_[id] = std::move(oracle);
}

bool OracleRegistry::contains(const std::string& id) const { return oracles_.count(id) > 0; }

const Oracle& OracleRegistry::get(const std::string& id) const {
  auto it = oracles_.find(id);
  if (it == oracles_.end()) throw std::invalid_argument("unresolved oracle id '" + id + "'");
  return it->second;
}

std::vector<std::string> OracleRegistry::ids() const {
  std::vector<std::string> out;
  out.reserve(oracles_.size());
  for (const auto& [id, _] : oracles_) out.push_back(id);
  return out;
}

namespace {

double token_fraction(std::span<const int> tokens, int target) {
  if (tokens.empty()) return 0.0;
  int n = 0;
  for (int t : tokens) {
    if (t == target) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(tokens.size());
}

}  // namespace

OracleRegistry builtin_registry(const Vocabulary& vocab, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  OracleRegistry reg;
  for (int id = 2; id < vocab.size(); ++id) {
    const std::string& sym = vocab.symbol(id);
    reg.add("frac_" + sym,
            Oracle{[id](std::span<const int> t) { return token_fraction(t, id); }, 0.0, 1.0});
    reg.add("neg_frac_" + sym,
            Oracle{[id](std::span<const int> t) { return 1.0 - token_fraction(t, id); }, 0.0, 1.0});
    reg.add("wide_frac_" + sym,
            Oracle{[id](std::span<const int> t) { return 8.0 * token_fraction(t, id); }, 0.0, 8.0});
  }
  reg.add("len_norm", Oracle{[max_len](std::span<const int> t) {
                               return static_cast<double>(t.size()) / static_cast<double>(max_len);
                             },
                             0.0, 1.0});
  reg.add("hash_smooth", Oracle{[](std::span<const int> t) {
                                  double u = static_cast<double>(hash_tokens(t) >> 11) * 0x1.0p-53;
                                  return 0.5 * (1.0 + std::sin(2.0 * std::numbers::pi * u));
                                },
                                0.0, 1.0});
  return reg;
}

}  // namespace mogra
