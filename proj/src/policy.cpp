#include "mogra/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mogra/util.hpp"

namespace mogra {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

Policy::Policy(Vocabulary vocab, int order) : vocab_(std::move(vocab)), order_(order) {
  if (order != 1 && order != 2) throw std::invalid_argument("policy order must be 1 or 2");
  if (vocab_.size() < 3) throw std::invalid_argument("vocabulary too small");
  num_contexts_ = 1;
  for (int i = 0; i < order_; ++i) num_contexts_ *= vocab_.size();
  logits_.assign(static_cast<std::size_t>(num_contexts_) * vocab_.size(), 0.0);
}

int Policy::context_index(std::span<const int> prefix) const {
  const int v = vocab_.size();
  auto at = [&](int back) {
    const auto n = static_cast<int>(prefix.size());
    return back <= n ? prefix[n - back] : Vocabulary::kBegin;
  };
  if (order_ == 1) return at(1);
  return at(2) * v + at(1);
}

std::vector<double> Policy::row_log_probs(int ctx) const {
  const int v = vocab_.size();
  const double* row = logits_.data() + static_cast<std::size_t>(ctx) * v;
  double m = kNegInf;
  for (int i = 1; i < v; ++i) m = std::max(m, row[i]);
  double sum = 0.0;
  for (int i = 1; i < v; ++i) sum += std::exp(row[i] - m);
  const double log_z = m + std::log(sum);
  std::vector<double> out(static_cast<std::size_t>(v));
  out[Vocabulary::kBegin] = kNegInf;
  for (int i = 1; i < v; ++i) out[i] = row[i] - log_z;
  return out;
}

void Policy::apply_gradient(std::span<const double> grad, double learning_rate) {
  if (grad.size() != logits_.size()) {
    throw std::invalid_argument("apply_gradient: gradient shape mismatch");
  }
  for (double g : grad) {
    if (!std::isfinite(g)) throw std::invalid_argument("apply_gradient: non-finite gradient entry");
  }
  for (std::size_t i = 0; i < logits_.size(); ++i) logits_[i] -= learning_rate * grad[i];
  ++version_;
}

void Policy::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  out << "mogra-policy 1\n";
  out << "order " << order_ << "\n";
  out << "vocab";
  for (int i = 2; i < vocab_.size(); ++i) out << ' ' << vocab_.symbol(i);
  out << "\n";
  out << "version " << version_ << "\n";
  out << "rows " << num_contexts_ << " cols " << vocab_.size() << "\n";
  out.precision(17);
  for (int c = 0; c < num_contexts_; ++c) {
    for (int t = 0; t < vocab_.size(); ++t) {
      if (t) out << ' ';
      out << logit_at(c, t);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

Policy Policy::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string magic;
  int format = 0;
  in >> magic >> format;
  if (magic != "mogra-policy" || format != 1) {
    throw std::runtime_error("not a policy checkpoint: " + path);
  }
  std::string key;
  int order = 0;
  in >> key >> order;
  if (key != "order") throw std::runtime_error("malformed checkpoint (order): " + path);
  in >> key;
  if (key != "vocab") throw std::runtime_error("malformed checkpoint (vocab): " + path);
  std::string rest;
  std::getline(in, rest);
  std::istringstream symstream(rest);
  std::vector<std::string> content;
  for (std::string s; symstream >> s;) content.push_back(s);
  std::uint64_t version = 0;
  in >> key >> version;
  if (key != "version") throw std::runtime_error("malformed checkpoint (version): " + path);
  int rows = 0, cols = 0;
  std::string colkey;
  in >> key >> rows >> colkey >> cols;
  if (key != "rows" || colkey != "cols") {
    throw std::runtime_error("malformed checkpoint (shape): " + path);
  }
  Policy p(Vocabulary(std::move(content)), order);
  if (rows != p.num_contexts_ || cols != p.vocab_.size()) {
    throw std::runtime_error("checkpoint shape does not match vocabulary: " + path);
  }
  for (auto& l : p.logits_) {
    if (!(in >> l)) throw std::runtime_error("truncated checkpoint: " + path);
  }
  p.version_ = version;
  return p;
}

bool Policy::same_shape(const Policy& other) const {
  return order_ == other.order_ && vocab_.symbols() == other.vocab_.symbols();
}

std::vector<int> Episode::content() const {
  std::vector<int> out = actions;
  if (!out.empty() && out.back() == Vocabulary::kEnd) out.pop_back();
  return out;
}

Candidate Episode::to_candidate() const { return Candidate::from_tokens(content()); }

double Episode::total_logp() const {
  double s = 0.0;
  for (double v : logp) s += v;
  return s;
}

std::vector<Episode> sample_group(const Policy& policy, int group_size, int max_len,
                                  std::mt19937_64& rng) {
  if (group_size < 2) throw std::invalid_argument("sample_group: group size must be >= 2");
  if (max_len < 1) throw std::invalid_argument("sample_group: max_len must be >= 1");
  std::vector<Episode> group;
  group.reserve(group_size);
  const int v = policy.vocab().size();
  for (int g = 0; g < group_size; ++g) {
    Episode ep;
    std::vector<int> prefix;
    for (int step = 0; step < max_len; ++step) {
      const auto logp = policy.row_log_probs(policy.context_index(prefix));
      const double u = uniform01(rng);
      double cum = 0.0;
      int chosen = v - 1;
      for (int t = 1; t < v; ++t) {
        cum += std::exp(logp[t]);
        if (u < cum) {
          chosen = t;
          break;
        }
      }
      ep.actions.push_back(chosen);
      ep.logp.push_back(logp[chosen]);
      if (chosen == Vocabulary::kEnd) break;
      prefix.push_back(chosen);
    }
    ep.truncated = ep.actions.empty() || ep.actions.back() != Vocabulary::kEnd;
    group.push_back(std::move(ep));
  }
  return group;
}

std::vector<double> log_prob(const Policy& policy, std::span<const int> actions) {
  std::vector<double> out;
  out.reserve(actions.size());
  std::vector<int> prefix;
  for (int a : actions) {
    if (a <= Vocabulary::kBegin || a >= policy.vocab().size()) {
      throw std::invalid_argument("log_prob: token outside the emittable vocabulary");
    }
    out.push_back(policy.row_log_probs(policy.context_index(prefix))[a]);
    prefix.push_back(a);
  }
  return out;
}

namespace {

// Beam hypothesis. Completed ones (END emitted or max_len reached) stay in
// the pool and compete with partials on equal terms, so a width of one
// reproduces greedy decoding exactly.
struct Hypothesis {
  std::vector<int> actions;
  double logp = 0.0;
  bool completed = false;
  bool truncated = false;

  bool operator<(const Hypothesis& other) const {
    if (logp != other.logp) return logp > other.logp;
    return actions < other.actions;  // lexicographic tie-break
  }
};

}  // namespace

std::vector<Episode> beam_search(const Policy& policy, int width, int max_len) {
  if (width < 1) throw std::invalid_argument("beam_search: width must be >= 1");
  if (max_len < 1) throw std::invalid_argument("beam_search: max_len must be >= 1");
  const int v = policy.vocab().size();

  std::vector<Hypothesis> pool{Hypothesis{}};
  for (int step = 0; step < max_len; ++step) {
    bool any_partial = false;
    std::vector<Hypothesis> next;
    for (const auto& hyp : pool) {
      if (hyp.completed) {
        next.push_back(hyp);
        continue;
      }
      any_partial = true;
      const auto logp = policy.row_log_probs(policy.context_index(hyp.actions));
      for (int t = 1; t < v; ++t) {
        Hypothesis h = hyp;
        h.actions.push_back(t);
        h.logp += logp[t];
        if (t == Vocabulary::kEnd) {
          h.completed = true;
        } else if (step + 1 == max_len) {
          // max_len reached: the sequence completes without an END factor
          h.completed = true;
          h.truncated = true;
        }
        next.push_back(std::move(h));
      }
    }
    if (!any_partial) break;
    std::stable_sort(next.begin(), next.end());
    if (static_cast<int>(next.size()) > width) next.resize(width);
    pool = std::move(next);
  }

  std::vector<Episode> out;
  for (const auto& hyp : pool) {
    if (!hyp.completed) continue;
    Episode ep;
    ep.actions = hyp.actions;
    ep.logp = log_prob(policy, ep.actions);
    ep.truncated = hyp.truncated;
    out.push_back(std::move(ep));
  }
  return out;
}

}  // namespace mogra
