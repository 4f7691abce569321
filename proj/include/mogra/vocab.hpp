#pragma once

#include <string>
#include <vector>

namespace mogra {

// Token alphabet for generated sequences. Two sentinels are always present:
// BEGIN (id 0) pads decoding contexts at the start of a sequence, END (id 1)
// terminates generation. Content symbols occupy ids 2..size()-1.
class Vocabulary {
 public:
  static constexpr int kBegin = 0;
  static constexpr int kEnd = 1;

  // Content symbols in order; sentinels are added automatically.
  explicit Vocabulary(std::vector<std::string> content_symbols);

  // Default alphabet: 10 content symbols a..j (total size 12).
  static Vocabulary standard();

  int size() const { return static_cast<int>(symbols_.size()); }
  int content_count() const { return size() - 2; }
  const std::string& symbol(int id) const { return symbols_.at(id); }
  bool is_content(int id) const { return id >= 2 && id < size(); }

  // Id lookup; throws std::invalid_argument on unknown symbols.
  int id_of(const std::string& symbol) const;

  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
};

}  // namespace mogra
