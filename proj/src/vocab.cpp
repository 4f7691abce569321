#include "mogra/vocab.hpp"

#include <stdexcept>

namespace mogra {

Vocabulary::Vocabulary(std::vector<std::string> content_symbols) {
  if (content_symbols.empty()) {
    throw std::invalid_argument("vocabulary needs at least one content symbol");
  }
  symbols_.reserve(content_symbols.size() + 2);
  symbols_.push_back("^");
  symbols_.push_back("$");
  for (auto& s : content_symbols) {
    if (s.empty() || s == "^" || s == "$") {
      throw std::invalid_argument("bad content symbol '" + s + "'");
    }
    for (const auto& prev : symbols_) {
      if (prev == s) throw std::invalid_argument("duplicate symbol '" + s + "'");
    }
    symbols_.push_back(std::move(s));
  }
}

Vocabulary Vocabulary::standard() {
  std::vector<std::string> content;
  for (char c = 'a'; c <= 'j'; ++c) content.emplace_back(1, c);
  return Vocabulary(std::move(content));
}

int Vocabulary::id_of(const std::string& symbol) const {
  for (int i = 0; i < size(); ++i) {
    if (symbols_[i] == symbol) return i;
  }
  throw std::invalid_argument("unknown symbol '" + symbol + "'");
}

}  // namespace mogra
