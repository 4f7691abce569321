#include "mogra/fingerprint.hpp"

#include <bit>
#include <stdexcept>

#include "mogra/util.hpp"

namespace mogra {

Fingerprint::Fingerprint(int width) : width_(width) {
  if (width <= 0 || (width & (width - 1)) != 0) {
    throw std::invalid_argument("fingerprint width must be a power of two");
  }
  words_.assign(static_cast<std::size_t>((width + 63) / 64), 0);
}

void Fingerprint::set(int bit) { words_[bit >> 6] |= (1ULL << (bit & 63)); }

bool Fingerprint::test(int bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1ULL; }

int Fingerprint::popcount() const {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

Fingerprint fingerprint_tokens(std::span<const int> tokens, int width) {
  Fingerprint fp(width);
  const std::uint64_t mask = static_cast<std::uint64_t>(width - 1);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    fp.set(static_cast<int>(hash_bigram(tokens[i], tokens[i + 1]) & mask));
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.width() != b.width()) {
    throw std::invalid_argument("fingerprint width mismatch");
  }
  int inter = 0;
  int uni = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    inter += std::popcount(a.words()[i] & b.words()[i]);
    uni += std::popcount(a.words()[i] | b.words()[i]);
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace mogra
