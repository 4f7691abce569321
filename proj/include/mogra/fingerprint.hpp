#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mogra {

// Fixed-width bit vector built from hashed token bigrams. Plays the role a
// structural fingerprint plays for molecules: similarity between a source
// sequence and an edited one is measured on these bits.
class Fingerprint {
 public:
  static constexpr int kDefaultWidth = 2048;

  // width must be a power of two.
  explicit Fingerprint(int width = kDefaultWidth);

  int width() const { return width_; }
  void set(int bit);
  bool test(int bit) const;
  int popcount() const;
  bool any() const { return popcount() > 0; }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

 private:
  int width_;
  std::vector<std::uint64_t> words_;
};

// One bit per adjacent token bigram; stable across runs and platforms.
// A sequence with fewer than two tokens has no bigrams and hashes to the
// all-zero fingerprint.
Fingerprint fingerprint_tokens(std::span<const int> tokens, int width = Fingerprint::kDefaultWidth);

// |a AND b| / |a OR b|. Two all-zero fingerprints compare as 1.0: with no
// structure present there is nothing to differ on. Throws on width mismatch.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace mogra
