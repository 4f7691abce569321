#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>

namespace mogra {

// splitmix64 finalizer. Used wherever we need a hash that is stable across
// platforms and standard-library implementations (std::hash is not).
std::uint64_t mix64(std::uint64_t x);

// Order-dependent hash of a token sequence.
std::uint64_t hash_tokens(std::span<const int> tokens);

// Hash of an adjacent token pair.
std::uint64_t hash_bigram(int a, int b);

// Uniform double in [0,1) with 53 random bits. We never use
// std::uniform_real_distribution: its output is implementation-defined.
double uniform01(std::mt19937_64& rng);

// Locale-independent decimal rendering with 9 significant digits.
// This is the fixed numeric format of every DSV file the harness emits.
std::string format_double(double v);

// Inverse of format_double (strict; throws on junk).
double parse_double(const std::string& s);

}  // namespace mogra
