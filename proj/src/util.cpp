#include "mogra/util.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace mogra {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_tokens(std::span<const int> tokens) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;  // arbitrary fixed seed
  for (int t : tokens) {
    h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(t)));
  }
  return h;
}

std::uint64_t hash_bigram(int a, int b) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)));
  return mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(b)));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

}  // namespace mogra
