#include "qwalk/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::string_view component,
                             std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the label
  for (unsigned char ch : component) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::uint64_t s = mix64(master);
  s = mix64(s ^ h);
  s = mix64(s ^ index);
  return s;
}

int RngStream::geometric(double p) {
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("geometric: p must be in (0, 1]");
  if (p == 1.0) return 1;
  const double u = uniform();
  // Inversion of P(T > k) = (1-p)^k; u = 0 gives T = 1.
  const double k = std::floor(std::log1p(-u) / std::log1p(-p));
  if (!(k >= 0.0)) return 1;
  if (k >= 1e9) return 1000000000;  // larger than any usable horizon
  return 1 + static_cast<int>(k);
}

}  // namespace qwalk
