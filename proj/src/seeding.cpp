#include "synthcorp/seeding.hpp"

#include "synthcorp/text.hpp"

#include <limits>
#include <string>

namespace synthcorp {

std::size_t SplitMix64::uniform(std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return static_cast<std::size_t>(v % bound);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::string bytes(8, '\0');
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((seed >> (8 * i)) & 0xff);
  bytes.append(label);
  return text::fnv1a64(bytes);
}

}  // namespace synthcorp
