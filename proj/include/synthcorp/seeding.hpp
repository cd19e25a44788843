#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace synthcorp {

// SplitMix64 generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n). n must be positive.
  std::size_t uniform(std::size_t n);

 private:
  std::uint64_t state_;
};

// Stage sub-seed: FNV-1a-64 over (seed as 8 little-endian bytes || label).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

// Sub-seed labels used by the pipeline stages.
namespace seed_labels {
inline constexpr std::string_view translator = "translator";
inline constexpr std::string_view stall = "propagate.stall";
inline constexpr std::string_view negatives = "tasks.negatives";
inline constexpr std::string_view split = "finetune.split";
}  // namespace seed_labels

}  // namespace synthcorp
