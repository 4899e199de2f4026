#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kreg {

// Seed splitting: every random stream of an experiment is seeded with
//   derive_seed(master, name) = splitmix64(master ^ fnv1a64(name))
// where name is one of the stream names below. Streams never share state.
namespace streams {
inline constexpr std::string_view kSequence = "sequence";
inline constexpr std::string_view kTarget = "target";
inline constexpr std::string_view kHolder = "holder";
}  // namespace streams

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream);

// Thin wrapper over mt19937_64 with a portable uniform-double mapping
// (std::uniform_real_distribution is implementation defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace kreg
