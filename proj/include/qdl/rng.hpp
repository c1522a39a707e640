#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qdl {

// Seeded uniform stream used for every random quantity in the library.
//
// Algorithm "mt19937_64/u53-v1": std::mt19937_64 seeded with the 64-bit seed
// directly, each draw mapped to ((x >> 11) + 0.5) * 2^-53, which lies strictly
// inside (0, 1). The engine is fully specified by the C++ standard, so streams
// are bit-identical across platforms. Normal variates use Box-Muller on two
// consecutive uniforms (no caching of the second variate).
class UniformStream {
public:
  static constexpr const char* kAlgorithm = "mt19937_64/u53-v1";

  explicit UniformStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  double uniform() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t seed() const { return seed_; }

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace qdl
