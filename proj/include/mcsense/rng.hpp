#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "mcsense/types.hpp"

namespace mcsense {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent stream seeds from tuples.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto p : parts) h = mix64(h ^ mix64(p));
  return h;
}

inline std::uint64_t seed_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(double variance) : dist_(0.0, std::sqrt(variance / 2.0)) {}

  Complex operator()(Rng& rng) {
    const double re = dist_(rng);
    const double im = dist_(rng);
    return {re, im};
  }

 private:
  std::normal_distribution<double> dist_;
};

}  // namespace mcsense
