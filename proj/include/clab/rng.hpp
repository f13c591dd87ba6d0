#pragma once

// Seeded streams with portable transforms: std::mt19937_64 is fully
// specified, the <random> distributions are not.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace clab {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed, std::uint64_t index = 0)
      : eng_(splitmix64(seed ^ splitmix64(index))) {}

  // [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double normal() {
    const double u = 1.0 - uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2 * std::numbers::pi * v);
  }
  // Beta(1/2, 1/2)
  double arcsine() {
    const double s = std::sin(0.5 * std::numbers::pi * uniform());
    return s * s;
  }
  double sign() { return (eng_() >> 63) ? -1.0 : 1.0; }
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace clab
