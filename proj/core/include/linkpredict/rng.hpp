// SPDX-License-Identifier: Apache-2.0
// Deterministic random number generation.
//
// All stochastic code in the library draws from this wrapper so that a seed
// fully determines every output, bit for bit, across platforms. mt19937_64
// has a standard-mandated sequence; the uniform and normal transforms below
// avoid std::uniform_real_distribution / std::normal_distribution, whose
// outputs are implementation-defined.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace linkpredict {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Box-Muller; the spare value is cached so draws pair up deterministically.
  double normal(double mean = 0.0, double sigma = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + sigma * spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    has_spare_ = true;
    return mean + sigma * mag * std::cos(ang);
  }

  // Decorrelated per-stream seed (splitmix64 finalizer), so one user seed can
  // drive several independent generators.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace linkpredict
