#pragma once

#include <cmath>
#include <cstdint>

#include "frontlab/vec.hpp"

namespace frontlab {

// splitmix64: tiny, fast, and trivially splittable.  All randomness in the
// library flows from one caller-provided seed through this generator, so a
// run is reproducible from its config alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Derive an independent stream; streams with distinct tags never collide
  // in practice.
  Rng split(std::uint64_t tag) {
    std::uint64_t s = next_u64();
    return Rng(s ^ (tag * 0xd6e8feb86659fd93ULL));
  }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    // Box-Muller; one value per call keeps the stream layout simple.
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Vec on_sphere(std::size_t d) {
    while (true) {
      Vec v(d);
      double n2 = 0.0;
      for (auto& x : v) {
        x = normal();
        n2 += x * x;
      }
      if (n2 > 1e-24) return (1.0 / std::sqrt(n2)) * v;
    }
  }

  Vec in_ball(std::size_t d, double radius = 1.0) {
    Vec v = on_sphere(d);
    double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(d));
    return r * v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace frontlab
