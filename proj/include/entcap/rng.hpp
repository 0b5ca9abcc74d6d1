// Seeded counter-style generator used everywhere randomness is needed.
//
// The exact algorithm is part of the output contract (results must be
// reproducible across reruns, thread counts, and reimplementations):
//   * stream: SplitMix64 -- state += 0x9e3779b97f4a7c15, then the
//     xor-shift-multiply finaliser of Steele/Lea/Flood.
//   * uniforms: top 53 bits / 2^53, in [0, 1).
//   * normals: Box-Muller on (u1, u2] x [0, 1), pairs cached, cosine
//     branch returned first.
//   * complex normals: (x + iy)/sqrt(2) with x, y standard normal, so
//     E|z|^2 = 1.
//   * per-sample streams: derive(seed, k) feeds sample k of a suite.

#ifndef ENTCAP_RNG_HPP
#define ENTCAP_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace entcap {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // [0, 1)
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 =
        static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

  std::complex<double> next_complex_normal() {
    const double re = next_normal();
    const double im = next_normal();
    return {re * 0.7071067811865476, im * 0.7071067811865476};
  }

  // Independent stream for sample `index` of a suite seeded with `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace entcap

#endif  // ENTCAP_RNG_HPP
