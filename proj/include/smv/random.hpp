#pragma once

// Seeded, platform-independent random streams. The standard library
// distributions are implementation-defined, so sampling is done by hand to
// keep campaigns bit-reproducible across toolchains.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace smv {

// Finalizer of splitmix64; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class splitmix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit splitmix64(std::uint64_t seed = 0) : state_(seed) {}

  constexpr std::uint64_t operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one normal per call, the partner is discarded.
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform_positive()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

 private:
  std::uint64_t state_;
};

// Independent stream for (seed, index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

inline splitmix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(derive_seed(seed, index));
}

// Standard complex normal: E|z|^2 = 1.
inline std::complex<double> complex_gaussian(splitmix64& rng) {
  const double re = rng.normal() * std::numbers::sqrt2 / 2;
  const double im = rng.normal() * std::numbers::sqrt2 / 2;
  return {re, im};
}

// Uniform on the annulus lo <= |z| <= hi (area measure).
inline std::complex<double> uniform_annulus(splitmix64& rng, double lo,
                                            double hi) {
  const double r = std::sqrt(rng.uniform(lo * lo, hi * hi));
  return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
}

inline std::complex<double> uniform_disk(splitmix64& rng) {
  return uniform_annulus(rng, 0.0, 1.0);
}

}  // namespace smv
