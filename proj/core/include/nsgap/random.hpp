#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>

namespace nsgap {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

// Counter-based generator: the k-th draw is a hash of (key, k). Child
// streams are derived by hashing an index into the key, so work split across
// threads draws the same numbers regardless of scheduling.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ 0x6A09E667F3BCC909ULL)) {}

  Rng split(std::uint64_t index) const {
    Rng child(0);
    child.key_ = mix64(key_ ^ mix64(index + 0x632BE59BD9B4E019ULL));
    return child;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11U) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal by Box-Muller; no cached second variate.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer in [0, n).
  std::size_t below(std::size_t n) {
    __extension__ using wide = unsigned __int128;
    return static_cast<std::size_t>((static_cast<wide>((*this)()) * n) >> 64U);
  }

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace nsgap
