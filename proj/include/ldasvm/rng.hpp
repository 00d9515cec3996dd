#ifndef LDASVM_RNG_HPP
#define LDASVM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ldasvm {

/// 64-bit linear congruential generator (Knuth's MMIX constants). Output is
/// identical on every platform, unlike the std distributions.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) { next(); }

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    // Low bits of an LCG are weak; hand out a xorshifted high word.
    std::uint64_t z = state_;
    z ^= z >> 33;
    return z;
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return (next() >> 11) % bound; }

  /// Uniform real in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace ldasvm

#endif  // LDASVM_RNG_HPP
