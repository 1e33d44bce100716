#pragma once

#include <cstdint>
#include <random>

namespace smt {

// Seeded 64-bit generator with fully specified derived distributions, so the
// same seed yields the same instance on every platform and standard library.
class Rng {
 public:
  /// Recorded in benchmark CSV headers.
  static constexpr const char* kAlgorithm = "mt19937_64+lemire-bounded+53bit-unit";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound), unbiased (multiply-shift with rejection).
  std::uint64_t uniform_index(std::uint64_t bound) {
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// lo + (hi - lo)·u with u drawn from the top 53 bits.
  double uniform_real(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smt
