#ifndef GROUPTEST_RNG_HPP
#define GROUPTEST_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "grouptest/types.hpp"

namespace grouptest {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Trial t of cell c draws its seed from the base by xor-mixing; trials are
// independent streams regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t trial) {
  return base ^ splitmix64((cell << 32) ^ trial ^ 0xD1B54A32D192ED03ULL);
}

// mt19937_64 with explicit uniform/gaussian mappings.  The std distributions
// are implementation-defined; these mappings keep streams reproducible across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  Complex complex_gaussian() {
    return Complex(gaussian(), gaussian()) / std::sqrt(2.0);
  }

  // Uniform on the closed unit disk.
  Complex unit_disk() {
    const double r = std::sqrt(uniform01());
    const double t = 2.0 * M_PI * uniform01();
    return Complex(r * std::cos(t), r * std::sin(t));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace grouptest

#endif
