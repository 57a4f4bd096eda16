#pragma once

#include <cstdint>
#include <random>

namespace scatterbound {

//! Deterministic uniform generator used by tests and seeded jobs.
//! Draws come from mt19937_64; the top 53 bits map to [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  //! Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  //! Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  //! Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace scatterbound
