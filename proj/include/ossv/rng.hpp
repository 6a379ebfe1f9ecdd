#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ossv {

// Deterministic standard-normal stream.  Box-Muller over mt19937_64 keeps
// the sequence identical across standard libraries; std::normal_distribution
// does not pin its algorithm, which would break byte-identical reports.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Uniform draw in (0,1].
  double uniform_open() {
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846264338327950288;

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ossv
