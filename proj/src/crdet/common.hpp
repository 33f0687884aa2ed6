#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace crdet {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kPiSq = kPi * kPi;
// volume of S^3 under theta ^ dtheta with the standard contact form
inline constexpr double kVol = 4.0 * kPiSq;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeCapExceeded : Error {
  using Error::Error;
};

struct IllConditionedGram : Error {
  using Error::Error;
};

struct ModelFormatError : Error {
  using Error::Error;
};

// Pairwise reduction: deterministic and accurate for long quadrature sums.
inline double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline double pairwise_sum(std::span<const double> v) {
  return pairwise_sum(v.data(), v.size());
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

// Seeded generator with a platform-independent uniform double.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace crdet
