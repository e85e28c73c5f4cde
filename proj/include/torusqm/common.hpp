#pragma once
// Shared numeric aliases, constants, and deterministic sampling helpers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>

namespace torusqm {

using Complex = std::complex<double>;
// Spec-facing name for a complex wavefunction value.
using ComplexAmplitude = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr Complex iunit{0.0, 1.0};

// Value together with the derivative w.r.t. the (single) argument.
struct ComplexValueDeriv {
  Complex value{};
  Complex deriv{};
};

// Deterministic uniform sampler. mt19937_64 is fully specified by the
// standard and the 53-bit mapping below avoids the implementation-defined
// std::uniform_real_distribution, so streams are reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

// 17-significant-digit formatting used for all numeric CLI output.
inline std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline double reduce_angle_2pi(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod can round to exactly two_pi for tiny negative inputs
  if (r >= two_pi) r -= two_pi;
  return r;
}

}  // namespace torusqm
