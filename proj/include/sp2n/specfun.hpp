#ifndef SP2N_SPECFUN_HPP
#define SP2N_SPECFUN_HPP

#include <cmath>
#include <complex>

#include "sp2n/core.hpp"

namespace sp2n {

namespace detail {

// Lanczos g=7, 9-term coefficient set; ~1e-13 relative over the reflected half-plane.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline Complex gamma_lanczos_core(Complex z) {
  // valid for Re(z) >= 0.5
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  Complex t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace detail

/// Distance from z to the nearest pole of Gamma (non-positive integers).
inline double pole_distance(Complex z) {
  double re = z.real();
  double k = std::round(re);
  if (k > 0.0) k = 0.0;
  return std::abs(z - Complex(k, 0.0));
}

/// Complex Gamma via Lanczos approximation, reflection for Re(z) < 1/2.
inline Complex cgamma(Complex z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return M_PI / (std::sin(M_PI * z) * detail::gamma_lanczos_core(1.0 - z));
  }
  return detail::gamma_lanczos_core(z);
}

/// Complex digamma: reflection for Re < 1/2, recurrence up to |Re| >= 12,
/// then the Bernoulli asymptotic series.  Independent of the Lanczos route
/// (the omega/kappa consistency checks rely on that).
inline Complex cdigamma(Complex z) {
  if (z.real() < 0.5) {
    // psi(1-z) - psi(z) = pi cot(pi z)
    return cdigamma(1.0 - z) - M_PI / std::tan(M_PI * z);
  }
  Complex acc = 0.0;
  while (z.real() < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  Complex inv = 1.0 / z;
  Complex inv2 = inv * inv;
  // psi(z) ~ ln z - 1/2z - sum B_{2k} / (2k z^{2k})
  static constexpr double b[7] = {1.0 / 12.0,  -1.0 / 120.0,    1.0 / 252.0, -1.0 / 240.0,
                                  1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  Complex series = 0.0;
  Complex p = inv2;
  for (int k = 0; k < 7; ++k) {
    series += b[k] * p;
    p *= inv2;
  }
  return acc + std::log(z) - 0.5 * inv - series;
}

}  // namespace sp2n

#endif
