#include "gravidec/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace gravidec::special {

std::complex<double> digamma(std::complex<double> z) {
  if (!(z.real() > 0.0)) throw std::domain_error("complex digamma implemented for Re z > 0 only");
  std::complex<double> shift{0.0, 0.0};
  while (std::abs(z) < 12.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  // Asymptotic series in 1/z^2 with B_{2k} / (2k).
  static constexpr double kCoeff[] = {1.0 / 12.0,  -1.0 / 120.0,        1.0 / 252.0, -1.0 / 240.0,
                                      1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  const std::complex<double> inv2 = 1.0 / (z * z);
  std::complex<double> series{0.0, 0.0};
  for (int k = 6; k >= 0; --k) series = (series + kCoeff[k]) * inv2;
  return shift + std::log(z) - 0.5 / z - series;
}

std::complex<double> log1p(std::complex<double> w) {
  const double x = w.real();
  const double y = w.imag();
  const double re = 0.5 * std::log1p(x * (2.0 + x) + y * y);
  const double im = std::atan2(y, 1.0 + x);
  return {re, im};
}

std::complex<double> log1p_ratio(std::complex<double> w) {
  if (std::abs(w) < 1e-6) return 1.0 - w * (0.5 - w / 3.0);
  return log1p(w) / w;
}

}  // namespace gravidec::special
