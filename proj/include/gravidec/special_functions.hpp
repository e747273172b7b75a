#pragma once

#include <complex>

namespace gravidec::special {

/// Digamma function for complex argument with Re z > 0.
std::complex<double> digamma(std::complex<double> z);

/// log(1 + w) without cancellation for small |w|; principal branch.
std::complex<double> log1p(std::complex<double> w);

/// log(1 + w) / w, equal to 1 at w = 0.
std::complex<double> log1p_ratio(std::complex<double> w);

}  // namespace gravidec::special
