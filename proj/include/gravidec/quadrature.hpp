#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gravidec::quad {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// 15-point Kronrod rule with the embedded 7-point Gauss rule on [a, b].
/// The returned error follows the QUADPACK heuristic.
QuadResult gauss_kronrod15(const Integrand& f, double a, double b);

/// Globally adaptive Gauss-Kronrod on a finite interval: repeatedly bisects
/// the sub-interval with the largest error until the summed error is below
/// max(abs_tol, rel_tol * |value|) or `max_intervals` is reached.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, double abs_tol,
                              double rel_tol = 0.0, std::size_t max_intervals = 2000);

/// Wynn's epsilon algorithm over a stream of partial sums.
class WynnEpsilon {
 public:
  struct Estimate {
    double value;
    double error;
  };

  Estimate push(double partial_sum);
  std::size_t size() const { return count_; }

 private:
  std::vector<double> diagonal_;
  std::vector<double> history_;
  std::size_t count_ = 0;
};

enum class Oscillation { cosine, sine };

/// Integral of f(x) cos(x) or f(x) sin(x) over [a, inf), f smooth and
/// decaying. Integrates between consecutive zeros of the trigonometric factor
/// and extrapolates the alternating partial sums with Wynn's epsilon.
QuadResult integrate_oscillatory_tail(const Integrand& f, Oscillation kind, double a,
                                      double abs_tol, std::size_t max_half_periods = 200000);

}  // namespace gravidec::quad
