#pragma once

#include <stdexcept>
#include <string>

namespace gravidec {

/// A numerical procedure stopped before meeting its tolerance.
///
/// Carries the best value reached and the error estimate achieved so callers
/// can report partial results.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value, double achieved_error)
      : std::runtime_error(what), partial_(partial_value), achieved_(achieved_error) {}

  double partial_value() const noexcept { return partial_; }
  double achieved_error() const noexcept { return achieved_; }

 private:
  double partial_;
  double achieved_;
};

}  // namespace gravidec
