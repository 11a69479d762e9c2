#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace cohres {

// Raised when an integration cannot certify the requested tolerance within
// its subdivision budget; carries the best available estimate.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

// Adaptive Simpson quadrature of f over [a, b] with interval bisection and a
// Richardson error estimate: a subinterval is accepted when
// |S2 - S1|/15 <= local tol, and the returned value includes the Richardson
// correction. The budget caps the total number of bisections.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, std::size_t max_bisections = std::size_t{1} << 20);

}  // namespace cohres
