#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cohres {

// I_n(R) = integral of y^n e^{-y}/n! over [0, R] and its complement
// Q_n(R) = 1 - I_n(R), for n = 0..max_n at fixed R.
//
// Q is the primary stored quantity: it is the cancellation-free Poisson
// prefix sum e^{-R} sum_{k<=n} R^k/k!, and it stays relatively accurate where
// I rounds to 1. I is derived from it by one subtraction at build time, never
// at read time.
struct GammaTable {
  double radius_sq = 0.0;
  std::vector<double> I;
  std::vector<double> Q;

  std::size_t max_n() const noexcept { return I.empty() ? 0 : I.size() - 1; }
};

GammaTable gamma_table(double radius_sq, std::size_t max_n);

// Poisson term R^n e^{-R}/n!; log-space above n = 20 to avoid overflow.
double poisson_term(double radius_sq, std::size_t n);

// Single accurate I_n(R). Uses the all-positive upper-tail series when
// R <= n+1, so values far below 1 ulp of 1 keep relative accuracy; otherwise
// the prefix-sum complement.
double lower_regularized(double radius_sq, std::size_t n);

// Independent adaptive-Simpson evaluation of I_n(R) with estimated absolute
// error <= tol; integrand evaluated in log space. Throws accuracy_error with
// the best estimate if the subdivision budget is exhausted.
double gamma_oracle(double radius_sq, std::size_t n, double tol);

// I_n(R) along strictly increasing radii; callers assert the monotone climb
// toward 1.
std::vector<double> gamma_limit_check(std::size_t n, std::span<const double> radii);

}  // namespace cohres
