#include "cohres/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cohres/adaptive_simpson.hpp"
#include "cohres/compensated.hpp"
#include "cohres/fock.hpp"

namespace cohres {

double poisson_term(double radius_sq, std::size_t n) {
  if (n == 0) {
    return std::exp(-radius_sq);
  }
  if (radius_sq == 0.0) {
    return 0.0;
  }
  return std::exp(static_cast<double>(n) * std::log(radius_sq) - ln_factorial(n) - radius_sq);
}

GammaTable gamma_table(double radius_sq, std::size_t max_n) {
  if (!(radius_sq >= 0.0) || !std::isfinite(radius_sq)) {
    throw std::invalid_argument("gamma_table: radius_sq must be finite and >= 0");
  }
  GammaTable table;
  table.radius_sq = radius_sq;
  table.I.resize(max_n + 1);
  table.Q.resize(max_n + 1);
  NeumaierSum prefix;
  double prev_q = 0.0;
  for (std::size_t n = 0; n <= max_n; ++n) {
    prefix.add(poisson_term(radius_sq, n));
    // Clamp into [prev_q, 1] so the stored table satisfies the monotonicity
    // and range invariants exactly, not merely to rounding.
    const double q = std::max(prev_q, std::min(prefix.value(), 1.0));
    table.Q[n] = q;
    table.I[n] = 1.0 - q;
    prev_q = q;
  }
  return table;
}

double lower_regularized(double radius_sq, std::size_t n) {
  if (!(radius_sq >= 0.0) || !std::isfinite(radius_sq)) {
    throw std::invalid_argument("lower_regularized: radius_sq must be finite and >= 0");
  }
  if (radius_sq == 0.0) {
    return 0.0;
  }
  if (radius_sq > static_cast<double>(n) + 1.0) {
    // I is not small here; the complement of the prefix sum is accurate.
    NeumaierSum prefix;
    for (std::size_t k = 0; k <= n; ++k) {
      prefix.add(poisson_term(radius_sq, k));
    }
    return 1.0 - std::min(prefix.value(), 1.0);
  }
  // Upper-tail series I_n(R) = e^{-R} sum_{k>n} R^k/k!: all positive terms
  // with ratio R/(k+1) < 1, so tiny values keep relative accuracy.
  NeumaierSum tail;
  double term = poisson_term(radius_sq, n + 1);
  std::size_t k = n + 1;
  while (term > 0.0) {
    tail.add(term);
    ++k;
    term *= radius_sq / static_cast<double>(k);
    if (term < tail.value() * 1e-18 || k > n + 100000) {
      tail.add(term);
      break;
    }
  }
  return std::min(tail.value(), 1.0);
}

double gamma_oracle(double radius_sq, std::size_t n, double tol) {
  if (!(radius_sq >= 0.0) || !std::isfinite(radius_sq)) {
    throw std::invalid_argument("gamma_oracle: radius_sq must be finite and >= 0");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("gamma_oracle: tol must be positive");
  }
  if (radius_sq == 0.0) {
    return 0.0;
  }
  const double log_fact = ln_factorial(n);
  const auto integrand = [n, log_fact](double y) {
    if (y <= 0.0) {
      return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(static_cast<double>(n) * std::log(y) - y - log_fact);
  };
  return adaptive_simpson(integrand, 0.0, radius_sq, tol);
}

std::vector<double> gamma_limit_check(std::size_t n, std::span<const double> radii) {
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (!(radii[i] < radii[i + 1])) {
      throw std::invalid_argument("gamma_limit_check: radii must be strictly increasing");
    }
  }
  std::vector<double> values;
  values.reserve(radii.size());
  for (const double radius_sq : radii) {
    values.push_back(lower_regularized(radius_sq, n));
  }
  return values;
}

}  // namespace cohres
