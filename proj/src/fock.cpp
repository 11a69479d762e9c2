#include "cohres/fock.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "cohres/compensated.hpp"

namespace cohres {

namespace {

bool finite(ComplexAmplitude z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// n! is exact in uint64 up to n = 20; ln of it beats lgamma's few-ulp error
// in the range where coefficients are largest.
constexpr std::uint64_t exact_factorials[] = {
    1ull,
    1ull,
    2ull,
    6ull,
    24ull,
    120ull,
    720ull,
    5040ull,
    40320ull,
    362880ull,
    3628800ull,
    39916800ull,
    479001600ull,
    6227020800ull,
    87178291200ull,
    1307674368000ull,
    20922789888000ull,
    355687428096000ull,
    6402373705728000ull,
    121645100408832000ull,
    2432902008176640000ull};

}  // namespace

FockVector::FockVector(std::vector<ComplexAmplitude> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!finite(c)) {
      throw std::invalid_argument("FockVector: coefficients must be finite");
    }
  }
}

FockVector FockVector::zero(std::size_t dim) {
  return FockVector(std::vector<ComplexAmplitude>(dim, ComplexAmplitude{0.0, 0.0}));
}

FockVector FockVector::basis(std::size_t m, std::size_t dim) {
  if (m >= dim) {
    throw std::invalid_argument("FockVector::basis: mode index must be below dim");
  }
  std::vector<ComplexAmplitude> c(dim, ComplexAmplitude{0.0, 0.0});
  c[m] = ComplexAmplitude{1.0, 0.0};
  return FockVector(std::move(c));
}

double ln_factorial(std::size_t n) {
  if (n <= 20) {
    return std::log(static_cast<double>(exact_factorials[n]));
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

FockVector coherent_coefficients(ComplexAmplitude alpha, std::size_t dim) {
  if (dim < 1) {
    throw std::invalid_argument("coherent_coefficients: dim must be >= 1");
  }
  if (!finite(alpha)) {
    throw std::invalid_argument("coherent_coefficients: alpha must be finite");
  }
  const double mag = std::abs(alpha);
  std::vector<ComplexAmplitude> c(dim, ComplexAmplitude{0.0, 0.0});
  const double half_norm_sq = 0.5 * mag * mag;
  c[0] = ComplexAmplitude{std::exp(-half_norm_sq), 0.0};
  if (mag == 0.0) {
    return FockVector(std::move(c));
  }
  const double log_mag = std::log(mag);
  const double phase_step = std::arg(alpha);
  for (std::size_t n = 1; n < dim; ++n) {
    const double log_coeff =
        -half_norm_sq + static_cast<double>(n) * log_mag - 0.5 * ln_factorial(n);
    c[n] = std::polar(std::exp(log_coeff), static_cast<double>(n) * phase_step);
  }
  return FockVector(std::move(c));
}

ComplexAmplitude inner(const FockVector& lhs, const FockVector& rhs) {
  const std::size_t shared = std::min(lhs.dim(), rhs.dim());
  ComplexNeumaierSum acc;
  for (std::size_t n = 0; n < shared; ++n) {
    acc.add(std::conj(lhs[n]) * rhs[n]);
  }
  return acc.value();
}

double norm_sq(const FockVector& v) {
  NeumaierSum acc;
  for (std::size_t n = 0; n < v.dim(); ++n) {
    acc.add(std::norm(v[n]));
  }
  return acc.value();
}

double norm(const FockVector& v) { return std::sqrt(norm_sq(v)); }

double distance(const FockVector& lhs, const FockVector& rhs) {
  const std::size_t dim = std::max(lhs.dim(), rhs.dim());
  NeumaierSum acc;
  for (std::size_t n = 0; n < dim; ++n) {
    const ComplexAmplitude l = n < lhs.dim() ? lhs[n] : ComplexAmplitude{0.0, 0.0};
    const ComplexAmplitude r = n < rhs.dim() ? rhs[n] : ComplexAmplitude{0.0, 0.0};
    acc.add(std::norm(l - r));
  }
  return std::sqrt(acc.value());
}

}  // namespace cohres
