#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cohres {

using ComplexAmplitude = std::complex<double>;

// Finite Fock-space coefficient vector c_0..c_N; every coefficient is
// validated finite on construction.
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::vector<ComplexAmplitude> coeffs);

  static FockVector zero(std::size_t dim);
  static FockVector basis(std::size_t m, std::size_t dim);

  std::size_t dim() const noexcept { return coeffs_.size(); }
  const ComplexAmplitude& operator[](std::size_t n) const noexcept { return coeffs_[n]; }
  const std::vector<ComplexAmplitude>& coeffs() const noexcept { return coeffs_; }

 private:
  std::vector<ComplexAmplitude> coeffs_;
};

// ln(n!), exact-integer-factorial based for n <= 20, log-gamma above.
double ln_factorial(std::size_t n);

// c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), n = 0..dim-1, evaluated through
// log magnitude plus phase so no intermediate overflows for |alpha| <= 50,
// n <= 4096.
FockVector coherent_coefficients(ComplexAmplitude alpha, std::size_t dim);

// sum conj(l_n) r_n with compensated summation; the shorter vector is
// zero-padded.
ComplexAmplitude inner(const FockVector& lhs, const FockVector& rhs);

double norm_sq(const FockVector& v);
double norm(const FockVector& v);

// l2 distance between two vectors (shorter zero-padded); shared by the
// quadrature-vs-closed-form comparisons.
double distance(const FockVector& lhs, const FockVector& rhs);

}  // namespace cohres
