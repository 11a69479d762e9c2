#pragma once

#include <complex>
#include <cstddef>

#include "cohres/fock.hpp"

namespace cohres {

// Polar midpoint grid on the disk |alpha| <= radius: cell centers
// s_i = (i+1/2)·Δs, θ_j = (j+1/2)·Δθ, cell weight s_i·Δs·Δθ. The weights sum
// to exactly π r² in exact arithmetic.
struct DiskGrid {
  double radius = 1.0;
  std::size_t n_radial = 256;
  std::size_t n_angular = 256;

  DiskGrid(double radius, std::size_t n_radial, std::size_t n_angular);

  double radial_step() const noexcept;
  double angular_step() const noexcept;
  // Compensated sum of all cell weights, for the π r² invariant.
  double weight_sum() const;
};

// π⁻¹ Σ_cells coherent_coefficients(α_cell)·<α_cell|v>·μ(cell): the
// vector-valued Riemann sum for A_r v. OpenMP-parallel over radial rings;
// each ring is summed serially in cell order and the ring partials are
// combined by a fixed pairwise tree, so the result is bit-identical for any
// thread count.
FockVector quad_resolution(const FockVector& v, const DiskGrid& grid);

// Serial reference: plain radial-major cell loop with per-mode compensated
// accumulation, building each cell's coherent vector through the fock
// module. Kept for testing the kernel and as the benchmark baseline.
FockVector quad_resolution_reference(const FockVector& v, const DiskGrid& grid);

// (1/2π)·Δθ-weighted angular sum of e^{i(n−m)θ} over uniform nodes
// θ_j = 2πj/L: δ_{n,m} up to 1e-14 whenever L > |n−m|, and exactly 1 when L
// divides n−m (aliasing). The phase index is reduced modulo L in integer
// arithmetic, so aliasing cases are exact.
std::complex<double> angular_orthogonality(std::size_t n, std::size_t m,
                                           std::size_t n_angular);

struct TriangleCheck {
  double lhs = 0.0;              // ||Σ_cells integrand·μ|| = π·||quad_resolution(v)||
  double rhs = 0.0;              // Σ_cells ||integrand||·μ  (the norm integral)
  double uniform_bound = 0.0;    // π r²·||v||, the integrability premise
  double norm_sq_integral = 0.0; // Σ_cells ||integrand||²·μ (the proof's variant)
};

// Triangle inequality for the vector-valued integral, with integrand
// f(α) = |α><α|v>. Throws logic_error if lhs > rhs + 1e-12 or if the norm
// integral exceeds π r²·||v|| beyond rounding: both are finite-sum facts.
// Both the norm integral and the squared-norm integral are reported, since
// the integrability premise circulates in both forms.
TriangleCheck triangle_check(const FockVector& v, const DiskGrid& grid);

// |<f, quad_resolution(v)> − π⁻¹ Σ_cells <f|α><α|v>·μ|: the bra moved through
// the integral versus applied after it. Finite sums commute with the inner
// product, so the residual is floating-point reordering only.
double bra_exchange_check(const FockVector& f, const FockVector& v, const DiskGrid& grid);

// ||quad_resolution(v) − w|| where w_n = π⁻¹ Σ_cells c_n(α)·<α|v>·μ is
// integrated per mode first (summation and integral exchanged).
double termwise_exchange_check(const FockVector& v, const DiskGrid& grid);

}  // namespace cohres
