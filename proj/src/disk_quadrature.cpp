#include "cohres/disk_quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cohres/compensated.hpp"

namespace cohres {

namespace {

constexpr double pi = std::numbers::pi_v<double>;

// Per-ring radial factors rho_n(s) = e^{-s^2/2} s^n / sqrt(n!); the cell
// coefficient is rho_n(s)·e^{inθ}.
void radial_factors(double s, const std::vector<double>& half_ln_fact,
                    std::vector<double>& rho) {
  const double log_s = std::log(s);
  const double base = -0.5 * s * s;
  for (std::size_t n = 0; n < rho.size(); ++n) {
    rho[n] = std::exp(base + static_cast<double>(n) * log_s - half_ln_fact[n]);
  }
}

std::vector<double> half_ln_fact_table(std::size_t dim) {
  std::vector<double> t(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    t[n] = 0.5 * ln_factorial(n);
  }
  return t;
}

// <alpha|v> for the cell coefficients; plain summation is enough here since
// the quadrature truncation error dominates by many orders.
std::complex<double> cell_inner(const std::vector<std::complex<double>>& cell_coeffs,
                                const FockVector& v) {
  std::complex<double> ip{0.0, 0.0};
  for (std::size_t m = 0; m < cell_coeffs.size(); ++m) {
    ip += std::conj(cell_coeffs[m]) * v[m];
  }
  return ip;
}

void cell_coefficients(const std::vector<double>& rho, double theta,
                       std::vector<std::complex<double>>& coeffs) {
  for (std::size_t n = 0; n < rho.size(); ++n) {
    coeffs[n] = std::polar(rho[n], static_cast<double>(n) * theta);
  }
}

}  // namespace

DiskGrid::DiskGrid(double radius, std::size_t n_radial, std::size_t n_angular)
    : radius(radius), n_radial(n_radial), n_angular(n_angular) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("DiskGrid: radius must be finite and > 0");
  }
  if (n_radial < 2) {
    throw std::invalid_argument("DiskGrid: n_radial must be >= 2");
  }
  if (n_angular < 4) {
    throw std::invalid_argument("DiskGrid: n_angular must be >= 4");
  }
}

double DiskGrid::radial_step() const noexcept {
  return radius / static_cast<double>(n_radial);
}

double DiskGrid::angular_step() const noexcept {
  return 2.0 * pi / static_cast<double>(n_angular);
}

double DiskGrid::weight_sum() const {
  const double ds = radial_step();
  const double dth = angular_step();
  NeumaierSum acc;
  for (std::size_t i = 0; i < n_radial; ++i) {
    const double w = (static_cast<double>(i) + 0.5) * ds * ds * dth;
    for (std::size_t j = 0; j < n_angular; ++j) {
      acc.add(w);
    }
  }
  return acc.value();
}

FockVector quad_resolution(const FockVector& v, const DiskGrid& grid) {
  const std::size_t dim = v.dim();
  if (dim == 0) {
    return FockVector();
  }
  const std::size_t n_radial = grid.n_radial;
  const std::size_t n_angular = grid.n_angular;
  const double ds = grid.radial_step();
  const double dth = grid.angular_step();
  const std::vector<double> half_ln_fact = half_ln_fact_table(dim);

  // One partial sum per ring; rings are independent, and the fixed pairwise
  // tree below makes the reduction order independent of the thread count.
  std::vector<std::complex<double>> ring(n_radial * dim);

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_radial); ++i) {
    const double s = (static_cast<double>(i) + 0.5) * ds;
    const double w = s * ds * dth;
    std::vector<double> rho(dim);
    radial_factors(s, half_ln_fact, rho);
    std::vector<std::complex<double>> coeffs(dim);
    std::vector<ComplexNeumaierSum> acc(dim);
    for (std::size_t j = 0; j < n_angular; ++j) {
      const double theta = (static_cast<double>(j) + 0.5) * dth;
      cell_coefficients(rho, theta, coeffs);
      const std::complex<double> ip = cell_inner(coeffs, v);
      for (std::size_t n = 0; n < dim; ++n) {
        acc[n].add(coeffs[n] * ip);
      }
    }
    for (std::size_t n = 0; n < dim; ++n) {
      ring[static_cast<std::size_t>(i) * dim + n] = acc[n].value() * w;
    }
  }

  for (std::size_t width = 1; width < n_radial; width *= 2) {
    for (std::size_t i = 0; i + width < n_radial; i += 2 * width) {
      for (std::size_t n = 0; n < dim; ++n) {
        ring[i * dim + n] += ring[(i + width) * dim + n];
      }
    }
  }

  std::vector<ComplexAmplitude> out(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    out[n] = ring[n] / pi;
  }
  return FockVector(std::move(out));
}

FockVector quad_resolution_reference(const FockVector& v, const DiskGrid& grid) {
  const std::size_t dim = v.dim();
  if (dim == 0) {
    return FockVector();
  }
  const double ds = grid.radial_step();
  const double dth = grid.angular_step();
  std::vector<ComplexNeumaierSum> acc(dim);
  for (std::size_t i = 0; i < grid.n_radial; ++i) {
    const double s = (static_cast<double>(i) + 0.5) * ds;
    const double w = s * ds * dth;
    for (std::size_t j = 0; j < grid.n_angular; ++j) {
      const double theta = (static_cast<double>(j) + 0.5) * dth;
      const FockVector coh =
          coherent_coefficients(std::polar(s, theta), dim);
      const ComplexAmplitude ip = inner(coh, v);
      for (std::size_t n = 0; n < dim; ++n) {
        acc[n].add(coh[n] * ip * w);
      }
    }
  }
  std::vector<ComplexAmplitude> out(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    out[n] = acc[n].value() / pi;
  }
  return FockVector(std::move(out));
}

std::complex<double> angular_orthogonality(std::size_t n, std::size_t m,
                                           std::size_t n_angular) {
  if (n_angular < 1) {
    throw std::invalid_argument("angular_orthogonality: n_angular must be >= 1");
  }
  const std::int64_t L = static_cast<std::int64_t>(n_angular);
  std::int64_t step = (static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m)) % L;
  if (step < 0) {
    step += L;
  }
  // Phase index d·j reduced mod L incrementally in integers, so aliasing
  // cases (L divides n-m) hit angle 0 exactly.
  ComplexNeumaierSum acc;
  std::int64_t res = 0;
  for (std::int64_t j = 0; j < L; ++j) {
    acc.add(std::polar(1.0, 2.0 * pi * static_cast<double>(res) / static_cast<double>(L)));
    res += step;
    if (res >= L) {
      res -= L;
    }
  }
  return acc.value() / static_cast<double>(L);
}

TriangleCheck triangle_check(const FockVector& v, const DiskGrid& grid) {
  const std::size_t dim = v.dim();
  TriangleCheck out;
  out.uniform_bound = pi * grid.radius * grid.radius * norm(v);
  if (dim == 0) {
    return out;
  }
  out.lhs = norm(quad_resolution(v, grid)) * pi;

  const double ds = grid.radial_step();
  const double dth = grid.angular_step();
  const std::vector<double> half_ln_fact = half_ln_fact_table(dim);
  std::vector<double> rho(dim);
  std::vector<std::complex<double>> coeffs(dim);
  NeumaierSum norm_integral;
  NeumaierSum norm_sq_integral;
  for (std::size_t i = 0; i < grid.n_radial; ++i) {
    const double s = (static_cast<double>(i) + 0.5) * ds;
    const double w = s * ds * dth;
    radial_factors(s, half_ln_fact, rho);
    NeumaierSum coh_norm_sq;
    for (std::size_t n = 0; n < dim; ++n) {
      coh_norm_sq.add(rho[n] * rho[n]);
    }
    const double coh_norm = std::sqrt(coh_norm_sq.value());
    for (std::size_t j = 0; j < grid.n_angular; ++j) {
      const double theta = (static_cast<double>(j) + 0.5) * dth;
      cell_coefficients(rho, theta, coeffs);
      const double ip_abs = std::abs(cell_inner(coeffs, v));
      norm_integral.add(coh_norm * ip_abs * w);
      norm_sq_integral.add(coh_norm * coh_norm * ip_abs * ip_abs * w);
    }
  }
  out.rhs = norm_integral.value();
  out.norm_sq_integral = norm_sq_integral.value();

  if (!(out.lhs <= out.rhs + 1e-12)) {
    throw std::logic_error("triangle_check: ||integral|| exceeded the norm integral");
  }
  if (!(out.rhs <= out.uniform_bound * (1.0 + 1e-10) + 1e-12)) {
    throw std::logic_error("triangle_check: norm integral exceeded the uniform bound");
  }
  if (!std::isfinite(out.rhs) || !std::isfinite(out.norm_sq_integral)) {
    throw std::logic_error("triangle_check: integrability check failed");
  }
  return out;
}

double bra_exchange_check(const FockVector& f, const FockVector& v, const DiskGrid& grid) {
  const std::size_t dim = v.dim();
  const ComplexAmplitude after = inner(f, quad_resolution(v, grid));
  if (dim == 0) {
    return std::abs(after);
  }
  const double ds = grid.radial_step();
  const double dth = grid.angular_step();
  const std::vector<double> half_ln_fact = half_ln_fact_table(dim);
  std::vector<double> rho(dim);
  std::vector<std::complex<double>> coeffs(dim);
  const std::size_t f_dim = std::min(f.dim(), dim);
  ComplexNeumaierSum through;
  for (std::size_t i = 0; i < grid.n_radial; ++i) {
    const double s = (static_cast<double>(i) + 0.5) * ds;
    const double w = s * ds * dth;
    radial_factors(s, half_ln_fact, rho);
    for (std::size_t j = 0; j < grid.n_angular; ++j) {
      const double theta = (static_cast<double>(j) + 0.5) * dth;
      cell_coefficients(rho, theta, coeffs);
      std::complex<double> bra{0.0, 0.0};
      for (std::size_t m = 0; m < f_dim; ++m) {
        bra += std::conj(f[m]) * coeffs[m];
      }
      through.add(bra * cell_inner(coeffs, v) * w);
    }
  }
  return std::abs(after - through.value() / pi);
}

double termwise_exchange_check(const FockVector& v, const DiskGrid& grid) {
  const std::size_t dim = v.dim();
  const FockVector nested = quad_resolution(v, grid);
  if (dim == 0) {
    return 0.0;
  }
  const double ds = grid.radial_step();
  const double dth = grid.angular_step();
  const std::vector<double> half_ln_fact = half_ln_fact_table(dim);

  // First pass: cache <alpha|v> per cell (radial-major).
  std::vector<std::complex<double>> ip(grid.n_radial * grid.n_angular);
  {
    std::vector<double> rho(dim);
    std::vector<std::complex<double>> coeffs(dim);
    for (std::size_t i = 0; i < grid.n_radial; ++i) {
      const double s = (static_cast<double>(i) + 0.5) * ds;
      radial_factors(s, half_ln_fact, rho);
      for (std::size_t j = 0; j < grid.n_angular; ++j) {
        const double theta = (static_cast<double>(j) + 0.5) * dth;
        cell_coefficients(rho, theta, coeffs);
        ip[i * grid.n_angular + j] = cell_inner(coeffs, v);
      }
    }
  }

  // Second pass: integrate one mode at a time over all cells.
  std::vector<ComplexAmplitude> termwise(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    ComplexNeumaierSum acc;
    for (std::size_t i = 0; i < grid.n_radial; ++i) {
      const double s = (static_cast<double>(i) + 0.5) * ds;
      const double w = s * ds * dth;
      const double rho_n = std::exp(-0.5 * s * s + static_cast<double>(n) * std::log(s) -
                                    half_ln_fact[n]);
      for (std::size_t j = 0; j < grid.n_angular; ++j) {
        const double theta = (static_cast<double>(j) + 0.5) * dth;
        const std::complex<double> c_n = std::polar(rho_n, static_cast<double>(n) * theta);
        acc.add(c_n * ip[i * grid.n_angular + j] * w);
      }
    }
    termwise[n] = acc.value() / pi;
  }
  return distance(nested, FockVector(std::move(termwise)));
}

}  // namespace cohres
