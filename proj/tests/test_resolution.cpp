#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cohres/disk_quadrature.hpp"
#include "cohres/fock.hpp"
#include "cohres/gamma.hpp"
#include "cohres/resolution.hpp"

using namespace cohres;

namespace {

FockVector random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<ComplexAmplitude> c(dim);
  for (auto& x : c) {
    x = ComplexAmplitude{normal(rng), normal(rng)};
  }
  FockVector v(std::move(c));
  const double nv = norm(v);
  std::vector<ComplexAmplitude> scaled(v.coeffs());
  for (auto& x : scaled) {
    x /= nv;
  }
  return FockVector(std::move(scaled));
}

}  // namespace

TEST_CASE("resolution construction, eigenvalues, and validation") {
  const TruncatedResolution res(2.0, 8);
  CHECK(res.radius() == 2.0);
  CHECK(res.dim() == 8);
  const GammaTable& eig = res.eigenvalues();
  CHECK(eig.radius_sq == 4.0);
  for (std::size_t n = 0; n < 8; ++n) {
    CHECK(eig.I[n] >= 0.0);
    CHECK(eig.I[n] < 1.0);  // moderate radius: the gap Q is representable
    CHECK(eig.Q[n] > 0.0);
    if (n > 0) {
      CHECK(eig.I[n] <= eig.I[n - 1]);
    }
  }
  CHECK_THROWS_AS(TruncatedResolution(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedResolution(-1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedResolution(2.0, 0), std::invalid_argument);
}

TEST_CASE("eigenvalues are nondecreasing in the radius at fixed mode") {
  const double radii[] = {0.5, 1.0, 2.0, 4.0};
  for (std::size_t n = 0; n < 16; ++n) {
    double prev = -1.0;
    for (const double r : radii) {
      const double value = TruncatedResolution(r, 16).eigenvalues().I[n];
      CHECK(value >= prev);
      prev = value;
    }
  }
}

TEST_CASE("apply scales each basis vector by its eigenvalue") {
  const TruncatedResolution res(1.7, 12);
  for (const std::size_t m : {0u, 3u, 11u}) {
    const FockVector image = apply(res, FockVector::basis(m, 12));
    for (std::size_t n = 0; n < 12; ++n) {
      if (n == m) {
        CHECK(image[n] == ComplexAmplitude{res.eigenvalues().I[m], 0.0});
      } else {
        CHECK(image[n] == ComplexAmplitude{0.0, 0.0});
      }
    }
  }
}

TEST_CASE("apply on the zero vector and the closed-form vacuum case") {
  const TruncatedResolution res(2.0, 6);
  const FockVector zero_image = apply(res, FockVector::zero(6));
  CHECK(norm(zero_image) == 0.0);

  const FockVector e0_image = apply(res, FockVector::basis(0, 1));
  CHECK(std::abs(e0_image[0].real() - (1.0 - std::exp(-4.0))) <= 1e-12);
}

TEST_CASE("apply accepts shorter vectors and rejects longer ones") {
  const TruncatedResolution res(1.0, 4);
  const FockVector short_v(std::vector<ComplexAmplitude>{{1.0, 0.0}, {0.0, 1.0}});
  CHECK(apply(res, short_v).dim() == 2);
  CHECK_THROWS_AS(apply(res, FockVector::zero(5)), std::invalid_argument);
}

TEST_CASE("strong error closed forms") {
  CHECK(std::abs(strong_error(TruncatedResolution(2.0, 1), FockVector::basis(0, 1)) -
                 std::exp(-4.0)) <= 1e-12);
  for (const double r : {0.5, 1.0, 3.0}) {
    CHECK(std::abs(strong_error(TruncatedResolution(r, 1), FockVector::basis(0, 1)) -
                   std::exp(-r * r)) <= 1e-12);
  }
  CHECK(strong_error(TruncatedResolution(1.0, 5), FockVector::zero(5)) == 0.0);
}

TEST_CASE("strong error matches the disk-quadrature route at a fine grid") {
  const FockVector v = coherent_coefficients({1.0, 0.0}, 64);
  const TruncatedResolution res(3.0, 64);
  const FockVector quad = quad_resolution(v, DiskGrid(3.0, 512, 512));
  // ||v - quad|| differs from ||(I - A_r)v|| by at most the grid error.
  CHECK(std::abs(strong_error(res, v) - distance(v, quad)) <= 1e-4);
}

TEST_CASE("weak defect closed forms and diagonality") {
  const TruncatedResolution res(2.0, 4);
  const FockVector e0 = FockVector::basis(0, 4);
  const FockVector e1 = FockVector::basis(1, 4);
  CHECK(std::abs(weak_defect(res, e0, e0) - ComplexAmplitude{std::exp(-4.0), 0.0}) <= 1e-12);
  for (const double r : {0.7, 1.5, 3.0}) {
    const TruncatedResolution res_r(r, 4);
    CHECK(weak_defect(res_r, e0, e1) == ComplexAmplitude{0.0, 0.0});
    CHECK(weak_defect(res_r, e1, e0) == ComplexAmplitude{0.0, 0.0});
  }
}

TEST_CASE("weak defect agrees with a reordered direct sum and Cauchy-Schwarz") {
  std::mt19937_64 rng(777);
  const TruncatedResolution res(1.5, 32);
  for (int trial = 0; trial < 10; ++trial) {
    const FockVector u = random_unit(rng, 32);
    const FockVector v = random_unit(rng, 32);
    const ComplexAmplitude fast = weak_defect(res, u, v);
    ComplexAmplitude brute{0.0, 0.0};
    for (std::size_t n = 32; n-- > 0;) {  // reversed accumulation order
      brute += res.eigenvalues().Q[n] * std::conj(u[n]) * v[n];
    }
    CHECK(std::abs(fast - brute) <= 1e-12);
    CHECK(std::abs(fast) <= strong_error(res, v) * norm(u) + 1e-12);
    // Defect = <u|v> - <u|A_r v>.
    const ComplexAmplitude via_apply = inner(u, v) - inner(u, apply(res, v));
    CHECK(std::abs(fast - via_apply) <= 1e-12);
  }
}

TEST_CASE("weak self-defect is the nonnegative diagonal of the defect form") {
  std::mt19937_64 rng(778);
  const TruncatedResolution res(1.2, 24);
  for (int trial = 0; trial < 5; ++trial) {
    const FockVector v = random_unit(rng, 24);
    const double self = weak_defect_self(res, v);
    CHECK(self >= 0.0);
    CHECK(std::abs(self - weak_defect(res, v, v).real()) <= 1e-12);
  }
}

TEST_CASE("select_radius: vacuum closed form") {
  const FockVector e0 = FockVector::basis(0, 1);
  const double R = select_radius(e0, 0.02);
  CHECK(R > 0.0);
  CHECK(std::exp(-R * R) < 0.02);
  CHECK(strong_error(TruncatedResolution(R, 1), e0) < 0.02);
  // The search should not massively overshoot the closed-form threshold
  // sqrt(ln 50) ~ 1.98 (the stage-2 predicate halves eps^2, so sqrt(ln
  // (2/eps^2))/sqrt(2) ~ 2.07 is the analytic target).
  CHECK(R < 2.5);
}

TEST_CASE("select_radius: eps above the norm still yields a valid radius") {
  const FockVector e0 = FockVector::basis(0, 1);
  const double R = select_radius(e0, 1.5);
  CHECK(R > 0.0);
  CHECK(strong_error(TruncatedResolution(R, 1), e0) < 1.5);
}

TEST_CASE("select_radius: slow coherent tail at eps = 1e-3") {
  const FockVector v = coherent_coefficients({2.0, 0.0}, 64);
  const double R = select_radius(v, 1e-3);
  const double err_R = strong_error(TruncatedResolution(R, 64), v);
  const double err_half = strong_error(TruncatedResolution(R / 2.0, 64), v);
  CHECK(err_R < 1e-3);
  CHECK(err_half >= err_R);
}

TEST_CASE("select_radius rejects invalid input") {
  const FockVector e0 = FockVector::basis(0, 1);
  CHECK_THROWS_AS(select_radius(e0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(select_radius(e0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(select_radius(FockVector::zero(3), 0.1), std::invalid_argument);
}

TEST_CASE("Klauder diagnostics: vacuum closed forms") {
  const std::vector<double> radii{1.0, 2.0, 3.0};
  const KlauderReport report = klauder_diagnostics(FockVector::basis(0, 4), radii);
  REQUIRE(report.rows.size() == 3);
  CHECK(std::abs(report.rows[0].quad_form - (1.0 - std::exp(-1.0))) <= 1e-12);
  CHECK(std::abs(report.rows[1].quad_form - (1.0 - std::exp(-4.0))) <= 1e-12);
  CHECK(std::abs(report.rows[2].quad_form - (1.0 - std::exp(-9.0))) <= 1e-12);
  CHECK(report.all_ok());
  CHECK(report.vector_norm == 1.0);
}

TEST_CASE("Klauder diagnostics: monotone boundedness on random vectors") {
  std::mt19937_64 rng(4242);
  const std::vector<double> radii{0.5, 1.0, 2.0, 4.0, 8.0};
  for (int trial = 0; trial < 8; ++trial) {
    const FockVector v = random_unit(rng, 48);
    const KlauderReport report = klauder_diagnostics(v, radii);
    CHECK(report.positive_ok);
    CHECK(report.bounded_ok);
    CHECK(report.monotone_ok);
    CHECK(report.contraction_ok);
    CHECK(report.diagonal_ok);
    CHECK(report.schwarz_ok);
    for (const KlauderRow& row : report.rows) {
      CHECK(row.quad_form >= 0.0);
      CHECK(row.quad_form <= norm_sq(v) * (1.0 + 1e-12));
      CHECK(row.image_norm <= norm(v) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("Klauder diagnostics: the image norm climbs to the vector norm") {
  const std::vector<double> radii{1.0, 2.0, 4.0, 8.0};
  const KlauderReport report =
      klauder_diagnostics(coherent_coefficients({1.0, 0.0}, 64), radii);
  CHECK(report.rows.back().ratio > 1.0 - 1e-10);
  CHECK_THROWS_AS(
      klauder_diagnostics(FockVector::basis(0, 2), std::vector<double>{2.0, 1.0}),
      std::invalid_argument);
}

TEST_CASE("norm witness at r = 1 peaks at mode 4 with witness above 0.99") {
  const TruncatedResolution res(1.0, 5);
  const NormWitness w = norm_witness(res, 4);
  CHECK(w.m_star == 4);
  CHECK(w.witness > 0.99);
  // Q_4(1) = 1 - I_4(1), checked against the independent quadrature oracle.
  CHECK(std::abs(w.witness - (1.0 - gamma_oracle(1.0, 4, 1e-13))) <= 1e-10);
  CHECK(lower_regularized(1.0, 4) < 0.01);
  CHECK(std::abs(lower_regularized(1.0, 4) - 0.00366) <= 5e-5);
}

TEST_CASE("norm witness closed form at max_m = 0 and monotone growth in max_m") {
  for (const double r : {0.8, 1.3, 2.0}) {
    const TruncatedResolution res(r, 1);
    const NormWitness w0 = norm_witness(res, 0);
    CHECK(w0.m_star == 0);
    CHECK(std::abs(w0.witness - std::exp(-r * r)) <= 1e-12);
  }
  const TruncatedResolution res(2.0, 4);
  double prev = 0.0;
  for (const std::size_t max_m : {0u, 2u, 5u, 9u, 30u}) {
    const NormWitness w = norm_witness(res, max_m);  // extends past res.dim()
    CHECK(w.witness >= prev);
    prev = w.witness;
  }
  CHECK(prev > 0.99);  // Q_30(4) is nearly 1
}

TEST_CASE("paper bound column is the clamped max of 1 - 2 I_m") {
  const TruncatedResolution res(1.0, 8);
  const NormWitness w = norm_witness(res, 7);
  double expected = 0.0;
  for (std::size_t m = 0; m <= 7; ++m) {
    expected = std::max(expected, 1.0 - 2.0 * lower_regularized(1.0, m));
  }
  CHECK(std::abs(w.paper_bound - expected) <= 1e-14);
  CHECK(w.paper_bound <= w.witness * 2.0);  // crude vs exact basis defect
}

TEST_CASE("diagonal matrix element equals the radial s-form integral") {
  for (const std::size_t m : {0u, 1u, 5u, 17u}) {
    for (const double r : {0.8, 2.5}) {
      const double radial = diagonal_radial_form(m, r, 1e-12);
      CHECK(std::abs(radial - lower_regularized(r * r, m)) <= 1e-10);
    }
  }
}

TEST_CASE("crude tail bound I_m(r^2) <= 2 r^{2m+2}/m! holds at samples") {
  const std::vector<std::size_t> modes{0, 1, 5, 10, 25, 40};
  for (const double r : {1.0, 2.0, 5.0}) {
    const std::vector<TailBoundRow> rows = paper_tail_bound_check(r, modes);
    REQUIRE(rows.size() == modes.size());
    for (const TailBoundRow& row : rows) {
      CHECK(row.holds);
    }
  }
  // r = 1, m = 10: both sides tiny; compare against the oracle.
  const std::vector<std::size_t> ten{10};
  const TailBoundRow row10 = paper_tail_bound_check(1.0, ten)[0];
  CHECK(std::abs(row10.lhs - gamma_oracle(1.0, 10, 1e-14)) <= 1e-12);
  CHECK(row10.log_rhs < 0.0);  // 2/10! < 1
  // r = 1, m = 0: right-hand side is 2, trivially above any I.
  const std::vector<std::size_t> zero{0};
  const TailBoundRow row0 = paper_tail_bound_check(1.0, zero)[0];
  CHECK(std::abs(row0.log_rhs - std::log(2.0)) <= 1e-14);
  CHECK(row0.holds);
  // r = 2, m = 40: the right-hand side is far below 1e-20 yet still above I.
  const std::vector<std::size_t> forty{40};
  const TailBoundRow row40 = paper_tail_bound_check(2.0, forty)[0];
  CHECK(row40.log_rhs < std::log(1e-20));
  CHECK(row40.holds);
  CHECK(row40.lhs > 0.0);  // tail-accurate evaluation keeps it positive
}

TEST_CASE("head projections: per-vector tails vanish but basis witnesses stay 1") {
  const FockVector e5 = FockVector::basis(5, 6);
  const std::vector<std::size_t> around{4, 5};
  const ProjectionCompare cmp = projection_resolution_compare(e5, around);
  REQUIRE(cmp.rows.size() == 2);
  CHECK(cmp.rows[0].strong_err == 1.0);  // e_5 entirely in the tail of B_4
  CHECK(cmp.rows[1].strong_err == 0.0);  // e_5 inside the head of B_5
  CHECK(cmp.rows[0].basis_witness == 1.0);
  CHECK(cmp.rows[1].basis_witness == 1.0);
  CHECK(cmp.pair_witness == 1.0);

  const FockVector v = coherent_coefficients({1.0, 0.0}, 64);
  const std::vector<std::size_t> cuts{10};
  const ProjectionCompare coh = projection_resolution_compare(v, cuts);
  double tail = 0.0;
  for (std::size_t k = 63; k > 10; --k) {
    tail += std::norm(v[k]);
  }
  CHECK(std::abs(coh.rows[0].strong_err - std::sqrt(tail)) <= 1e-15);
  // The tail is the unnormalized complement I_10(1) minus the truncation rest.
  CHECK(std::abs(coh.rows[0].strong_err - std::sqrt(lower_regularized(1.0, 10))) <= 1e-12);
}

TEST_CASE("radius sweep report rows are complete and monotone") {
  const FockVector v = coherent_coefficients({1.0, 0.0}, 32);
  const std::vector<double> radii{1.0, 2.0, 4.0, 8.0};
  const ConvergenceReport report = radius_sweep(v, radii, "unit test vector");
  REQUIRE(report.rows.size() == 4);
  CHECK(report.test_vector_label == "unit test vector");
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(report.rows[i].radius == radii[i]);
    CHECK(report.rows[i].strong_error >= 0.0);
    CHECK(report.rows[i].weak_defect_self >= 0.0);
    if (i > 0) {
      CHECK(report.rows[i].strong_error <= report.rows[i - 1].strong_error);
    }
  }
  // The witness column scans m <= dim-1 = 31: past r^2 for r <= 4 (so the
  // witness is close to 1 there), but short of r^2 = 64 at r = 8, where the
  // scanned defects are all small. The mode index defeating a given radius
  // grows like r^2 — exactly why no single radius works uniformly.
  CHECK(report.rows[0].norm_witness > 0.99);
  CHECK(report.rows[1].norm_witness > 0.99);
  CHECK(report.rows[2].norm_witness > 0.99);
  CHECK(report.rows[3].norm_witness < 0.01);
}
