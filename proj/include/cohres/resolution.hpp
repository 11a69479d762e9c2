#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cohres/fock.hpp"
#include "cohres/gamma.hpp"

namespace cohres {

// The truncated resolution operator A_r on a dim-dimensional Fock space:
// diagonal, with eigenvalue I_n(r^2) on mode n. For large r^2 the eigenvalue
// rounds to exactly 1.0 in double; the stored complement Q carries the gap,
// so checks that need "strictly below 1" consult Q.
class TruncatedResolution {
 public:
  TruncatedResolution(double radius, std::size_t dim);

  double radius() const noexcept { return radius_; }
  std::size_t dim() const noexcept { return table_.I.size(); }
  const GammaTable& eigenvalues() const noexcept { return table_; }

 private:
  double radius_;
  GammaTable table_;
};

// Componentwise action (A_r v)_n = I_n(r^2) v_n; requires v.dim <= res.dim.
FockVector apply(const TruncatedResolution& res, const FockVector& v);

// sqrt(sum Q_n(r^2)^2 |v_n|^2) = ||(A_r - I)v||, from the stored complement.
double strong_error(const TruncatedResolution& res, const FockVector& v);

// <u|v> - <u|A_r v> = sum Q_n(r^2) conj(u_n) v_n.
ComplexAmplitude weak_defect(const TruncatedResolution& res, const FockVector& u,
                             const FockVector& v);

// Real self-defect sum Q_n(r^2) |v_n|^2; nonnegative termwise in floating
// point, which makes the boundedness checks exact.
double weak_defect_self(const TruncatedResolution& res, const FockVector& v);

// Two-stage radius selection: smallest K with tail sum_{n>K} |v_n|^2 <
// eps^2/2, then doubling-from-1 plus 40 bisection steps on
// Q_K(R^2)^2 ||v||^2 < eps^2/2. The returned radius satisfies
// strong_error < eps.
double select_radius(const FockVector& v, double eps);

struct KlauderRow {
  double radius = 0.0;
  double quad_form = 0.0;   // <v|A_r v>
  double image_norm = 0.0;  // ||A_r v||
  double defect = 0.0;      // ||v||^2 - <v|A_r v>, summed termwise
  double ratio = 0.0;       // ||A_r v|| / ||v||
};

struct KlauderReport {
  std::vector<KlauderRow> rows;
  double vector_norm = 0.0;
  bool positive_ok = true;     // 0 <= <v|A_r v> per radius
  bool bounded_ok = true;      // <v|A_r v> <= ||v||^2 per radius
  bool monotone_ok = true;     // <v|A_r v> nondecreasing in r
  bool contraction_ok = true;  // ||A_r v|| <= ||v|| per radius
  bool diagonal_ok = true;     // per entry: 0 <= I <= 1 and I >= I^2
  bool schwarz_ok = true;      // |<v|A_r v>| <= ||v||·||A_r v|| + 1e-12

  bool all_ok() const noexcept {
    return positive_ok && bounded_ok && monotone_ok && contraction_ok && diagonal_ok &&
           schwarz_ok;
  }
};

// Monotone-boundedness diagnostics along strictly increasing radii; the
// ratio column exposes the ||A_r v|| -> ||v|| trend that lifts weak to
// strong convergence.
KlauderReport klauder_diagnostics(const FockVector& v, std::span<const double> radii);

struct NormWitness {
  std::size_t m_star = 0;    // smallest maximizing m (deterministic tie-break)
  double witness = 0.0;      // max_{m<=max_m} Q_m(r^2) = ||(A_r - I)e_{m*}||
  double paper_bound = 0.0;  // max_{m<=max_m} (1 - 2 I_m(r^2)), clamped at 0
};

// Basis-vector lower bound for ||A_r - I||; witness is nondecreasing in
// max_m and approaches 1, certifying that no radius gives uniform
// convergence.
NormWitness norm_witness(const TruncatedResolution& res, std::size_t max_m);

struct TailBoundRow {
  std::size_t m = 0;
  double lhs = 0.0;      // I_m(r^2), tail-accurate evaluation
  double log_rhs = 0.0;  // ln(2 r^{2m+2}/m!)
  bool holds = true;     // lhs <= exp(log_rhs), compared in log space
};

// Checks the crude diagonal bound I_m(r^2) <= 2 r^{2m+2}/m! at the sampled
// m; the right-hand side is kept in log space because it overflows early.
std::vector<TailBoundRow> paper_tail_bound_check(double radius,
                                                 std::span<const std::size_t> m_range);

struct ProjectionCompareRow {
  std::size_t n = 0;
  double strong_err = 0.0;     // ||(B_n - I)v|| = sqrt(tail sum)
  double basis_witness = 0.0;  // ||(B_n - I)e_{n+1}||, exactly 1
};

struct ProjectionCompare {
  std::vector<ProjectionCompareRow> rows;
  double pair_witness = 1.0;  // min over n != m of ||(B_n - B_m)e_{max}||, exactly 1
};

// Head projections B_n = sum_{k<=n} |k><k| versus the resolution family:
// per-vector errors are plain tail sums, but the basis witnesses stay pinned
// at exactly 1 for every n, so the projections cannot converge uniformly
// either, and unlike A_r they do not even converge on basis tails.
ProjectionCompare projection_resolution_compare(const FockVector& v,
                                                std::span<const std::size_t> n_range);

// <m|A_r|m> in the radial s-form (2/m!) integral of s^{2m+1} e^{-s^2} over
// [0, r], by adaptive Simpson; independent cross-check of the diagonal
// I_m(r^2).
double diagonal_radial_form(std::size_t m, double radius, double tol);

struct ConvergenceRow {
  double radius = 0.0;
  double strong_error = 0.0;
  double weak_defect_self = 0.0;
  double norm_witness = 0.0;
  double paper_bound = 0.0;
};

struct ConvergenceReport {
  std::string test_vector_label;
  std::vector<ConvergenceRow> rows;
};

// Radius sweep for one test vector; the witness columns scan m <= dim-1.
ConvergenceReport radius_sweep(const FockVector& v, std::span<const double> radii,
                               std::string label);

}  // namespace cohres
