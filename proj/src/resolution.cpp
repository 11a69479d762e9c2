#include "cohres/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cohres/adaptive_simpson.hpp"
#include "cohres/compensated.hpp"

namespace cohres {

TruncatedResolution::TruncatedResolution(double radius, std::size_t dim) : radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("TruncatedResolution: radius must be finite and > 0");
  }
  if (dim < 1) {
    throw std::invalid_argument("TruncatedResolution: dim must be >= 1");
  }
  table_ = gamma_table(radius * radius, dim - 1);
}

FockVector apply(const TruncatedResolution& res, const FockVector& v) {
  if (v.dim() > res.dim()) {
    throw std::invalid_argument("apply: vector dimension exceeds the resolution's");
  }
  std::vector<ComplexAmplitude> out(v.dim());
  for (std::size_t n = 0; n < v.dim(); ++n) {
    out[n] = res.eigenvalues().I[n] * v[n];
  }
  return FockVector(std::move(out));
}

double strong_error(const TruncatedResolution& res, const FockVector& v) {
  if (v.dim() > res.dim()) {
    throw std::invalid_argument("strong_error: vector dimension exceeds the resolution's");
  }
  NeumaierSum acc;
  for (std::size_t n = 0; n < v.dim(); ++n) {
    const double q = res.eigenvalues().Q[n];
    acc.add(q * q * std::norm(v[n]));
  }
  return std::sqrt(acc.value());
}

ComplexAmplitude weak_defect(const TruncatedResolution& res, const FockVector& u,
                             const FockVector& v) {
  if (u.dim() > res.dim() || v.dim() > res.dim()) {
    throw std::invalid_argument("weak_defect: vector dimension exceeds the resolution's");
  }
  const std::size_t shared = std::min(u.dim(), v.dim());
  ComplexNeumaierSum acc;
  for (std::size_t n = 0; n < shared; ++n) {
    acc.add(res.eigenvalues().Q[n] * std::conj(u[n]) * v[n]);
  }
  return acc.value();
}

double weak_defect_self(const TruncatedResolution& res, const FockVector& v) {
  if (v.dim() > res.dim()) {
    throw std::invalid_argument("weak_defect_self: vector dimension exceeds the resolution's");
  }
  NeumaierSum acc;
  for (std::size_t n = 0; n < v.dim(); ++n) {
    acc.add(res.eigenvalues().Q[n] * std::norm(v[n]));
  }
  return acc.value();
}

namespace {

// Q_K(R^2) by the same prefix sum the tables use, without building a table:
// the complement IS the Poisson prefix sum e^{-R^2} sum_{k<=K} R^{2k}/k!.
double head_complement(double radius, std::size_t K) {
  const double radius_sq = radius * radius;
  NeumaierSum prefix;
  for (std::size_t k = 0; k <= K; ++k) {
    prefix.add(poisson_term(radius_sq, k));
  }
  return std::max(0.0, std::min(prefix.value(), 1.0));
}

}  // namespace

double select_radius(const FockVector& v, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("select_radius: eps must be finite and > 0");
  }
  const double half_eps_sq = 0.5 * eps * eps;
  if (half_eps_sq == 0.0) {
    throw std::invalid_argument("select_radius: eps underflows eps^2/2; cannot certify");
  }
  const double nsq = norm_sq(v);
  if (!(nsq > 0.0)) {
    throw std::invalid_argument("select_radius: vector must have positive norm");
  }

  // Stage 1: smallest K whose tail energy is below eps^2/2. Suffix sums are
  // accumulated backward so each tail is a plain nonnegative sum.
  std::vector<double> tail(v.dim() + 1, 0.0);
  {
    NeumaierSum acc;
    for (std::size_t n = v.dim(); n-- > 0;) {
      tail[n] = acc.value();  // tail[n] = sum_{k>n} |v_k|^2 within the truncation
      acc.add(std::norm(v[n]));
    }
    tail[v.dim()] = 0.0;
  }
  std::size_t K = v.dim() - 1;
  for (std::size_t n = 0; n < v.dim(); ++n) {
    if (tail[n] < half_eps_sq) {
      K = n;
      break;
    }
  }

  // Stage 2: head bound Q_K(R^2)^2 ||v||^2 < eps^2/2, monotone in R; double
  // from R = 1 to bracket, then bisect 40 steps and return the passing side.
  const auto head_ok = [&](double radius) {
    const double q = head_complement(radius, K);
    return q * q * nsq < half_eps_sq;
  };
  double lo = 0.0;
  double hi = 1.0;
  if (!head_ok(hi)) {
    lo = hi;
    bool bracketed = false;
    for (int step = 0; step < 64; ++step) {
      hi = lo * 2.0;
      if (head_ok(hi)) {
        bracketed = true;
        break;
      }
      lo = hi;
    }
    if (!bracketed) {
      throw std::runtime_error("select_radius: radius search failed to bracket");
    }
  }
  for (int step = 0; step < 40; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) {
      break;
    }
    if (head_ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

KlauderReport klauder_diagnostics(const FockVector& v, std::span<const double> radii) {
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (!(radii[i] < radii[i + 1])) {
      throw std::invalid_argument("klauder_diagnostics: radii must be strictly increasing");
    }
  }
  KlauderReport report;
  report.vector_norm = norm(v);
  const double nsq = norm_sq(v);
  double prev_quad_form = 0.0;
  bool first = true;
  for (const double r : radii) {
    const TruncatedResolution res(r, std::max<std::size_t>(v.dim(), 1));
    const GammaTable& table = res.eigenvalues();

    KlauderRow row;
    row.radius = r;
    {
      NeumaierSum qf;
      for (std::size_t n = 0; n < v.dim(); ++n) {
        qf.add(table.I[n] * std::norm(v[n]));
      }
      row.quad_form = qf.value();
    }
    row.defect = weak_defect_self(res, v);
    row.image_norm = norm(apply(res, v));
    row.ratio = report.vector_norm > 0.0 ? row.image_norm / report.vector_norm : 0.0;

    report.positive_ok = report.positive_ok && row.quad_form >= 0.0;
    report.bounded_ok =
        report.bounded_ok && row.defect >= 0.0 && row.quad_form <= nsq * (1.0 + 1e-12);
    if (!first) {
      report.monotone_ok = report.monotone_ok && row.quad_form >= prev_quad_form;
    }
    report.contraction_ok =
        report.contraction_ok && row.image_norm <= report.vector_norm * (1.0 + 1e-12);
    report.schwarz_ok =
        report.schwarz_ok &&
        std::abs(row.quad_form) <= report.vector_norm * row.image_norm + 1e-12;
    for (std::size_t n = 0; n < table.I.size(); ++n) {
      const double eig = table.I[n];
      report.diagonal_ok =
          report.diagonal_ok && eig >= 0.0 && eig <= 1.0 && eig * eig <= eig;
    }

    prev_quad_form = row.quad_form;
    first = false;
    report.rows.push_back(row);
  }
  return report;
}

NormWitness norm_witness(const TruncatedResolution& res, std::size_t max_m) {
  // The witness scan may run past the operator's own dimension; extend the
  // table rather than refuse.
  const GammaTable table = max_m < res.dim() ? res.eigenvalues()
                                             : gamma_table(res.radius() * res.radius(), max_m);
  NormWitness out;
  out.m_star = 0;
  out.witness = table.Q[0];
  double bound = 1.0 - 2.0 * table.I[0];
  for (std::size_t m = 1; m <= max_m; ++m) {
    if (table.Q[m] > out.witness) {
      out.witness = table.Q[m];
      out.m_star = m;
    }
    bound = std::max(bound, 1.0 - 2.0 * table.I[m]);
  }
  out.paper_bound = std::max(0.0, bound);
  return out;
}

std::vector<TailBoundRow> paper_tail_bound_check(double radius,
                                                 std::span<const std::size_t> m_range) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("paper_tail_bound_check: radius must be finite and > 0");
  }
  const double radius_sq = radius * radius;
  std::vector<TailBoundRow> rows;
  rows.reserve(m_range.size());
  for (const std::size_t m : m_range) {
    TailBoundRow row;
    row.m = m;
    row.lhs = lower_regularized(radius_sq, m);
    row.log_rhs = std::log(2.0) +
                  (2.0 * static_cast<double>(m) + 2.0) * std::log(radius) - ln_factorial(m);
    // Compare in log space; a zero lhs holds trivially.
    row.holds = row.lhs == 0.0 || std::log(row.lhs) <= row.log_rhs;
    rows.push_back(row);
  }
  return rows;
}

ProjectionCompare projection_resolution_compare(const FockVector& v,
                                                std::span<const std::size_t> n_range) {
  ProjectionCompare out;
  for (const std::size_t n : n_range) {
    ProjectionCompareRow row;
    row.n = n;
    {
      NeumaierSum tail;
      for (std::size_t k = v.dim(); k-- > n + 1;) {
        tail.add(std::norm(v[k]));
      }
      row.strong_err = std::sqrt(tail.value());
    }
    {
      // ||(B_n - I) e_{n+1}||: e_{n+1} lies entirely in the tail.
      const FockVector basis = FockVector::basis(n + 1, n + 2);
      NeumaierSum tail;
      for (std::size_t k = basis.dim(); k-- > n + 1;) {
        tail.add(std::norm(basis[k]));
      }
      row.basis_witness = std::sqrt(tail.value());
    }
    out.rows.push_back(row);
  }
  // ||(B_n - B_m) e_{max}||: the difference of head projections acts as
  // identity on the mode between the two cutoffs.
  for (std::size_t i = 0; i < n_range.size(); ++i) {
    for (std::size_t j = i + 1; j < n_range.size(); ++j) {
      if (n_range[i] == n_range[j]) {
        continue;
      }
      const std::size_t hi = std::max(n_range[i], n_range[j]);
      const std::size_t lo = std::min(n_range[i], n_range[j]);
      const FockVector basis = FockVector::basis(hi, hi + 1);
      NeumaierSum diff;
      for (std::size_t k = 0; k < basis.dim(); ++k) {
        const double head_hi = k <= hi ? 1.0 : 0.0;
        const double head_lo = k <= lo ? 1.0 : 0.0;
        diff.add(std::norm((head_hi - head_lo) * basis[k]));
      }
      out.pair_witness = std::min(out.pair_witness, std::sqrt(diff.value()));
    }
  }
  return out;
}

double diagonal_radial_form(std::size_t m, double radius, double tol) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("diagonal_radial_form: radius must be finite and >= 0");
  }
  const double log_fact = ln_factorial(m);
  const auto integrand = [m, log_fact](double s) {
    if (s <= 0.0) {
      return m == 0 ? 2.0 * s : 0.0;
    }
    return 2.0 * std::exp((2.0 * static_cast<double>(m) + 1.0) * std::log(s) - s * s - log_fact);
  };
  return adaptive_simpson(integrand, 0.0, radius, tol);
}

ConvergenceReport radius_sweep(const FockVector& v, std::span<const double> radii,
                               std::string label) {
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (!(radii[i] < radii[i + 1])) {
      throw std::invalid_argument("radius_sweep: radii must be strictly increasing");
    }
  }
  if (v.dim() < 1) {
    throw std::invalid_argument("radius_sweep: vector must be nonempty");
  }
  ConvergenceReport report;
  report.test_vector_label = std::move(label);
  for (const double r : radii) {
    const TruncatedResolution res(r, v.dim());
    const NormWitness witness = norm_witness(res, v.dim() - 1);
    ConvergenceRow row;
    row.radius = r;
    row.strong_error = strong_error(res, v);
    row.weak_defect_self = weak_defect_self(res, v);
    row.norm_witness = witness.witness;
    row.paper_bound = witness.paper_bound;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace cohres
