#include "cohres/adaptive_simpson.hpp"

#include <cmath>
#include <cstddef>

namespace cohres {

namespace {

struct Workspace {
  const std::function<double(double)>& f;
  std::size_t bisections_left;
  bool exhausted = false;
};

double simpson(double fa, double fm, double fb, double width) {
  return (fa + 4.0 * fm + fb) * width / 6.0;
}

// Returns the Richardson-corrected estimate for [a, b]; on budget or depth
// exhaustion accepts the current estimate and marks the workspace so the
// caller can refuse to certify the tolerance.
double refine(Workspace& ws, double a, double b, double fa, double fm, double fb, double whole,
              double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = ws.f(lm);
  const double frm = ws.f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol) {
    return left + right + err;
  }
  if (ws.bisections_left == 0 || depth >= 64 || !(a < lm && rm < b)) {
    ws.exhausted = true;
    return left + right + err;
  }
  ws.bisections_left -= 1;
  return refine(ws, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         refine(ws, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        std::size_t max_bisections) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("adaptive_simpson: tol must be positive");
  }
  if (!(a <= b)) {
    throw std::invalid_argument("adaptive_simpson: interval must satisfy a <= b");
  }
  if (a == b) {
    return 0.0;
  }
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, b - a);
  Workspace ws{f, max_bisections};
  const double result = refine(ws, a, b, fa, fm, fb, whole, tol, 0);
  if (ws.exhausted) {
    throw accuracy_error("adaptive_simpson: subdivision budget exhausted before tolerance",
                         result);
  }
  return result;
}

}  // namespace cohres
