#include "olab/quadrature.hpp"

#include <cmath>
#include <limits>

namespace olab {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa,
                double b, double fb, double m, double fm, double whole,
                double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  const double scale = std::max(std::abs(whole), 1e-300);
  return adaptive(f, a, fa, b, fb, m, fm, whole, tol * scale, 48);
}

double tail_integral(const std::function<double(double)>& f, double a,
                     double tol, double* truncation_radius) {
  constexpr int kMaxOctaves = 990;  // a * 2^990 stays below DBL_MAX
  double acc = 0.0;
  double lo = a;
  for (int j = 0; j < kMaxOctaves; ++j) {
    const double hi = 2.0 * lo;
    const double piece = integrate(f, lo, hi, 1e-10);
    acc += piece;
    lo = hi;
    if (!std::isfinite(acc) || std::abs(piece) > 1e300) break;
    if (j >= 4 && std::abs(piece) <= tol * std::max(std::abs(acc), 1e-300)) {
      if (truncation_radius) *truncation_radius = hi;
      return acc;
    }
  }
  if (truncation_radius) *truncation_radius = lo;
  return std::numeric_limits<double>::infinity();
}

double head_integral_over_t(const std::function<double(double)>& g, double r,
                            double tol) {
  // int_0^r g(t)/t dt = int_0^inf g(r e^{-u}) du; u capped before r e^{-u}
  // underflows to exact zero.
  constexpr double kUMax = 700.0;
  auto integrand = [&](double u) { return g(r * std::exp(-u)); };
  double acc = 0.0;
  double lo = 0.0, hi = 1.0;
  for (;;) {
    const double piece = integrate(integrand, lo, hi, 1e-10);
    acc += piece;
    if (!std::isfinite(acc) || std::abs(piece) > 1e300)
      return std::numeric_limits<double>::infinity();
    if (hi >= 8.0 && std::abs(piece) <= tol * std::max(std::abs(acc), 1e-300))
      return acc;
    if (hi >= kUMax)
      return std::numeric_limits<double>::infinity();  // no decay at 0
    lo = hi;
    hi = std::min(2.0 * hi, kUMax);
  }
}

}  // namespace olab
