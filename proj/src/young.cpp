#include "olab/young.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace olab {

namespace {

constexpr double kBracketCap = 0x1p512;  // give up doubling beyond 2^512

double piecewise_eval(const std::vector<std::array<double, 2>>& pts,
                      double final_slope, double t) {
  const auto& last = pts.back();
  if (t >= last[0]) {
    if (t == last[0]) return last[1];
    if (std::isinf(final_slope)) return kInf;
    return last[1] + final_slope * (t - last[0]);
  }
  // binary search for the segment containing t
  size_t lo = 0, hi = pts.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (pts[mid][0] <= t)
      lo = mid;
    else
      hi = mid;
  }
  const double t0 = pts[lo][0], v0 = pts[lo][1];
  const double t1 = pts[hi][0], v1 = pts[hi][1];
  if (t1 == t0) return v0;
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

// inf{t : piecewise(t) > u} for a nondecreasing convex piecewise graph.
double piecewise_inverse(const std::vector<std::array<double, 2>>& pts,
                         double final_slope, double u) {
  const auto& last = pts.back();
  if (u >= last[1]) {
    if (std::isinf(final_slope)) return last[0];
    if (final_slope <= 0.0) return kInf;  // flat tail never exceeds u
    return last[0] + (u - last[1]) / final_slope;
  }
  // find first breakpoint with value > u, invert on the segment before it
  size_t hi = 1;
  while (pts[hi][1] <= u) ++hi;
  const double t0 = pts[hi - 1][0], v0 = pts[hi - 1][1];
  const double t1 = pts[hi][0], v1 = pts[hi][1];
  if (v1 == v0) return t1;
  return t0 + (u - v0) * (t1 - t0) / (v1 - v0);
}

double raw_power_log(double p, double q, double t) {
  if (t == 0.0) return 0.0;
  return std::pow(t, p) * std::pow(std::log(std::exp(1.0) + t), q);
}

// Lower convex hull of samples of t^p (log(e+t))^q on a fixed log grid.
// The rectified function is the piecewise-linear interpolant of the hull.
std::shared_ptr<const std::vector<std::array<double, 2>>> build_power_log_hull(
    double p, double q) {
  constexpr int kNodes = 2048;
  std::vector<std::array<double, 2>> samples;
  samples.reserve(kNodes + 1);
  samples.push_back({0.0, 0.0});
  const double t_lo = 1e-8, t_hi = 1e8;
  const double step = std::log(t_hi / t_lo) / (kNodes - 1);
  for (int i = 0; i < kNodes; ++i) {
    const double t = t_lo * std::exp(step * i);
    samples.push_back({t, raw_power_log(p, q, t)});
  }
  // Andrew-monotone-chain lower hull in (t, v)
  std::vector<std::array<double, 2>> hull;
  for (const auto& s : samples) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross =
          (b[0] - a[0]) * (s[1] - a[1]) - (b[1] - a[1]) * (s[0] - a[0]);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(s);
  }
  return std::make_shared<const std::vector<std::array<double, 2>>>(
      std::move(hull));
}

double hull_final_slope(const std::vector<std::array<double, 2>>& hull) {
  const auto& a = hull[hull.size() - 2];
  const auto& b = hull[hull.size() - 1];
  return (b[1] - a[1]) / (b[0] - a[0]);
}

}  // namespace

double YoungFunction::a_phi() const {
  switch (family) {
    case YoungFamily::Power:
    case YoungFamily::PowerLog:
    case YoungFamily::ExpMinusOne:
    case YoungFamily::LinearCap:
      return 0.0;
    case YoungFamily::Scaled:
      return inner->a_phi() / scale;
    case YoungFamily::PiecewiseLinearConvex: {
      double a = 0.0;
      for (const auto& pt : points) {
        if (pt[1] == 0.0)
          a = pt[0];
        else
          break;
      }
      return a;
    }
  }
  return 0.0;
}

double YoungFunction::b_phi() const {
  switch (family) {
    case YoungFamily::Power:
    case YoungFamily::PowerLog:
    case YoungFamily::ExpMinusOne:
      return kInf;
    case YoungFamily::LinearCap:
      return 1.0;
    case YoungFamily::Scaled:
      return inner->b_phi() / scale;
    case YoungFamily::PiecewiseLinearConvex:
      return std::isinf(final_slope) ? points.back()[0] : kInf;
  }
  return kInf;
}

YoungFunction young_power(double p) {
  if (p < 1.0) throw std::invalid_argument("young_power: p must be >= 1");
  YoungFunction y;
  y.family = YoungFamily::Power;
  y.p = p;
  return y;
}

YoungFunction young_power_log(double p, double q) {
  if (p < 1.0) throw std::invalid_argument("young_power_log: p must be >= 1");
  YoungFunction y;
  y.family = YoungFamily::PowerLog;
  y.p = p;
  y.q = q;
  if (q < 0.0) y.hull = build_power_log_hull(p, q);
  return y;
}

YoungFunction young_exp_minus_one() {
  YoungFunction y;
  y.family = YoungFamily::ExpMinusOne;
  return y;
}

YoungFunction young_linear_cap() {
  YoungFunction y;
  y.family = YoungFamily::LinearCap;
  return y;
}

YoungFunction young_piecewise(std::vector<std::array<double, 2>> pts,
                              double final_slope) {
  if (pts.empty() || pts.front()[0] != 0.0 || pts.front()[1] != 0.0)
    throw std::invalid_argument("young_piecewise: first breakpoint must be (0,0)");
  double prev_slope = 0.0;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (pts[i][0] <= pts[i - 1][0])
      throw std::invalid_argument("young_piecewise: breakpoints must ascend");
    const double s =
        (pts[i][1] - pts[i - 1][1]) / (pts[i][0] - pts[i - 1][0]);
    if (s < prev_slope - 1e-12)
      throw std::invalid_argument("young_piecewise: slopes must be nondecreasing");
    prev_slope = s;
  }
  YoungFunction y;
  y.family = YoungFamily::PiecewiseLinearConvex;
  if (final_slope < 0.0) final_slope = prev_slope;  // extend with last slope
  if (!std::isinf(final_slope) && final_slope < prev_slope)
    throw std::invalid_argument("young_piecewise: final slope breaks convexity");
  y.points = std::move(pts);
  y.final_slope = final_slope;
  return y;
}

YoungFunction young_scaled(YoungFunction inner, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("young_scaled: c must be > 0");
  YoungFunction y;
  y.family = YoungFamily::Scaled;
  y.scale = c;
  y.inner = std::make_shared<const YoungFunction>(std::move(inner));
  return y;
}

bool as_power(const YoungFunction& phi, PowerForm* out) {
  if (phi.family == YoungFamily::Power) {
    *out = {phi.p, 1.0};
    return true;
  }
  if (phi.family == YoungFamily::Scaled) {
    PowerForm in;
    if (!as_power(*phi.inner, &in)) return false;
    *out = {in.p, in.c * phi.scale};
    return true;
  }
  return false;
}

double eval_young(const YoungFunction& phi, double t) {
  if (t < 0.0) throw std::invalid_argument("eval_young: t must be >= 0");
  if (t == 0.0) return 0.0;
  if (std::isinf(t)) return kInf;
  switch (phi.family) {
    case YoungFamily::Power:
      return std::pow(t, phi.p);
    case YoungFamily::PowerLog:
      if (phi.hull) return piecewise_eval(*phi.hull, hull_final_slope(*phi.hull), t);
      return raw_power_log(phi.p, phi.q, t);
    case YoungFamily::ExpMinusOne:
      return std::expm1(t);
    case YoungFamily::LinearCap:
      return t <= 1.0 ? t : kInf;
    case YoungFamily::Scaled:
      return eval_young(*phi.inner, phi.scale * t);
    case YoungFamily::PiecewiseLinearConvex:
      return piecewise_eval(phi.points, phi.final_slope, t);
  }
  return 0.0;
}

double inverse_young(const YoungFunction& phi, double u) {
  if (u < 0.0) throw std::invalid_argument("inverse_young: u must be >= 0");
  if (std::isinf(u)) return kInf;
  switch (phi.family) {
    case YoungFamily::Power:
      return std::pow(u, 1.0 / phi.p);
    case YoungFamily::ExpMinusOne:
      return std::log1p(u);
    case YoungFamily::LinearCap:
      return std::min(u, 1.0);
    case YoungFamily::Scaled:
      return inverse_young(*phi.inner, u) / phi.scale;
    case YoungFamily::PiecewiseLinearConvex:
      return piecewise_inverse(phi.points, phi.final_slope, u);
    case YoungFamily::PowerLog: {
      if (phi.hull)
        return piecewise_inverse(*phi.hull, hull_final_slope(*phi.hull), u);
      if (u == 0.0) return 0.0;
      // strictly increasing and continuous: bracket by doubling, then bisect
      double hi = 1.0;
      while (raw_power_log(phi.p, phi.q, hi) <= u) {
        hi *= 2.0;
        if (hi > kBracketCap) return kInf;
      }
      double lo = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (raw_power_log(phi.p, phi.q, mid) > u)
          hi = mid;
        else
          lo = mid;
        if (hi - lo <= 1e-12 * hi) break;
      }
      return hi;
    }
  }
  return 0.0;
}

YoungFunction complementary(const YoungFunction& phi) {
  switch (phi.family) {
    case YoungFamily::Power: {
      if (phi.p == 1.0) {
        // conjugate of identity: 0 on [0,1], inf beyond
        return young_piecewise({{0.0, 0.0}, {1.0, 0.0}}, kInf);
      }
      const double pc = phi.p / (phi.p - 1.0);
      const double c = (1.0 - 1.0 / phi.p) * std::pow(phi.p, -1.0 / (phi.p - 1.0));
      return young_scaled(young_power(pc), std::pow(c, 1.0 / pc));
    }
    case YoungFamily::Scaled:
      return young_scaled(complementary(*phi.inner), 1.0 / phi.scale);
    case YoungFamily::LinearCap:
      // sup_{u in [0,1]} (tu - u) = max(t - 1, 0)
      return young_piecewise({{0.0, 0.0}, {1.0, 0.0}}, 1.0);
    case YoungFamily::PiecewiseLinearConvex: {
      // Legendre transform: breakpoints of the conjugate sit at the slopes
      // of Phi and its slopes are the breakpoint abscissae of Phi. On
      // [s_k, s_{k+1}] the sup of tau*u - Phi(u) is attained at u = t_k.
      const auto& pts = phi.points;
      const size_t m = pts.size() - 1;  // segment count
      std::vector<double> slopes(m);
      for (size_t i = 1; i <= m; ++i)
        slopes[i - 1] = (pts[i][1] - pts[i - 1][1]) / (pts[i][0] - pts[i - 1][0]);

      std::vector<std::array<double, 2>> out{{0.0, 0.0}};
      auto push_unique = [&out](double tau, double val) {
        if (tau > out.back()[0]) out.push_back({tau, val});
      };
      // breakpoints at interior slope changes tau = s_k, value s_k*t_{k-1} - v_{k-1}
      for (size_t k = 0; k < m; ++k)
        push_unique(slopes[k], slopes[k] * pts[k][0] - pts[k][1]);
      if (std::isinf(phi.final_slope))
        return young_piecewise(std::move(out), pts.back()[0]);
      push_unique(phi.final_slope,
                  phi.final_slope * pts.back()[0] - pts.back()[1]);
      return young_piecewise(std::move(out), kInf);
    }
    case YoungFamily::ExpMinusOne:
    case YoungFamily::PowerLog:
      throw std::invalid_argument(
          "complementary: no closed representation for this family");
  }
  throw std::logic_error("complementary: unreachable");
}

YoungFunction power_compose(const YoungFunction& phi, double theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("power_compose: theta must be in (0,1]");
  PowerForm pf;
  if (!as_power(phi, &pf))
    throw std::invalid_argument("power_compose: supported for Power chains only");
  if (pf.p <= 1.0 && theta < 1.0)
    throw std::invalid_argument("power_compose: phi must satisfy nabla_2 (p > 1)");
  const double p_new = pf.p * theta;
  if (p_new < 1.0)
    throw std::invalid_argument("power_compose: p*theta < 1 is not a Young function");
  // (c t^theta)^p = (c' t)^{p theta} with c' = c^{1/theta}
  YoungFunction out = young_power(p_new);
  const double c_new = std::pow(pf.c, 1.0 / theta);
  if (c_new != 1.0) out = young_scaled(std::move(out), c_new);
  return out;
}

std::vector<double> geometric_grid(double base, double ratio, int count) {
  std::vector<double> g;
  g.reserve(count);
  double v = base;
  for (int i = 0; i < count; ++i, v *= ratio) g.push_back(v);
  return g;
}

std::vector<double> default_scan_grid() {
  return geometric_grid(0x1p-20, 2.0, 41);  // 2^-20 .. 2^20
}

ConditionReport check_delta2(const YoungFunction& phi,
                             const std::vector<double>& t_grid) {
  ConditionReport rep;
  rep.grid = "t geometric, " + std::to_string(t_grid.size()) + " points";
  double best = 0.0, wit = t_grid.empty() ? 0.0 : t_grid.front();
  const double b = phi.b_phi();
  for (double t : t_grid) {
    if (t > b) continue;  // Phi(t) = inf there: constraint vacuous
    const double v1 = eval_young(phi, t);
    const double v2 = eval_young(phi, 2.0 * t);
    double ratio;
    if (v1 == 0.0)
      ratio = (v2 == 0.0) ? 1.0 : kInf;
    else if (std::isinf(v1))
      ratio = kInf;  // overflow before b(Phi): cannot certify on this grid
    else
      ratio = v2 / v1;  // v2 = inf (jump or overflow) gives inf
    if (ratio > best) {
      best = ratio;
      wit = t;
    }
  }
  rep.best_constant = best;
  rep.witness = wit;
  rep.holds = std::isfinite(best) && best <= rep.cap;
  if (!rep.holds && std::isfinite(best)) rep.note = "threshold exceeded";
  return rep;
}

ConditionReport check_nabla2(const YoungFunction& phi,
                             const std::vector<double>& t_grid,
                             const std::vector<double>& k_grid) {
  ConditionReport rep;
  rep.grid = "t x k scan, " + std::to_string(t_grid.size()) + " x " +
             std::to_string(k_grid.size());
  for (double k : k_grid) {
    if (!(k > 1.0)) continue;
    bool ok = true;
    for (double t : t_grid) {
      const double lhs = eval_young(phi, t);
      const double rhs = eval_young(phi, k * t);
      if (std::isinf(rhs)) continue;      // inf/(2k) = inf dominates
      if (lhs > rhs / (2.0 * k)) {
        ok = false;
        rep.witness = t;
        break;
      }
    }
    if (ok) {
      rep.holds = true;
      rep.best_constant = k;
      return rep;
    }
  }
  rep.holds = false;
  rep.best_constant = kInf;
  return rep;
}

}  // namespace olab
