#include "olab/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace olab {

namespace {

// mean over the ball of |f - offset|^p (p = 1 path reused for means)
double ball_abs_power_mean(const SampledField& f, const BallCells& bc,
                           double offset, double p) {
  long double acc = 0.0L;
  for (const auto& s : bc.spans) {
    const long base = (long)s[0] * (f.w.n == 2 ? f.w.N : 0);
    for (int ix = s[1]; ix < s[2]; ++ix) {
      const double a = std::abs(f.v[base + ix] - offset);
      acc += p == 1.0 ? a : std::pow(a, p);
    }
  }
  return (double)(acc / bc.count);
}

double modular_cells(const SampledField& f, const BallCells& bc,
                     const YoungFunction& Phi, double inv_vp, double lambda,
                     double offset) {
  long double acc = 0.0L;
  for (const auto& s : bc.spans) {
    const long base = (long)s[0] * (f.w.n == 2 ? f.w.N : 0);
    for (int ix = s[1]; ix < s[2]; ++ix) {
      const double t = std::abs(f.v[base + ix] - offset) / lambda;
      const double ph = eval_young(Phi, t);
      if (std::isinf(ph)) return kInf;
      acc += ph;
    }
  }
  return (double)(acc / bc.count) * inv_vp;
}

}  // namespace

double modular(const SampledField& f, const YoungFunction& Phi,
               const GrowthFunction& vp, const Ball& B, double lambda,
               double offset) {
  if (!(lambda > 0.0)) throw std::invalid_argument("modular: lambda > 0");
  const BallCells bc = ball_cells(f.w, B);
  if (bc.count == 0) throw std::invalid_argument("modular: empty ball");
  return modular_cells(f, bc, Phi, 1.0 / eval_growth(vp, B.radius), lambda,
                       offset);
}

NormResult ball_norm(const SampledField& f, const YoungFunction& Phi,
                     const GrowthFunction& vp, const Ball& B, double offset) {
  const BallCells bc = ball_cells(f.w, B);
  if (bc.count == 0) throw std::invalid_argument("ball_norm: empty ball");
  const double vp_r = eval_growth(vp, B.radius);

  NormResult res;
  res.attaining_ball = B;

  double maxabs = 0.0;
  for (const auto& s : bc.spans) {
    const long base = (long)s[0] * (f.w.n == 2 ? f.w.N : 0);
    for (int ix = s[1]; ix < s[2]; ++ix)
      maxabs = std::max(maxabs, std::abs(f.v[base + ix] - offset));
  }
  if (maxabs == 0.0) return res;  // zero on the ball

  PowerForm pf;
  if (as_power(Phi, &pf)) {
    const double mp = ball_abs_power_mean(f, bc, offset, pf.p);
    res.value = pf.c * std::pow(mp / vp_r, 1.0 / pf.p);
    return res;
  }

  const double inv_vp = 1.0 / vp_r;
  double hi = maxabs / inverse_young(Phi, vp_r);
  if (!(hi > 0.0) || std::isinf(hi))
    throw std::runtime_error("ball_norm: degenerate bracket");
  const double hi0 = hi;
  int iters = 0;
  while (modular_cells(f, bc, Phi, inv_vp, hi, offset) > 1.0) {
    hi *= 2.0;
    ++iters;
    if (hi > hi0 * 0x1p512)
      throw std::runtime_error("ball_norm: bracket exceeded 2^512");
  }
  double lo = 0.0;
  while (hi - lo > 1e-10 * hi && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    if (modular_cells(f, bc, Phi, inv_vp, mid, offset) <= 1.0)
      hi = mid;
    else
      lo = mid;
    ++iters;
  }
  res.value = hi;
  res.bisection_iterations = iters;
  return res;
}

NormResult om_norm(const SampledField& f, const YoungFunction& Phi,
                   const GrowthFunction& vp, const BallFamily& fam) {
  if (fam.balls.empty()) throw std::invalid_argument("om_norm: empty family");
  NormResult best;
  for (const Ball& B : fam.balls) {
    const BallCells bc = ball_cells(f.w, B);
    if (bc.count == 0) continue;
    NormResult r = ball_norm(f, Phi, vp, B);
    if (r.value > best.value) {
      best = r;
    }
  }
  return best;
}

NormResult campanato_norm(const SampledField& f, const YoungFunction& Phi,
                          const GrowthFunction& vp, const BallFamily& fam) {
  if (fam.balls.empty())
    throw std::invalid_argument("campanato_norm: empty family");
  NormResult best;
  for (const Ball& B : fam.balls) {
    const BallCells bc = ball_cells(f.w, B);
    if (bc.count == 0) continue;
    const double mean = ball_mean(f, B);
    NormResult r = ball_norm(f, Phi, vp, B, mean);
    if (r.value > best.value) best = r;
  }
  return best;
}

NormResult campanato_p(const SampledField& f, double p,
                       const GrowthFunction& psi, const BallFamily& fam) {
  if (!(p >= 1.0)) throw std::invalid_argument("campanato_p: p >= 1");
  if (fam.balls.empty())
    throw std::invalid_argument("campanato_p: empty family");
  NormResult best;
  for (const Ball& B : fam.balls) {
    const BallCells bc = ball_cells(f.w, B);
    if (bc.count == 0) continue;
    const double mean = ball_mean(f, B);
    const double v = std::pow(ball_abs_power_mean(f, bc, mean, p), 1.0 / p) /
                     eval_growth(psi, B.radius);
    if (v > best.value) {
      best.value = v;
      best.attaining_ball = B;
    }
  }
  return best;
}

SigmaResult sigma_limit(const SampledField& f,
                        const std::vector<double>& ladder,
                        const FieldSpec* spec, double tol) {
  if (ladder.empty()) throw std::invalid_argument("sigma_limit: empty ladder");
  const Window& w = f.w;
  const double h = w.h();
  const double hn = std::pow(h, w.n);
  SigmaResult out;

  long double total = 0.0L;
  for (double v : f.v) total += v;
  const double window_mass = (double)total * hn;

  auto vol = [&](double r) {
    return w.n == 1 ? 2.0 * r : M_PI * r * r;
  };
  auto analytic_ball_integral = [&](double r) -> double {
    // integral of the analytic profile over B(0,r), full-ball closed forms
    if (!spec) return window_mass;
    if (spec->compact_support(w.L)) return window_mass;
    if (spec->kind == FieldKind::PowerSingular) {
      const double b = spec->beta;
      return w.n == 1 ? 2.0 * std::pow(r, 1.0 - b) / (1.0 - b)
                      : 2.0 * M_PI * std::pow(r, 2.0 - b) / (2.0 - b);
    }
    return window_mass;  // no extension model: window content only
  };

  const double cover = w.n == 1 ? w.L : w.L * std::sqrt(2.0);
  double prev = 0.0;
  bool first = true;
  for (double r : ladder) {
    double mean;
    if (r <= cover) {
      mean = ball_mean(f, Ball{{0.0, 0.0}, r});
    } else {
      mean = analytic_ball_integral(r) / vol(r);
    }
    if (!first) out.last_delta = std::abs(mean - prev);
    prev = mean;
    first = false;
    out.value = mean;
  }
  out.converged = ladder.size() >= 2 && out.last_delta < tol;
  return out;
}

SampledField subtract_constant(const SampledField& f, double c) {
  SampledField g = f;
  for (double& v : g.v) v -= c;
  return g;
}

}  // namespace olab
