#include "olab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "olab/quadrature.hpp"

namespace olab {

GrowthFunction growth_power_neg(double lambda) {
  GrowthFunction g;
  g.family = GrowthFamily::PowerNeg;
  g.a = lambda;
  return g;
}

GrowthFunction growth_power_pos(double alpha) {
  GrowthFunction g;
  g.family = GrowthFamily::PowerPos;
  g.a = alpha;
  return g;
}

GrowthFunction growth_power_log(double a, double b) {
  GrowthFunction g;
  g.family = GrowthFamily::PowerLogG;
  g.a = a;
  g.b = b;
  return g;
}

GrowthFunction growth_constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("growth_constant: c must be > 0");
  GrowthFunction g;
  g.family = GrowthFamily::Constant;
  g.c = c;
  return g;
}

GrowthFunction growth_tabulated(std::vector<double> r, std::vector<double> v) {
  if (r.size() != v.size() || r.size() < 2)
    throw std::invalid_argument("growth_tabulated: need >= 2 samples");
  for (size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !(v[i] > 0.0))
      throw std::invalid_argument("growth_tabulated: samples must be positive");
    if (i > 0 && r[i] <= r[i - 1])
      throw std::invalid_argument("growth_tabulated: grid must ascend");
  }
  GrowthFunction g;
  g.family = GrowthFamily::Tabulated;
  g.tab_r = std::move(r);
  g.tab_v = std::move(v);
  return g;
}

GrowthFunction growth_scale(const GrowthFunction& g, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("growth_scale: c must be > 0");
  GrowthFunction out = g;
  if (out.family == GrowthFamily::Tabulated) {
    for (double& v : out.tab_v) v *= c;
  } else {
    out.c *= c;
  }
  return out;
}

double eval_growth(const GrowthFunction& g, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("eval_growth: r must be > 0");
  switch (g.family) {
    case GrowthFamily::PowerNeg:
      return g.c * std::pow(r, -g.a);
    case GrowthFamily::PowerPos:
      return g.c * std::pow(r, g.a);
    case GrowthFamily::PowerLogG:
      return g.c * std::pow(r, g.a) *
             std::pow(1.0 + std::abs(std::log(r)), g.b);
    case GrowthFamily::Constant:
      return g.c;
    case GrowthFamily::Tabulated: {
      if (r <= g.tab_r.front()) return g.tab_v.front();
      if (r >= g.tab_r.back()) return g.tab_v.back();
      const auto it =
          std::upper_bound(g.tab_r.begin(), g.tab_r.end(), r);
      const size_t hi = it - g.tab_r.begin();
      const size_t lo = hi - 1;
      const double w = std::log(r / g.tab_r[lo]) /
                       std::log(g.tab_r[hi] / g.tab_r[lo]);
      return std::exp((1.0 - w) * std::log(g.tab_v[lo]) +
                      w * std::log(g.tab_v[hi]));
    }
  }
  return 0.0;
}

double sup_growth_head(const GrowthFunction& g, double r) {
  switch (g.family) {
    case GrowthFamily::PowerNeg:
      return kInf;  // blows up at 0
    case GrowthFamily::PowerPos:
      return g.a >= 0.0 ? eval_growth(g, r) : kInf;
    case GrowthFamily::Constant:
      return g.c;
    default: {
      // fine log scan down to r * 2^-40
      double best = 0.0;
      for (int i = 0; i <= 400; ++i)
        best = std::max(best, eval_growth(g, r * std::pow(2.0, -0.1 * i)));
      return best;
    }
  }
}

namespace {

// pure power r^e (with scale): exponent recovered exactly, so the
// almost-monotonicity verdicts are decidable instead of grid evidence
bool as_pure_power(const GrowthFunction& g, double* e) {
  switch (g.family) {
    case GrowthFamily::PowerNeg:
      *e = -g.a;
      return true;
    case GrowthFamily::PowerPos:
      *e = g.a;
      return true;
    case GrowthFamily::Constant:
      *e = 0.0;
      return true;
    default:
      return false;
  }
}

}  // namespace

ClassReport classify_growth(const GrowthFunction& g, int dim,
                            const std::vector<double>& r_grid, double cap) {
  ClassReport rep;
  rep.grid = std::to_string(r_grid.size()) + "-point geometric grid";
  double e;
  if (as_pure_power(g, &e)) {
    rep.grid = "analytic exponent rule (pure power)";
    rep.almost_increasing = e >= 0.0;
    rep.almost_decreasing = e <= 0.0;
    rep.c_almost_increasing = rep.almost_increasing ? 1.0 : kInf;
    rep.c_almost_decreasing = rep.almost_decreasing ? 1.0 : kInf;
    rep.doubling = true;
    rep.c_doubling = std::pow(2.0, std::abs(e));
    rep.in_Gdec = e <= 0.0 && e + dim >= 0.0;
    rep.c_Gdec = rep.in_Gdec ? 1.0 : kInf;
    rep.in_Ginc = e >= 0.0 && e <= 1.0;
    rep.c_Ginc = rep.in_Ginc ? 1.0 : kInf;
    return rep;
  }
  const size_t m = r_grid.size();
  std::vector<double> v(m), vrn(m), vdr(m);
  for (size_t i = 0; i < m; ++i) {
    v[i] = eval_growth(g, r_grid[i]);
    vrn[i] = v[i] * std::pow(r_grid[i], dim);
    vdr[i] = v[i] / r_grid[i];
  }
  // theta(r) <= C theta(s) for r < s: C is the worst pairwise ratio
  auto almost_inc_const = [&](const std::vector<double>& w) {
    double c = 1.0;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) c = std::max(c, w[i] / w[j]);
    return c;
  };
  auto almost_dec_const = [&](const std::vector<double>& w) {
    double c = 1.0;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) c = std::max(c, w[j] / w[i]);
    return c;
  };
  rep.c_almost_increasing = almost_inc_const(v);
  rep.c_almost_decreasing = almost_dec_const(v);
  rep.almost_increasing = rep.c_almost_increasing <= cap;
  rep.almost_decreasing = rep.c_almost_decreasing <= cap;

  double cdbl = 1.0;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i; j < m; ++j) {
      const double q = r_grid[j] / r_grid[i];
      if (q > 2.0) break;
      cdbl = std::max(cdbl, std::max(v[i] / v[j], v[j] / v[i]));
    }
  rep.c_doubling = cdbl;
  rep.doubling = cdbl <= cap;

  const double c_dec = rep.c_almost_decreasing;
  const double c_rn_inc = almost_inc_const(vrn);
  rep.c_Gdec = std::max(c_dec, c_rn_inc);
  rep.in_Gdec = rep.c_Gdec <= cap;

  const double c_inc = rep.c_almost_increasing;
  const double c_dr_dec = almost_dec_const(vdr);
  rep.c_Ginc = std::max(c_inc, c_dr_dec);
  rep.in_Ginc = rep.c_Ginc <= cap;
  return rep;
}

namespace {

// int_r^inf g(t)/t dt. Exact for power families, octave quadrature otherwise.
double decay_tail(const GrowthFunction& g, double r) {
  switch (g.family) {
    case GrowthFamily::PowerNeg:
      return g.a > 0.0 ? eval_growth(g, r) / g.a : kInf;
    case GrowthFamily::PowerPos:
      return g.a < 0.0 ? -eval_growth(g, r) / g.a : kInf;
    case GrowthFamily::Constant:
      return kInf;
    default:
      return tail_integral([&](double t) { return eval_growth(g, t) / t; }, r);
  }
}

}  // namespace

ConditionReport check_decay_integral(const GrowthFunction& phi,
                                     const std::vector<double>& r_grid) {
  ConditionReport rep;
  rep.grid = std::to_string(r_grid.size()) + "-point geometric grid";
  double best = 0.0, wit = r_grid.front();
  for (double r : r_grid) {
    const double tail = decay_tail(phi, r);
    const double ratio = tail / eval_growth(phi, r);
    if (ratio > best) {
      best = ratio;
      wit = r;
    }
    if (std::isinf(best)) break;
  }
  rep.best_constant = best;
  rep.witness = wit;
  rep.holds = std::isfinite(best) && best <= rep.cap;
  if (std::isinf(best)) rep.note = "tail diverges";
  return rep;
}

double rho_star(const GrowthFunction& rho, double r) {
  switch (rho.family) {
    case GrowthFamily::PowerPos:
      if (rho.a <= 0.0) return kInf;
      return eval_growth(rho, r) / rho.a;
    case GrowthFamily::PowerNeg:
      return kInf;
    case GrowthFamily::Constant:
      return kInf;  // divergent at 0
    default:
      return head_integral_over_t([&](double t) { return eval_growth(rho, t); },
                                  r);
  }
}

double growth_tail_integral(const GrowthFunction& g,
                            const std::function<double(double)>& f, double r) {
  return tail_integral([&](double t) { return eval_growth(g, t) * f(t) / t; },
                       r);
}

ConditionReport check_rho_admissible(const GrowthFunction& rho, int dim,
                                     double eps,
                                     const std::vector<double>& r_grid,
                                     double K1, double K2) {
  if (!(K1 < K2)) throw std::invalid_argument("check_rho_admissible: K1 < K2");
  if (!(eps > 0.0 && eps < dim))
    throw std::invalid_argument("check_rho_admissible: eps in (0, n)");
  ConditionReport rep;
  rep.grid = std::to_string(r_grid.size()) + "-point geometric grid";

  // head integral int_0 rho(t)/t dt finite
  ConditionReport head;
  head.best_constant = rho_star(rho, 1.0);
  head.holds = std::isfinite(head.best_constant);
  head.grid = "int_0^1 rho(t)/t dt";
  rep.parts.push_back({"int_rho", head});

  // octave sup bound: sup_{r<=t<=2r} rho(t) <= C int_{K1 r}^{K2 r} rho(t)/t dt
  ConditionReport sup_rep;
  {
    double best = 0.0, wit = r_grid.front();
    for (double r : r_grid) {
      double sup = 0.0;
      for (int i = 0; i <= 64; ++i)
        sup = std::max(sup, eval_growth(rho, r * std::pow(2.0, i / 64.0)));
      const double denom = integrate(
          [&](double t) { return eval_growth(rho, t) / t; }, K1 * r, K2 * r);
      const double ratio = sup / denom;
      if (ratio > best) {
        best = ratio;
        wit = r;
      }
    }
    sup_rep.best_constant = best;
    sup_rep.witness = wit;
    sup_rep.holds = std::isfinite(best) && best <= sup_rep.cap;
  }
  rep.parts.push_back({"sup_rho", sup_rep});

  // (rho/rn): rho(r)/r^{n-eps} almost decreasing; exponent rule for powers
  ConditionReport ad;
  double rho_e;
  if (as_pure_power(rho, &rho_e)) {
    ad.grid = "analytic exponent rule (pure power)";
    ad.holds = rho_e - (dim - eps) <= 0.0;
    ad.best_constant = ad.holds ? 1.0 : kInf;
  } else {
    double best = 1.0, wit = r_grid.front();
    for (size_t i = 0; i < r_grid.size(); ++i) {
      const double wi = eval_growth(rho, r_grid[i]) /
                        std::pow(r_grid[i], dim - eps);
      for (size_t j = i + 1; j < r_grid.size(); ++j) {
        const double wj = eval_growth(rho, r_grid[j]) /
                          std::pow(r_grid[j], dim - eps);
        if (wj / wi > best) {
          best = wj / wi;
          wit = r_grid[i];
        }
      }
    }
    ad.best_constant = best;
    ad.witness = wit;
    ad.holds = best <= ad.cap;
  }
  rep.parts.push_back({"rho_rn_almost_dec", ad});

  // (rho conti): |rho(r)/r^n - rho(s)/s^n| <= C |r-s| r^{-n-1} rho*(r),
  // s in [r/2, 2r]
  ConditionReport conti;
  {
    double best = 0.0, wit = r_grid.front(), wit2 = 0.0;
    for (double r : r_grid) {
      const double star = rho_star(rho, r);
      if (!std::isfinite(star)) {
        best = kInf;
        wit = r;
        break;
      }
      for (int i = -16; i <= 16; ++i) {
        const double s = r * std::pow(2.0, i / 16.0);
        if (s == r) continue;
        const double lhs = std::abs(eval_growth(rho, r) / std::pow(r, dim) -
                                    eval_growth(rho, s) / std::pow(s, dim));
        const double denom =
            std::abs(r - s) * star / std::pow(r, dim + 1);
        const double ratio = lhs / denom;
        if (ratio > best) {
          best = ratio;
          wit = r;
          wit2 = s;
        }
      }
    }
    conti.best_constant = best;
    conti.witness = wit;
    conti.witness2 = wit2;
    conti.holds = std::isfinite(best) && best <= conti.cap;
  }
  rep.parts.push_back({"rho_conti", conti});

  rep.holds = rep.all_parts_hold();
  double overall = 0.0;
  for (const auto& p : rep.parts)
    overall = std::max(overall, p.second.best_constant);
  rep.best_constant = overall;
  return rep;
}

namespace {

struct PowerIntegrand {
  // g(t) * Phi^{-1}(vp(t)) = c * t^e when all slots are pure powers
  bool ok = false;
  double c = 1.0;
  double e = 0.0;
};

PowerIntegrand as_power_integrand(const GrowthFunction* g,
                                  const YoungFunction* Phi,
                                  const GrowthFunction* vp) {
  PowerIntegrand pi;
  double c = 1.0, e = 0.0;
  if (g) {
    if (g->family == GrowthFamily::PowerPos) {
      c *= g->c;
      e += g->a;
    } else if (g->family == GrowthFamily::PowerNeg) {
      c *= g->c;
      e -= g->a;
    } else if (g->family == GrowthFamily::Constant) {
      c *= g->c;
    } else {
      return pi;
    }
  }
  if (Phi && vp) {
    PowerForm pf;
    if (!as_power(*Phi, &pf)) return pi;
    double ve;
    if (vp->family == GrowthFamily::PowerNeg)
      ve = -vp->a;
    else if (vp->family == GrowthFamily::PowerPos)
      ve = vp->a;
    else if (vp->family == GrowthFamily::Constant)
      ve = 0.0;
    else
      return pi;
    // Phi^{-1}(vp(t)) = (c_vp t^{ve})^{1/p} / c_phi
    c *= std::pow(vp->c, 1.0 / pf.p) / pf.c;
    e += ve / pf.p;
  }
  pi.ok = true;
  pi.c = c;
  pi.e = e;
  return pi;
}

// int_r^inf g(t) Phi^{-1}(vp(t)) / t dt
double tail_g_phiinv(const GrowthFunction* g, const YoungFunction& Phi,
                     const GrowthFunction& vp, double r) {
  const PowerIntegrand pi = as_power_integrand(g, &Phi, &vp);
  if (pi.ok) {
    if (pi.e >= 0.0) return kInf;
    return pi.c * std::pow(r, pi.e) / (-pi.e);
  }
  return tail_integral(
      [&](double t) {
        double v = inverse_young(Phi, eval_growth(vp, t)) / t;
        if (g) v *= eval_growth(*g, t);
        return v;
      },
      r);
}

}  // namespace

double tail_phi_inverse(const YoungFunction& Phi, const GrowthFunction& vp,
                        double r) {
  return tail_g_phiinv(nullptr, Phi, vp, r);
}

double tail_rho_phi_inverse(const GrowthFunction& rho, const YoungFunction& Phi,
                            const GrowthFunction& vp, double r) {
  return tail_g_phiinv(&rho, Phi, vp, r);
}

double tail_psi_nested(const GrowthFunction& psi, const GrowthFunction* rho,
                       const YoungFunction& Phi, const GrowthFunction& vp,
                       double r) {
  const PowerIntegrand inner = as_power_integrand(rho, &Phi, &vp);
  const PowerIntegrand outer = as_power_integrand(&psi, nullptr, nullptr);
  if (inner.ok && outer.ok && inner.e < 0.0) {
    // inner tail = c t^e / (-e); outer integrand c_psi c t^{e+e_psi-1}/(-e)
    const double e = inner.e + outer.e;
    if (e >= 0.0) return kInf;
    return outer.c * inner.c / (-inner.e) * std::pow(r, e) / (-e);
  }
  return tail_integral(
      [&](double t) {
        return eval_growth(psi, t) * tail_g_phiinv(rho, Phi, vp, t) / t;
      },
      r, 1e-9);
}

ConditionReport check_pairing(PairingKind kind, const PairingInput& in,
                              const std::vector<double>& r_grid) {
  auto require = [](const void* p, const char* what) {
    if (!p) throw std::invalid_argument(std::string("check_pairing: missing ") + what);
  };
  ConditionReport rep;
  rep.grid = std::to_string(r_grid.size()) + "-point geometric grid";
  double best = 0.0, wit = r_grid.front(), wit2 = std::nan("");

  auto scan = [&](const std::function<double(double)>& ratio) {
    for (double r : r_grid) {
      const double q = ratio(r);
      if (q > best) {
        best = q;
        wit = r;
      }
      if (std::isinf(best)) break;
    }
  };

  switch (kind) {
    case PairingKind::CZ: {
      require(in.Phi, "Phi");
      require(in.Psi, "Psi");
      require(in.vp, "vp");
      require(in.psi, "psi");
      scan([&](double r) {
        const double u = eval_growth(*in.vp, r);
        return eval_growth(*in.psi, r) * inverse_young(*in.Phi, u) /
               inverse_young(*in.Psi, u);
      });
      break;
    }
    case PairingKind::CZ_NEC: {
      require(in.Phi, "Phi");
      require(in.Psi, "Psi");
      require(in.vp, "vp");
      require(in.psi, "psi");
      scan([&](double r) {
        const double u = eval_growth(*in.vp, r);
        return inverse_young(*in.Psi, u) /
               (eval_growth(*in.psi, r) * inverse_young(*in.Phi, u));
      });
      break;
    }
    case PairingKind::MAXIMAL: {
      require(in.Phi, "Phi");
      require(in.Psi, "Psi");
      require(in.vp, "vp");
      require(in.rho, "rho");
      scan([&](double r) {
        const double u = eval_growth(*in.vp, r);
        return sup_growth_head(*in.rho, r) * inverse_young(*in.Phi, u) /
               inverse_young(*in.Psi, u);
      });
      break;
    }
    case PairingKind::IPVP: {
      require(in.Phi, "Phi");
      require(in.vp, "vp");
      scan([&](double r) {
        return tail_g_phiinv(nullptr, *in.Phi, *in.vp, r) /
               inverse_young(*in.Phi, eval_growth(*in.vp, r));
      });
      break;
    }
    case PairingKind::HOLDER: {
      require(in.Phi, "Phi");
      require(in.Psi, "Psi");
      require(in.Phi0, "Phi0");
      require(in.vp, "vp");
      require(in.psi, "psi");
      require(in.theta_g, "theta_g");
      const std::vector<double> ts =
          in.t_grid.empty() ? default_scan_grid() : in.t_grid;
      for (double r : r_grid) {
        for (double t : ts) {
          const double lhs =
              inverse_young(*in.Phi0, t * eval_growth(*in.psi, r)) *
              inverse_young(*in.Phi, t * eval_growth(*in.vp, r));
          const double rhs =
              inverse_young(*in.Psi, t * eval_growth(*in.theta_g, r));
          const double q = lhs / rhs;
          if (q > best) {
            best = q;
            wit = r;
            wit2 = t;
          }
        }
      }
      break;
    }
    case PairingKind::FRACT: {
      require(in.Phi, "Phi");
      require(in.Psi, "Psi");
      require(in.Theta, "Theta");
      require(in.vp, "vp");
      require(in.psi, "psi");
      require(in.rho, "rho");
      ConditionReport ir_a;   // head+tail integral display
      ConditionReport mr_a;   // psi Theta^-1 <= C Psi^-1 display
      double b1 = 0.0, w1 = r_grid.front();
      double b2 = 0.0, w2 = r_grid.front();
      for (double r : r_grid) {
        const double u = eval_growth(*in.vp, r);
        const double lhs1 =
            rho_star(*in.rho, r) * inverse_young(*in.Phi, u) +
            tail_g_phiinv(in.rho, *in.Phi, *in.vp, r);
        const double q1 = lhs1 / inverse_young(*in.Theta, u);
        if (q1 > b1) {
          b1 = q1;
          w1 = r;
        }
        const double q2 = eval_growth(*in.psi, r) *
                          inverse_young(*in.Theta, u) /
                          inverse_young(*in.Psi, u);
        if (q2 > b2) {
          b2 = q2;
          w2 = r;
        }
      }
      ir_a.best_constant = b1;
      ir_a.witness = w1;
      ir_a.holds = std::isfinite(b1) && b1 <= ir_a.cap;
      mr_a.best_constant = b2;
      mr_a.witness = w2;
      mr_a.holds = std::isfinite(b2) && b2 <= mr_a.cap;
      rep.parts.push_back({"integral_display", ir_a});
      rep.parts.push_back({"weight_display", mr_a});
      best = std::max(b1, b2);
      wit = b1 >= b2 ? w1 : w2;
      break;
    }
  }
  rep.best_constant = best;
  rep.witness = wit;
  rep.witness2 = wit2;
  if (!rep.parts.empty())
    rep.holds = rep.all_parts_hold();
  else
    rep.holds = std::isfinite(best) && best <= rep.cap;
  return rep;
}

}  // namespace olab
