#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "olab/harness.hpp"
#include "olab/quadrature.hpp"

namespace olab {

namespace {

constexpr double kIdTol = 1e-9;  // guard for exact identities in doubles

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo * std::exp(step * i);
  return g;
}

ojson ball_json(const Ball& B) {
  return ojson{{"center", {B.center[0], B.center[1]}}, {"radius", B.radius}};
}

std::vector<std::pair<std::string, YoungFunction>> young_exemplars() {
  std::vector<std::pair<std::string, YoungFunction>> ys;
  ys.push_back({"power_1.5", young_power(1.5)});
  ys.push_back({"power_2", young_power(2.0)});
  ys.push_back({"power_3", young_power(3.0)});
  ys.push_back({"half_square", young_scaled(young_power(2.0), 1.0 / std::sqrt(2.0))});
  ys.push_back({"power_log_2_1", young_power_log(2.0, 1.0)});
  ys.push_back({"power_log_2_m05", young_power_log(2.0, -0.5)});
  ys.push_back({"exp_minus_one", young_exp_minus_one()});
  ys.push_back({"linear_cap", young_linear_cap()});
  ys.push_back({"piecewise", young_piecewise({{0, 0}, {1, 0}, {2, 3}})});
  return ys;
}

std::vector<std::pair<std::string, YoungFunction>> conjugable_exemplars() {
  std::vector<std::pair<std::string, YoungFunction>> ys;
  ys.push_back({"power_1", young_power(1.0)});
  ys.push_back({"power_1.5", young_power(1.5)});
  ys.push_back({"power_2", young_power(2.0)});
  ys.push_back({"power_3", young_power(3.0)});
  ys.push_back({"half_square", young_scaled(young_power(2.0), 1.0 / std::sqrt(2.0))});
  ys.push_back({"linear_cap", young_linear_cap()});
  ys.push_back({"piecewise", young_piecewise({{0, 0}, {1, 1}, {2, 3}})});
  return ys;
}

// strided centers x full radius ladder
std::vector<Ball> probe_balls(const LevelContext& ctx, int centers) {
  std::vector<Ball> out;
  const Window& w = ctx.w;
  const int stride = std::max(1, w.N / centers);
  if (w.n == 1) {
    for (int i = 0; i < w.N; i += stride)
      for (double r : ctx.fam.radii) out.push_back({{w.coord(i), 0.0}, r});
  } else {
    for (int iy = 0; iy < w.N; iy += stride * 4)
      for (int ix = 0; ix < w.N; ix += stride * 4)
        for (double r : ctx.fam.radii)
          out.push_back({{w.coord(ix), w.coord(iy)}, r});
  }
  return out;
}

SampledField abs_power_field(const SampledField& f, double p) {
  SampledField g = f;
  for (double& v : g.v) v = std::pow(std::abs(v), p);
  return g;
}

std::vector<double> sigma_ladder(const LevelContext& ctx) {
  std::vector<double> ladder = ctx.fam.radii;
  double r = ladder.back();
  while (r < 1e32) {  // analytic rungs: slow r^-beta tails still settle
    r *= 2.0;
    ladder.push_back(r);
  }
  return ladder;
}

// ---------------------------------------------------------------- properties

LevelResult prop_inverse_sandwich(LevelContext&) {
  LevelResult res;
  double worst = 0.0;
  std::string wid;
  double wu = 0.0;
  for (const auto& [name, phi] : young_exemplars()) {
    std::vector<double> us = log_grid(1e-6, 1e6, 1000);
    us.push_back(0.0);
    for (double u : us) {
      const double a = eval_young(phi, inverse_young(phi, u));
      double r1;
      if (u == 0.0)
        r1 = a == 0.0 ? 1.0 : kInf;
      else
        r1 = a / u;  // Phi(Phi^{-1}(u)) <= u
      const double pu = eval_young(phi, u);
      const double b = inverse_young(phi, pu);
      const double r2 = b == 0.0 ? (u == 0.0 ? 1.0 : kInf) : u / b;
      const double v = std::max(r1, r2);
      if (v > worst) {
        worst = v;
        wid = name;
        wu = u;
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = worst <= 1.0 + kIdTol;
  res.witness_id = wid;
  if (!res.pass) res.witness = ojson{{"u", wu}};
  return res;
}

LevelResult prop_compl_product(LevelContext&) {
  LevelResult res;
  double worst = 0.0;
  std::string wid;
  double wt = 0.0;
  for (const auto& [name, phi] : conjugable_exemplars()) {
    const YoungFunction tilde = complementary(phi);
    for (double t : log_grid(1e-6, 1e6, 1000)) {
      const double prod = inverse_young(phi, t) * inverse_young(tilde, t);
      const double v = std::max(prod / (2.0 * t), t / prod);
      if (v > worst) {
        worst = v;
        wid = name;
        wt = t;
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = worst <= 1.0 + kIdTol;
  res.witness_id = wid;
  if (!res.pass) res.witness = ojson{{"t", wt}};
  return res;
}

LevelResult prop_chi_norm(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  double idworst = 0.0, C = 0.0, lower = kInf;
  Ball witness{};
  const std::vector<int> centers = {ctx.w.N / 2, ctx.w.N / 4};
  for (int ci : centers) {
    for (double r : ctx.fam.radii) {
      Ball B;
      B.center = {ctx.w.coord(ci), ctx.w.n == 2 ? ctx.w.coord(ci) : 0.0};
      B.radius = r;
      FieldSpec spec;
      spec.kind = FieldKind::Indicator;
      spec.center = B.center;
      spec.radius = r;
      const SampledField chi = sample(spec, ctx.w);
      const double inv = inverse_young(cfg.Phi, eval_growth(cfg.vp, r));
      for (double c : {1.0, 2.5}) {
        SampledField cchi = chi;
        for (double& v : cchi.v) v *= c;
        const double bn = ball_norm(cchi, cfg.Phi, cfg.vp, B).value;
        idworst = std::max(idworst, std::abs(bn * inv / c - 1.0));
      }
      const double om = om_norm(chi, cfg.Phi, cfg.vp, ctx.fam).value;
      const double scaled = om * inv;
      lower = std::min(lower, scaled);
      if (scaled > C) {
        C = scaled;
        witness = B;
      }
    }
  }
  res.worst_ratio = C;
  res.pass = idworst <= 1e-8 && lower >= 1.0 - kIdTol && C <= 8.0;
  res.witness_id = "chi";
  res.witness = ball_json(witness);
  if (!res.pass && idworst > 1e-8) res.note = "ball-norm identity violated";
  return res;
}

LevelResult prop_holder_ball(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  std::vector<std::pair<std::string, YoungFunction>> pairs = {
      {"power_1.5", young_power(1.5)},
      {"power_2", young_power(2.0)},
      {"power_3", young_power(3.0)}};
  const std::vector<Ball> balls = probe_balls(ctx, 16);
  double worst = 0.0;
  long violations = 0;
  std::string wid;
  Ball wball{};
  for (int pair_i = 0; pair_i < (int)pairs.size(); ++pair_i) {
    const YoungFunction& Phi = pairs[pair_i].second;
    const YoungFunction tilde = complementary(Phi);
    for (int k = 0; k < 50; ++k) {
      FieldSpec fs, gs;
      fs.kind = FieldKind::RandomStep;
      fs.seed = cfg.seed + 101 + 2 * k;
      fs.depth = 5;
      gs.kind = FieldKind::RandomStep;
      gs.seed = cfg.seed + 102 + 2 * k;
      gs.depth = 5;
      const SampledField f = sample(fs, ctx.w);
      const SampledField g = sample(gs, ctx.w);
      SampledField fg = f;
      for (long i = 0; i < ctx.w.cell_count(); ++i)
        fg.v[i] = std::abs(f.v[i] * g.v[i]);
      for (const Ball& B : balls) {
        const BallCells bc = ball_cells(ctx.w, B);
        if (bc.count == 0) continue;
        const double lhs =
            ball_mean(fg, B) / eval_growth(cfg.vp, B.radius);
        const double rhs = 2.0 * ball_norm(f, Phi, cfg.vp, B).value *
                           ball_norm(g, tilde, cfg.vp, B).value;
        if (lhs == 0.0) continue;
        const double q = lhs / rhs;
        if (q > worst) {
          worst = q;
          wid = pairs[pair_i].first + "/pair_" + std::to_string(k);
          wball = B;
        }
        if (lhs > rhs * (1.0 + 1e-12)) ++violations;
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = violations == 0;
  res.witness_id = wid;
  if (!res.pass)
    res.witness = ojson{{"violations", violations}, {"ball", ball_json(wball)}};
  return res;
}

LevelResult prop_mean_bound(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  const std::vector<Ball> balls = probe_balls(ctx, 16);
  double worst = 0.0;
  std::string wid;
  PowerForm pf;
  const bool pvariant = as_power(cfg.Phi, &pf) && pf.p > 1.0;
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (!ctx.in_space((int)i)) continue;
    const SampledField& f = ctx.fields[i];
    for (const Ball& B : balls) {
      const BallCells bc = ball_cells(ctx.w, B);
      if (bc.count == 0) continue;
      const double inv = inverse_young(cfg.Phi, eval_growth(cfg.vp, B.radius));
      const double bn = ball_norm(f, cfg.Phi, cfg.vp, B).value;
      if (bn == 0.0) continue;
      SampledField af = f;
      for (double& v : af.v) v = std::abs(v);
      const double m1 = ball_mean(af, B);
      double q = m1 / (2.0 * inv * bn);
      if (pvariant) {
        const double pv = pf.p;
        const SampledField fp = abs_power_field(f, pv);
        const double mp = std::pow(ball_mean(fp, B), 1.0 / pv);
        q = std::max(q, mp / (std::pow(2.0, 1.0 / pv) * inv * bn));
      }
      if (q > worst) {
        worst = q;
        wid = ctx.bank[i].id;
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = worst <= 1.0 + kIdTol;
  res.witness_id = wid;
  return res;
}

LevelResult prop_goodlambda(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  const int J = (int)std::round(std::log2(ctx.w.N));
  const DyadicFamily dfam = dyadic_family(ctx.w, J);
  const double two_n = ctx.w.n == 1 ? 2.0 : 4.0;
  double worst = 0.0;
  long violations = 0;
  std::string wid;
  for (int t = 0; t < 100; ++t) {
    FieldSpec s;
    s.kind = FieldKind::RandomStep;
    s.seed = cfg.seed + 1000 + t;
    s.depth = std::min(J, 6);
    const SampledField f = sample(s, ctx.w);
    const SampledField Md = dyadic_maximal(f, dfam);
    const SampledField Msd = dyadic_sharp(f, dfam);
    long double acc = 0.0L;
    for (double v : f.v) acc += std::abs(v);
    const double fQ = (double)(acc / ctx.w.cell_count());
    double maxMd = 0.0;
    for (double v : Md.v) maxMd = std::max(maxMd, v);
    if (maxMd <= fQ * (1.0 + 1e-12)) continue;
    for (int li = 0; li < 32; ++li) {
      const double lam =
          fQ * std::pow(maxMd * 1.001 / fQ, (li + 1) / 33.0);
      for (int gi = 0; gi < 4; ++gi) {
        const double gamma = std::pow(0.5, gi);
        long cl = 0, cr = 0;
        for (long i = 0; i < ctx.w.cell_count(); ++i) {
          if (Md.v[i] > lam) {
            ++cr;
            if (Md.v[i] > 2.0 * lam && Msd.v[i] <= gamma * lam) ++cl;
          }
        }
        if (cr == 0) continue;
        const double q = (double)cl / (two_n * gamma * (double)cr);
        if (q > worst) {
          worst = q;
          wid = "step_gl_" + std::to_string(t);
          res.witness = ojson{{"lambda", lam}, {"gamma", gamma}};
        }
        if ((double)cl > two_n * gamma * (double)cr) ++violations;
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = violations == 0;
  res.witness_id = wid;
  if (res.pass) res.witness = ojson();
  return res;
}

LevelResult prop_dyadic_modular(LevelContext& ctx) {
  LevelResult res;
  const int n = ctx.w.n;
  const int J = (int)std::round(std::log2(ctx.w.N));
  const DyadicFamily dfam = dyadic_family(ctx.w, J);
  const double hn = std::pow(ctx.w.h(), n);
  double worst = 0.0;
  std::string wid;
  for (double p : {1.5, 2.0, 3.0}) {
    const double C_phi_prime = std::pow(2.0, p - 1.0);
    const double gamma = 1.0 / (std::pow(2.0, n + 2) * C_phi_prime);
    const double C_phi = std::pow(2.0, p);
    const double K =
        4.0 * C_phi_prime * std::pow(gamma, -p) + 2.0 * C_phi;
    for (size_t i = 0; i < ctx.bank.size(); ++i) {
      const SampledField& f = ctx.fields[i];
      long double acc = 0.0L;
      for (double v : f.v) acc += v;
      const double fQ = (double)(acc / ctx.w.cell_count());
      const SampledField shifted = subtract_constant(f, fQ);
      const SampledField Md = dyadic_maximal(shifted, dfam);
      const SampledField Msd = dyadic_sharp(f, dfam);
      long double lhs = 0.0L, rhs = 0.0L;
      for (long c = 0; c < ctx.w.cell_count(); ++c) {
        lhs += std::pow(Md.v[c], p);
        rhs += std::pow(Msd.v[c], p);
      }
      const double L = (double)lhs * hn, R = K * (double)rhs * hn;
      if (L == 0.0 && R == 0.0) continue;
      const double q = L / R;
      if (q > worst) {
        worst = q;
        wid = ctx.bank[i].id + "/p_" + std::to_string(p);
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = worst <= 1.0 + kIdTol;
  res.witness_id = wid;
  return res;
}

LevelResult prop_sharp(LevelContext& ctx, int mode) {
  // mode 0: SHARP_LOWER, 1: SHARP_EQUIV, 2: SHARP_MORREY, 3: BRIDGE
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  double worst = 0.0;
  std::string wid;
  const std::vector<double> ladder = sigma_ladder(ctx);
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (!ctx.in_space((int)i)) continue;
    const SampledField& f = ctx.fields[i];
    const double camp = campanato_norm(f, cfg.Phi, cfg.vp, ctx.fam).value;
    if (camp == 0.0) continue;
    const SampledField msf = sharp_maximal(f, ctx.fam);
    const double nm = om_norm(msf, cfg.Phi, cfg.vp, ctx.fam).value;
    double q = 0.0;
    if (mode == 0) {
      q = camp / nm;
    } else if (mode == 1) {
      q = std::max(camp / nm, nm / camp);
    } else {
      const SigmaResult sig = sigma_limit(f, ladder, &ctx.bank[i].spec, 1e-6);
      if (!sig.converged || std::abs(sig.value) > 1e-6) {
        res.note = "sigma(f) != 0 for " + ctx.bank[i].id;
        res.pass = false;
        res.worst_ratio = kInf;
        res.witness_id = ctx.bank[i].id;
        return res;
      }
      if (mode == 2) {
        const double nf = ctx.in_norm_of((int)i);
        q = nf / nm;
      } else {
        const double omn =
            om_norm(subtract_constant(f, sig.value), cfg.Phi, cfg.vp, ctx.fam)
                .value;
        q = std::max(omn / camp, camp / omn);
      }
    }
    if (q > worst) {
      worst = q;
      wid = ctx.bank[i].id;
    }
  }
  res.worst_ratio = worst;
  res.witness_id = wid;
  const double cap = mode == 3 ? 16.0 : cfg.cap;
  res.pass = std::isfinite(worst) && worst <= cap;
  return res;
}

LevelResult prop_chain(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  double exact_worst = 0.0, c66 = 0.0;
  std::string wid;
  const double hn = std::pow(ctx.w.h(), ctx.w.n);
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (!ctx.in_space((int)i)) continue;
    const SampledField& f = ctx.fields[i];
    const double camp = campanato_norm(f, cfg.Phi, cfg.vp, ctx.fam).value;
    if (camp == 0.0) continue;
    const double cx = ctx.w.coord(ctx.w.N / 2);
    for (size_t a = 0; a + 1 < ctx.fam.radii.size(); ++a) {
      for (size_t b = a + 1; b < ctx.fam.radii.size(); ++b) {
        const double r = ctx.fam.radii[a], s = ctx.fam.radii[b];
        Ball B2{{cx, ctx.w.n == 2 ? cx : 0.0}, s};
        // off-center inner ball, snapped to a grid center; the snap keeps
        // |c1 - c2| <= s - r so the cell sets stay nested
        const double shift_cells =
            std::floor(0.5 * (s - r) / ctx.w.h());
        Ball B1{{cx + shift_cells * ctx.w.h(), ctx.w.n == 2 ? cx : 0.0}, r};
        BallCells c1 = ball_cells(ctx.w, B1), c2 = ball_cells(ctx.w, B2);
        if (c1.count == 0 || c2.count == 0) continue;
        const double m1 = ball_mean(f, B1), m2 = ball_mean(f, B2);
        const double inv = inverse_young(cfg.Phi, eval_growth(cfg.vp, s));
        const double lhs = std::abs(m1 - m2);
        const double rhs65 =
            2.0 * ((double)c2.count * hn) / ((double)c1.count * hn) * inv *
            camp;
        exact_worst = std::max(exact_worst, lhs / rhs65);
        const double integral = tail_phi_inverse(cfg.Phi, cfg.vp, r) -
                                tail_phi_inverse(cfg.Phi, cfg.vp, 2.0 * s);
        const double q = lhs / (integral * camp);
        if (q > c66) {
          c66 = q;
          wid = ctx.bank[i].id;
          res.witness = ojson{{"r", r}, {"s", s}};
        }
      }
    }
  }
  res.worst_ratio = c66;
  res.pass = exact_worst <= 1.0 + kIdTol && std::isfinite(c66) &&
             c66 <= cfg.cap;
  res.witness_id = wid;
  if (exact_worst > 1.0 + kIdTol) res.note = "nested-ball bound violated";
  if (res.pass) res.witness = ojson();
  return res;
}

LevelResult prop_osc_growth(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  double worst = 0.0;
  std::string wid;
  const double cx = ctx.w.coord(ctx.w.N / 2);
  for (size_t bi = 0; bi < ctx.b_bank.size(); ++bi) {
    const SampledField& b = ctx.b_fields[bi];
    const double nb = ctx.b_norm_of((int)bi);
    if (nb == 0.0) continue;
    for (size_t a = 0; a < ctx.fam.radii.size(); ++a)
      for (size_t bidx = a + 1; bidx < ctx.fam.radii.size(); ++bidx) {
        const double r = ctx.fam.radii[a], s = ctx.fam.radii[bidx];
        if (!(2.0 * r < s)) continue;
        Ball Br{{cx, ctx.w.n == 2 ? cx : 0.0}, r};
        Ball Bs{{cx, ctx.w.n == 2 ? cx : 0.0}, s};
        const double mr = ball_mean(b, Br);
        const double ints = integrate(
            [&](double t) { return eval_growth(cfg.psi, t) / t; }, r, s);
        const double rhs2 =
            std::log2(s / r) * eval_growth(cfg.psi, s) * nb;
        for (double p : {1.0, 2.0}) {
          const BallCells bc = ball_cells(ctx.w, Bs);
          long double acc = 0.0L;
          for (const auto& sp : bc.spans) {
            const long base = (long)sp[0] * (ctx.w.n == 2 ? ctx.w.N : 0);
            for (int ix = sp[1]; ix < sp[2]; ++ix)
              acc += std::pow(std::abs(b.v[base + ix] - mr), p);
          }
          const double lhs = std::pow((double)(acc / bc.count), 1.0 / p);
          const double q = std::max(lhs / (ints * nb), lhs / rhs2);
          if (q > worst) {
            worst = q;
            wid = ctx.b_bank[bi].id;
            res.witness = ojson{{"r", r}, {"s", s}, {"p", p}};
          }
        }
      }
  }
  res.worst_ratio = worst;
  res.pass = std::isfinite(worst) && worst <= cfg.cap;
  res.witness_id = wid;
  if (res.pass) res.witness = ojson();
  return res;
}

// Analytic-ray admissibility for the tail lemmas. Compact data always
// qualifies. A power profile must be the scale-invariant member of the
// space (beta p = lambda) and must decay fast enough that the extended
// integral converges against the kernel growth and the b profile.
bool tail_member_ok(const LevelContext& ctx, int i, bool fract,
                    double b_growth) {
  const FieldSpec& s = ctx.bank[i].spec;
  if (s.compact_support(ctx.cfg->L)) return true;
  const double beta = s.max_beta();
  if (beta == 0.0) return false;  // no extension model for this spec
  PowerForm pf;
  if (!as_power(ctx.cfg->Phi, &pf)) return false;
  if (ctx.cfg->vp.family != GrowthFamily::PowerNeg) return false;
  if (std::abs(beta * pf.p - ctx.cfg->vp.a) > 1e-9) return false;
  double alpha = 0.0;
  if (fract) {
    if (!ctx.cfg->rho || ctx.cfg->rho->family != GrowthFamily::PowerPos)
      return false;
    alpha = ctx.cfg->rho->a;
  }
  return alpha + b_growth < beta - 1e-12;
}

double b_tail_growth(const FieldSpec& b) {
  return b.kind == FieldKind::AbsPower ? b.beta : 0.0;
}

LevelResult prop_tail(LevelContext& ctx, TailLemma which) {
  const ExperimentConfig& cfg = *ctx.cfg;
  if (ctx.w.n != 1)
    throw std::invalid_argument("tail properties: n=1 only");
  if (which != TailLemma::CZ && !cfg.rho)
    throw std::invalid_argument("tail properties: rho not configured");
  LevelResult res;
  double worst = 0.0;
  std::string wid;
  int skipped = 0;
  const bool fract = which != TailLemma::CZ;
  const double z = ctx.w.coord(ctx.w.N / 2);
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (!ctx.in_space((int)i)) continue;
    if (which != TailLemma::IR_PSI && !tail_member_ok(ctx, (int)i, fract, 0.0)) {
      ++skipped;
      continue;
    }
    const double nf = ctx.in_norm_of((int)i);
    if (nf == 0.0) continue;
    // window-relative rungs so every level probes the same radii
    for (double r : {cfg.L / 16.0, cfg.L / 8.0, cfg.L / 4.0}) {
      for (double xoff : {0.0, 0.45 * r, -0.45 * r}) {
        TailCheckInput in;
        in.which = which;
        in.f = &ctx.fields[i];
        in.f_spec = &ctx.bank[i].spec;
        in.B = Ball{{z, 0.0}, r};
        in.x = z + xoff;
        in.kernel = &cfg.kernel;
        in.rho = cfg.rho ? &*cfg.rho : nullptr;
        in.Phi = &cfg.Phi;
        in.vp = &cfg.vp;
        in.psi = &cfg.psi;
        in.norm_f = nf;
        in.K1 = cfg.K1;
        if (which == TailLemma::IR_PSI) {
          for (size_t bi = 0; bi < ctx.b_bank.size(); ++bi) {
            if (!tail_member_ok(ctx, (int)i, true,
                                b_tail_growth(ctx.b_bank[bi].spec))) {
              ++skipped;
              continue;
            }
            in.b = &ctx.b_fields[bi];
            in.b_spec = &ctx.b_bank[bi].spec;
            in.norm_b = ctx.b_norm_of((int)bi);
            if (in.norm_b == 0.0) continue;
            const ConditionReport rep = tail_bound_check(in);
            if (rep.best_constant > worst) {
              worst = rep.best_constant;
              wid = ctx.bank[i].id + "x" + ctx.b_bank[bi].id;
              res.witness = ojson{{"r", r}, {"x", in.x}};
            }
          }
        } else {
          const ConditionReport rep = tail_bound_check(in);
          if (rep.best_constant > worst) {
            worst = rep.best_constant;
            wid = ctx.bank[i].id;
            res.witness = ojson{{"r", r}, {"x", in.x}};
          }
        }
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = std::isfinite(worst) && worst <= cfg.cap;
  res.witness_id = wid;
  if (skipped)
    res.note = std::to_string(skipped) +
               " combos skipped: analytic tail not in the space";
  if (res.pass) res.witness = ojson();
  return res;
}

LevelResult prop_mr_pointwise(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  if (!cfg.rho) throw std::invalid_argument("MR_POINTWISE: rho not configured");
  LevelResult res;
  PairingInput pin;
  pin.Phi = &cfg.Phi;
  pin.Psi = &cfg.Psi;
  pin.vp = &cfg.vp;
  pin.rho = &*cfg.rho;
  const ConditionReport pairing =
      check_pairing(PairingKind::MAXIMAL, pin, default_scan_grid());
  double worst = 0.0;
  std::string wid;
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (!ctx.in_space((int)i)) continue;
    const double nf = ctx.in_norm_of((int)i);
    if (nf == 0.0) continue;
    const SampledField Mf = hl_maximal(ctx.fields[i], ctx.fam);
    const SampledField Mr = frac_maximal(ctx.fields[i], *cfg.rho, ctx.fam);
    for (long c = 0; c < ctx.w.cell_count(); ++c) {
      if (Mf.v[c] <= 0.0) continue;
      const double denom =
          nf * inverse_young(cfg.Psi, eval_young(cfg.Phi, Mf.v[c] / nf));
      if (denom <= 0.0) continue;
      const double q = Mr.v[c] / denom;
      if (q > worst) {
        worst = q;
        wid = ctx.bank[i].id;
        res.witness = ojson{{"cell", c}};
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = std::isfinite(worst) && worst <= cfg.cap && pairing.holds;
  res.witness_id = wid;
  char note[128];
  std::snprintf(note, sizeof note, "pairing A=%.6g, minimal C1 with C0=1",
                pairing.best_constant);
  res.note = note;
  if (res.pass) res.witness = ojson();
  return res;
}

LevelResult prop_mr_bounded(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  if (!cfg.rho) throw std::invalid_argument("MR_BOUNDED: rho not configured");
  LevelResult res;
  const RatioReport rr = empirical_norm(
      ctx,
      [&](const SampledField& f) { return frac_maximal(f, *cfg.rho, ctx.fam); },
      cfg.Psi, cfg.vp);
  res.worst_ratio = rr.ratio;
  res.pass = std::isfinite(rr.ratio) && rr.ratio > 0.0 && rr.ratio <= cfg.cap;
  res.witness_id = rr.field_id;
  if (rr.excluded)
    res.note = std::to_string(rr.excluded) + " bank members outside the space";
  return res;
}

SampledField sqrt_field(const SampledField& f) {
  SampledField g = f;
  for (double& v : g.v) v = std::sqrt(v);
  return g;
}

LevelResult prop_comm_pw(LevelContext& ctx, bool fract) {
  const ExperimentConfig& cfg = *ctx.cfg;
  if (fract && !cfg.rho)
    throw std::invalid_argument("COMM_PW_IR: rho not configured");
  LevelResult res;
  const double eta = cfg.eta;
  auto psi_eta = [&](double r) {
    return std::pow(eval_growth(cfg.psi, r), eta);
  };
  auto rhostar_psi_eta = [&](double r) {
    return std::pow(rho_star(*cfg.rho, r) * eval_growth(cfg.psi, r), eta);
  };
  double worst = 0.0;
  std::string wid;
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (!ctx.in_space((int)i)) continue;
    const SampledField& f = ctx.fields[i];
    const SampledField& opf = fract ? ctx.ir_of((int)i) : ctx.cz_of((int)i);
    const SampledField m_opf = sqrt_field(
        weighted_maximal(abs_power_field(opf, eta), psi_eta, ctx.fam));
    const SampledField m_f = sqrt_field(weighted_maximal(
        abs_power_field(f, eta), fract ? std::function<double(double)>(rhostar_psi_eta)
                                       : std::function<double(double)>(psi_eta),
        ctx.fam));
    for (size_t bi = 0; bi < ctx.b_bank.size(); ++bi) {
      const double nb = ctx.b_norm_of((int)bi);
      if (nb == 0.0) continue;
      const OperatorOutput g =
          commutator(fract ? CommutatorKind::FRACT : CommutatorKind::CZ,
                     ctx.b_fields[bi], f, &cfg.kernel,
                     cfg.rho ? &*cfg.rho : nullptr);
      const SampledField ms = sharp_maximal(g.field, ctx.fam);
      for (long c = 0; c < ctx.w.cell_count(); ++c) {
        const double denom = nb * (m_opf.v[c] + m_f.v[c]);
        if (denom <= 0.0) continue;
        const double q = ms.v[c] / denom;
        if (q > worst) {
          worst = q;
          wid = ctx.bank[i].id + "x" + ctx.b_bank[bi].id;
          res.witness = ojson{{"cell", c}};
        }
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = std::isfinite(worst) && worst <= cfg.cap;
  res.witness_id = wid;
  if (res.pass) res.witness = ojson();
  return res;
}

// The r -> inf vanishing of fint_{B_r} [b,Op]f is checked through the
// envelope |mean| <= C Psi^{-1}(vp(r)) ||b|| ||f|| that drives it: the
// envelope tends to 0 while raw means may still be rising inside a finite
// window (the log symbol crosses over just beyond L at desk scale).
LevelResult prop_mean_vanish(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  double worst = 0.0;
  std::string wid;
  const bool has_ir = cfg.rho.has_value();
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (!ctx.in_space((int)i)) continue;
    if (!ctx.bank[i].spec.compact_support(cfg.L)) continue;
    const double nf = ctx.in_norm_of((int)i);
    if (nf == 0.0) continue;
    for (size_t bi = 0; bi < ctx.b_bank.size(); ++bi) {
      const double nb = ctx.b_norm_of((int)bi);
      if (nb == 0.0) continue;
      for (int op = 0; op < (has_ir ? 2 : 1); ++op) {
        const OperatorOutput g =
            commutator(op == 0 ? CommutatorKind::CZ : CommutatorKind::FRACT,
                       ctx.b_fields[bi], ctx.fields[i], &cfg.kernel,
                       cfg.rho ? &*cfg.rho : nullptr);
        for (double r : ctx.fam.radii) {
          if (r > cfg.L) break;
          const double m =
              std::abs(ball_mean(g.field, Ball{{0.0, 0.0}, r}));
          const double scale =
              inverse_young(cfg.Psi, eval_growth(cfg.vp, r)) * nb * nf;
          const double q = m / scale;
          if (q > worst) {
            worst = q;
            wid = ctx.bank[i].id + "x" + ctx.b_bank[bi].id;
            res.witness = ojson{{"r", r}, {"op", op == 0 ? "T" : "Irho"}};
          }
        }
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = std::isfinite(worst) && worst <= cfg.cap;
  res.witness_id = wid;
  if (res.pass) res.witness = ojson();
  return res;
}

LevelResult prop_comm_bound(LevelContext& ctx, int variant) {
  // 0: CZ (Psi,vp)   1: IR (Psi,vp)
  // 2: CZ_DEC out (Psi,theta), b in Campanato(Phi0,psi)
  // 3: IR_DEC out (Psi,vp),   b in Campanato(Phi0,vp)
  const ExperimentConfig& cfg = *ctx.cfg;
  const bool fract = variant == 1 || variant == 3;
  if (fract && !cfg.rho)
    throw std::invalid_argument("COMM_BOUND: rho not configured");
  if ((variant == 2 || variant == 3) && !cfg.Phi0)
    throw std::invalid_argument("COMM_BOUND dec: Phi0 not configured");
  if (variant == 2 && !cfg.theta_g)
    throw std::invalid_argument("COMM_BOUND_CZ_DEC: theta not configured");
  LevelResult res;
  const GrowthFunction& out_vp = variant == 2 ? *cfg.theta_g : cfg.vp;
  double worst = 0.0;
  std::string wid;
  for (size_t bi = 0; bi < ctx.b_bank.size(); ++bi) {
    double nb;
    if (variant == 2)
      nb = campanato_norm(ctx.b_fields[bi], *cfg.Phi0, cfg.psi, ctx.fam).value;
    else if (variant == 3)
      nb = campanato_norm(ctx.b_fields[bi], *cfg.Phi0, cfg.vp, ctx.fam).value;
    else
      nb = ctx.b_norm_of((int)bi);
    if (nb == 0.0) continue;
    for (size_t i = 0; i < ctx.bank.size(); ++i) {
      if (!ctx.in_space((int)i)) continue;
      const double nf = ctx.in_norm_of((int)i);
      if (nf == 0.0) continue;
      const OperatorOutput g =
          commutator(fract ? CommutatorKind::FRACT : CommutatorKind::CZ,
                     ctx.b_fields[bi], ctx.fields[i], &cfg.kernel,
                     cfg.rho ? &*cfg.rho : nullptr);
      const double on = om_norm(g.field, cfg.Psi, out_vp, ctx.fam).value;
      const double q = on / (nb * nf);
      if (q > worst) {
        worst = q;
        wid = ctx.bank[i].id + "x" + ctx.b_bank[bi].id;
      }
    }
  }
  res.worst_ratio = worst;
  res.pass = std::isfinite(worst) && worst > 0.0 && worst <= cfg.cap;
  res.witness_id = wid;
  return res;
}

LevelResult prop_necessity_ratio(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  PairingInput pin;
  pin.Phi = &cfg.Phi;
  pin.Psi = &cfg.Psi;
  pin.vp = &cfg.vp;
  pin.psi = &cfg.psi;
  const ConditionReport nec =
      check_pairing(PairingKind::CZ_NEC, pin, default_scan_grid());
  double worst = 0.0;
  std::string wid;
  for (size_t bi = 0; bi < ctx.b_bank.size(); ++bi) {
    const double nb = ctx.b_norm_of((int)bi);
    if (nb == 0.0) continue;
    double emp = 0.0;
    for (size_t i = 0; i < ctx.bank.size(); ++i) {
      if (!ctx.in_space((int)i)) continue;
      const double nf = ctx.in_norm_of((int)i);
      if (nf == 0.0) continue;
      const OperatorOutput g = commutator(CommutatorKind::CZ, ctx.b_fields[bi],
                                          ctx.fields[i], &cfg.kernel, nullptr);
      emp = std::max(emp,
                     om_norm(g.field, cfg.Psi, cfg.vp, ctx.fam).value / nf);
    }
    if (emp == 0.0) continue;
    const double q = nb / emp;
    if (q > worst) {
      worst = q;
      wid = ctx.b_bank[bi].id;
    }
  }
  res.worst_ratio = worst;
  res.pass = std::isfinite(worst) && worst <= cfg.cap && nec.holds;
  res.witness_id = wid;
  char note[96];
  std::snprintf(note, sizeof note, "necessity pairing constant %.6g",
                nec.best_constant);
  res.note = note;
  return res;
}

LevelResult prop_jn_equiv(LevelContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  LevelResult res;
  double worst = 0.0;
  std::string wid;
  bool in_range = true;
  for (size_t bi = 0; bi < ctx.b_bank.size(); ++bi) {
    const double c1 = ctx.b_norm_of((int)bi);
    if (c1 == 0.0) continue;
    const double c2 =
        campanato_p(ctx.b_fields[bi], 2.0, cfg.psi, ctx.fam).value;
    const double q = c2 / c1;
    if (q > worst) {
      worst = q;
      wid = ctx.b_bank[bi].id;
    }
    if (q < 0.125 || q > 8.0) in_range = false;
  }
  res.worst_ratio = worst;
  res.pass = in_range;
  res.witness_id = wid;
  return res;
}

}  // namespace

std::vector<std::string> property_catalog() {
  return {"INVERSE_SANDWICH", "COMPL_PRODUCT", "CHI_NORM", "HOLDER_BALL",
          "MEAN_BOUND",       "GOODLAMBDA",    "DYADIC_MODULAR",
          "SHARP_LOWER",      "SHARP_EQUIV",   "SHARP_MORREY",
          "BRIDGE",           "JN_EQUIV",      "CHAIN",
          "OSC_GROWTH",       "TAIL_CZ",       "TAIL_IR",
          "TAIL_IR_PSI",      "MR_POINTWISE",  "MR_BOUNDED",
          "COMM_PW_CZ",       "COMM_PW_IR",    "MEAN_VANISH",
          "COMM_BOUND_CZ",    "COMM_BOUND_IR", "COMM_BOUND_CZ_DEC",
          "COMM_BOUND_IR_DEC", "NECESSITY_RATIO"};
}

bool property_known(const std::string& name) {
  const auto cat = property_catalog();
  return std::find(cat.begin(), cat.end(), name) != cat.end();
}

bool property_exact(const std::string& name) {
  static const std::set<std::string> exact = {
      "INVERSE_SANDWICH", "COMPL_PRODUCT", "CHI_NORM",      "HOLDER_BALL",
      "MEAN_BOUND",       "GOODLAMBDA",    "DYADIC_MODULAR", "CHAIN",
      "JN_EQUIV"};
  return exact.count(name) > 0;
}

bool property_scale_free(const std::string& name) {
  return name == "INVERSE_SANDWICH" || name == "COMPL_PRODUCT";
}

LevelResult run_property_level(const std::string& name, LevelContext& ctx) {
  if (name == "INVERSE_SANDWICH") return prop_inverse_sandwich(ctx);
  if (name == "COMPL_PRODUCT") return prop_compl_product(ctx);
  if (name == "CHI_NORM") return prop_chi_norm(ctx);
  if (name == "HOLDER_BALL") return prop_holder_ball(ctx);
  if (name == "MEAN_BOUND") return prop_mean_bound(ctx);
  if (name == "GOODLAMBDA") return prop_goodlambda(ctx);
  if (name == "DYADIC_MODULAR") return prop_dyadic_modular(ctx);
  if (name == "SHARP_LOWER") return prop_sharp(ctx, 0);
  if (name == "SHARP_EQUIV") return prop_sharp(ctx, 1);
  if (name == "SHARP_MORREY") return prop_sharp(ctx, 2);
  if (name == "BRIDGE") return prop_sharp(ctx, 3);
  if (name == "CHAIN") return prop_chain(ctx);
  if (name == "JN_EQUIV") return prop_jn_equiv(ctx);
  if (name == "OSC_GROWTH") return prop_osc_growth(ctx);
  if (name == "TAIL_CZ") return prop_tail(ctx, TailLemma::CZ);
  if (name == "TAIL_IR") return prop_tail(ctx, TailLemma::IR);
  if (name == "TAIL_IR_PSI") return prop_tail(ctx, TailLemma::IR_PSI);
  if (name == "MR_POINTWISE") return prop_mr_pointwise(ctx);
  if (name == "MR_BOUNDED") return prop_mr_bounded(ctx);
  if (name == "COMM_PW_CZ") return prop_comm_pw(ctx, false);
  if (name == "COMM_PW_IR") return prop_comm_pw(ctx, true);
  if (name == "MEAN_VANISH") return prop_mean_vanish(ctx);
  if (name == "COMM_BOUND_CZ") return prop_comm_bound(ctx, 0);
  if (name == "COMM_BOUND_IR") return prop_comm_bound(ctx, 1);
  if (name == "COMM_BOUND_CZ_DEC") return prop_comm_bound(ctx, 2);
  if (name == "COMM_BOUND_IR_DEC") return prop_comm_bound(ctx, 3);
  if (name == "NECESSITY_RATIO") return prop_necessity_ratio(ctx);
  throw std::invalid_argument("run_property_level: unknown property " + name);
}

}  // namespace olab
