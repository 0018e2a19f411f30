#include "olab/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace olab {

std::vector<BankEntry> default_bank(std::uint64_t seed) {
  std::vector<BankEntry> bank;
  auto indicator = [](double r) {
    FieldSpec s;
    s.kind = FieldKind::Indicator;
    s.center = {0.0, 0.0};
    s.radius = r;
    return s;
  };
  bank.push_back({"chi_half", indicator(0.5)});
  bank.push_back({"chi_1", indicator(1.0)});
  bank.push_back({"chi_2", indicator(2.0)});
  for (double b : {0.25, 0.5}) {
    FieldSpec s;
    s.kind = FieldKind::PowerSingular;
    s.beta = b;
    bank.push_back({b == 0.25 ? "sing_025" : "sing_05", s});
  }
  for (int k : {2, 8}) {
    FieldSpec s;
    s.kind = FieldKind::Oscillatory;
    s.k = k;
    bank.push_back({"osc_" + std::to_string(k), s});
  }
  for (int i = 1; i <= 4; ++i) {
    FieldSpec s;
    s.kind = FieldKind::RandomStep;
    s.seed = seed + i;
    s.depth = 4;
    bank.push_back({"step_" + std::to_string(i), s});
  }
  {
    FieldSpec s;
    s.kind = FieldKind::Affine;
    FieldSpec chi = indicator(2.0);
    FieldSpec osc;
    osc.kind = FieldKind::Oscillatory;
    osc.k = 2;
    FieldSpec step;
    step.kind = FieldKind::RandomStep;
    step.seed = seed + 5;
    step.depth = 3;
    s.terms.push_back({0.75, std::make_shared<const FieldSpec>(chi)});
    s.terms.push_back({-0.5, std::make_shared<const FieldSpec>(osc)});
    s.terms.push_back({0.25, std::make_shared<const FieldSpec>(step)});
    bank.push_back({"affine", s});
  }
  return bank;
}

std::vector<BankEntry> default_b_bank(double beta) {
  std::vector<BankEntry> bank;
  FieldSpec clamp;
  clamp.kind = FieldKind::ClampLinear;
  bank.push_back({"b_clamp", clamp});
  FieldSpec logabs;
  logabs.kind = FieldKind::LogAbs;
  bank.push_back({"b_log", logabs});
  FieldSpec abspow;
  abspow.kind = FieldKind::AbsPower;
  abspow.beta = beta;
  bank.push_back({"b_abspow", abspow});
  return bank;
}

const SampledField& LevelContext::cz_of(int i) {
  auto it = cz_out.find(i);
  if (it == cz_out.end())
    it = cz_out.emplace(i, cz_apply(fields[i], cfg->kernel).field).first;
  return it->second;
}

const SampledField& LevelContext::ir_of(int i) {
  auto it = ir_out.find(i);
  if (it == ir_out.end()) {
    if (!cfg->rho) throw std::invalid_argument("context: rho not configured");
    it = ir_out.emplace(i, frac_integral(fields[i], *cfg->rho).field).first;
  }
  return it->second;
}

double LevelContext::in_norm_of(int i) {
  auto it = in_norm.find(i);
  if (it == in_norm.end())
    it = in_norm.emplace(i, om_norm(fields[i], cfg->Phi, cfg->vp, fam).value)
             .first;
  return it->second;
}

double LevelContext::b_norm_of(int i) {
  auto it = b_norm.find(i);
  if (it == b_norm.end())
    it = b_norm
             .emplace(i, campanato_p(b_fields[i], 1.0, cfg->psi, fam).value)
             .first;
  return it->second;
}

bool LevelContext::in_space(int i) const {
  const double beta = bank[i].spec.max_beta();
  if (beta == 0.0) return true;
  PowerForm pf;
  if (!as_power(cfg->Phi, &pf)) return true;
  const double bp = beta * pf.p;
  if (bp >= cfg->dim) return false;  // local integrability of |f|^p fails
  if (cfg->vp.family == GrowthFamily::PowerNeg && bp > cfg->vp.a + 1e-12)
    return false;  // small-ball Morrey scaling diverges
  return true;
}

LevelContext make_level_context(const ExperimentConfig& cfg, int N) {
  LevelContext ctx;
  ctx.cfg = &cfg;
  ctx.w = make_window(cfg.dim, cfg.L, N);
  BallPolicy pol;
  pol.stride = cfg.stride;
  ctx.fam = ball_family(ctx.w, pol);
  ctx.bank = cfg.bank.empty() ? default_bank(cfg.seed) : cfg.bank;
  ctx.b_bank = cfg.b_bank.empty() ? default_b_bank() : cfg.b_bank;
  for (const auto& e : ctx.bank) ctx.fields.push_back(sample(e.spec, ctx.w));
  for (const auto& e : ctx.b_bank)
    ctx.b_fields.push_back(sample(e.spec, ctx.w));
  return ctx;
}

RatioReport empirical_norm(
    LevelContext& ctx,
    const std::function<SampledField(const SampledField&)>& op,
    const YoungFunction& out_Phi, const GrowthFunction& out_vp) {
  if (ctx.bank.empty()) throw std::invalid_argument("empirical_norm: empty bank");
  RatioReport rep;
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (!ctx.in_space((int)i)) {
      ++rep.excluded;
      continue;
    }
    const double in = ctx.in_norm_of((int)i);
    if (in == 0.0) continue;
    const SampledField out = op(ctx.fields[i]);
    const double on = om_norm(out, out_Phi, out_vp, ctx.fam).value;
    const double q = on / in;
    if (q > rep.ratio) {
      rep.ratio = q;
      rep.field_id = ctx.bank[i].id;
    }
  }
  return rep;
}

namespace {

double stability_tol_for(const std::string& name, const ExperimentConfig& cfg) {
  if (name.rfind("COMM_", 0) == 0) return 0.10;
  return cfg.stability_tol;
}

}  // namespace

PropertyReport run_property(const std::string& name,
                            const ExperimentConfig& cfg) {
  if (!property_known(name))
    throw std::invalid_argument("run_property: unknown property " + name);
  PropertyReport rep;
  rep.name = name;
  std::vector<int> levels = cfg.levels;
  if (levels.empty()) throw std::invalid_argument("run_property: no levels");
  if (property_scale_free(name)) levels = {levels.back()};

  bool all_pass = true;
  LevelResult last;
  for (int N : levels) {
    LevelContext ctx = make_level_context(cfg, N);
    last = run_property_level(name, ctx);
    rep.trend.push_back({N, last.worst_ratio});
    all_pass = all_pass && last.pass;
  }
  rep.pass = all_pass;
  rep.worst_ratio = last.worst_ratio;
  rep.witness_id = last.witness_id;
  rep.witness = last.witness;
  rep.note = last.note;

  if (all_pass && !property_exact(name) && !property_scale_free(name) &&
      rep.trend.size() >= 2) {
    const double a = rep.trend[rep.trend.size() - 2].second;
    const double b = rep.trend.back().second;
    if (a > 1e-12 && b > 1e-12) {
      const double drift = std::abs(b / a - 1.0);
      if (drift > stability_tol_for(name, cfg)) {
        rep.unstable = true;
        rep.pass = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "unstable: drift %.3f between finest levels",
                      drift);
        rep.note = buf;
      }
    }
  }
  return rep;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutcome out;
  if (cfg.properties.empty()) {
    out.exit_code = 1;
    out.report_json = ojson{{"error", "no properties listed"}};
    return out;
  }
  for (const auto& name : cfg.properties) {
    if (!property_known(name)) {
      out.exit_code = 1;
      out.report_json = ojson{{"error", "unknown property " + name}};
      return out;
    }
  }

  std::string csv = "property,N,pass,worst_ratio,witness_id,seconds\n";
  ojson props = ojson::array();
  bool any_fail = false, any_unstable = false;
  for (const auto& name : cfg.properties) {
    const auto t0 = std::chrono::steady_clock::now();
    PropertyReport rep = run_property(name, cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    any_fail = any_fail || (!rep.pass && !rep.unstable);
    any_unstable = any_unstable || rep.unstable;

    ojson trend = ojson::array();
    for (const auto& [N, v] : rep.trend) trend.push_back(ojson{{"N", N}, {"worst_ratio", v}});
    ojson j{{"property", rep.name},
            {"pass", rep.pass},
            {"unstable", rep.unstable},
            {"worst_ratio", rep.worst_ratio},
            {"witness_id", rep.witness_id},
            {"trend", trend},
            {"note", rep.note}};
    if (!rep.witness.is_null()) j["witness"] = rep.witness;
    props.push_back(j);

    char line[256];
    for (const auto& [N, v] : rep.trend) {
      std::snprintf(line, sizeof line, "%s,%d,%d,%.12g,%s,%.3f\n",
                    rep.name.c_str(), N, rep.pass ? 1 : 0, v,
                    rep.witness_id.c_str(), secs);
      csv += line;
    }
    out.reports.push_back(std::move(rep));
  }

  ojson levels = ojson::array();
  for (int N : cfg.levels) levels.push_back(N);
  out.report_json = ojson{{"dim", cfg.dim},
                          {"L", cfg.L},
                          {"levels", levels},
                          {"seed", cfg.seed},
                          {"properties", props},
                          {"all_pass", !any_fail && !any_unstable}};
  out.csv = csv;
  out.exit_code = any_fail ? 3 : (any_unstable ? 2 : 0);
  return out;
}

}  // namespace olab
