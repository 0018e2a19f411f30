#include <doctest.h>

#include <cmath>

#include "olab/harness.hpp"
#include "olab/serde.hpp"

using namespace olab;

namespace {

ExperimentConfig crw_config() {
  ExperimentConfig cfg;  // defaults are the Phi=Psi=t^2, vp=r^-1, psi=1 slot
  cfg.levels = {64};
  return cfg;
}

}  // namespace

TEST_CASE("default bank composition") {
  const auto bank = default_bank(814);
  CHECK(bank.size() == 12);
  int indicators = 0, sing = 0, osc = 0, steps = 0, affine = 0;
  for (const auto& e : bank) {
    switch (e.spec.kind) {
      case FieldKind::Indicator: ++indicators; break;
      case FieldKind::PowerSingular: ++sing; break;
      case FieldKind::Oscillatory: ++osc; break;
      case FieldKind::RandomStep: ++steps; break;
      case FieldKind::Affine: ++affine; break;
      default: break;
    }
  }
  CHECK(indicators == 3);
  CHECK(sing == 2);
  CHECK(osc == 2);
  CHECK(steps == 4);
  CHECK(affine == 1);
  CHECK(default_b_bank().size() == 3);
}

TEST_CASE("empirical_norm: identity and scalar operators") {
  ExperimentConfig cfg = crw_config();
  LevelContext ctx = make_level_context(cfg, 64);
  const RatioReport ident = empirical_norm(
      ctx, [](const SampledField& f) { return f; }, cfg.Phi, cfg.vp);
  CHECK(ident.ratio == doctest::Approx(1.0).epsilon(1e-12));
  const RatioReport twice = empirical_norm(
      ctx,
      [](const SampledField& f) {
        SampledField g = f;
        for (auto& v : g.v) v *= 2.0;
        return g;
      },
      cfg.Phi, cfg.vp);
  CHECK(twice.ratio == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(twice.excluded == 1);  // sing_05 has no finite L^(2, r^-1) norm
}

TEST_CASE("in-space filter") {
  ExperimentConfig cfg = crw_config();
  LevelContext ctx = make_level_context(cfg, 64);
  int excluded = -1, included = -1;
  for (size_t i = 0; i < ctx.bank.size(); ++i) {
    if (ctx.bank[i].id == "sing_05") excluded = (int)i;
    if (ctx.bank[i].id == "sing_025") included = (int)i;
  }
  REQUIRE(excluded >= 0);
  REQUIRE(included >= 0);
  CHECK_FALSE(ctx.in_space(excluded));  // beta p = 1 >= n
  CHECK(ctx.in_space(included));
}

TEST_CASE("run_property validates names and levels") {
  ExperimentConfig cfg = crw_config();
  CHECK_THROWS(run_property("NOT_A_PROPERTY", cfg));
  CHECK(property_known("GOODLAMBDA"));
  CHECK_FALSE(property_known("GOODLAMBDA "));
  CHECK(property_catalog().size() == 27);
}

TEST_CASE("scale-free properties run once") {
  ExperimentConfig cfg = crw_config();
  cfg.levels = {64, 128};
  const PropertyReport rep = run_property("INVERSE_SANDWICH", cfg);
  CHECK(rep.pass);
  CHECK(rep.trend.size() == 1);
}

TEST_CASE("run_experiment: validation failures exit 1") {
  ExperimentConfig cfg = crw_config();
  cfg.properties = {};
  CHECK(run_experiment(cfg).exit_code == 1);
  cfg.properties = {"NO_SUCH_PROPERTY"};
  CHECK(run_experiment(cfg).exit_code == 1);
}

TEST_CASE("run_experiment: deterministic reports, CSV carries timings") {
  ExperimentConfig cfg = crw_config();
  cfg.properties = {"CHI_NORM", "JN_EQUIV"};
  const ExperimentOutcome a = run_experiment(cfg);
  const ExperimentOutcome b = run_experiment(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.report_json.dump(2) == b.report_json.dump(2));
  CHECK(a.csv.rfind("property,N,pass,worst_ratio,witness_id,seconds", 0) == 0);
  // different seed changes the random bank members' report
  ExperimentConfig other = cfg;
  other.seed = 999;
  other.properties = {"GOODLAMBDA"};
  cfg.properties = {"GOODLAMBDA"};
  const ExperimentOutcome c = run_experiment(cfg);
  const ExperimentOutcome d = run_experiment(other);
  CHECK(c.report_json.dump() != d.report_json.dump());
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig cfg;
  cfg.dim = 1;
  cfg.levels = {64, 128};
  cfg.Phi = young_power(1.5);
  cfg.Psi = young_power(3.0);
  cfg.Theta = young_power(3.0);
  cfg.rho = growth_power_pos(1.0 / 3.0);
  cfg.properties = {"COMM_BOUND_IR"};
  const ojson j = config_to_json(cfg);
  const ExperimentConfig back = config_from_json(j);
  CHECK(back.levels == cfg.levels);
  CHECK(back.properties == cfg.properties);
  PowerForm pf;
  REQUIRE(as_power(back.Phi, &pf));
  CHECK(pf.p == doctest::Approx(1.5));
  REQUIRE(back.rho.has_value());
  CHECK(back.rho->a == doctest::Approx(1.0 / 3.0));
  CHECK(config_to_json(back).dump() == j.dump());
}

TEST_CASE("serde: young and growth wire forms") {
  const YoungFunction y = young_scaled(young_power(2.0), 0.5);
  const YoungFunction back = young_from_json(young_to_json(y));
  for (double t : {0.3, 1.0, 5.0})
    CHECK(eval_young(back, t) == eval_young(y, t));
  const YoungFunction cap = young_piecewise({{0, 0}, {1, 0}}, kInf);
  const YoungFunction cap_back = young_from_json(young_to_json(cap));
  CHECK(std::isinf(eval_young(cap_back, 2.0)));
  const GrowthFunction g = growth_power_log(-1.0, 2.0);
  const GrowthFunction gb = growth_from_json(growth_to_json(g));
  CHECK(eval_growth(gb, 3.7) == eval_growth(g, 3.7));
}

TEST_CASE("serde: field specs") {
  FieldSpec aff;
  aff.kind = FieldKind::Affine;
  FieldSpec chi;
  chi.kind = FieldKind::Indicator;
  chi.radius = 2.0;
  aff.terms.push_back({0.75, std::make_shared<const FieldSpec>(chi)});
  const FieldSpec back = field_spec_from_json(field_spec_to_json(aff));
  const Window w = make_window(1, 4.0, 64);
  const SampledField a = sample(aff, w), b = sample(back, w);
  for (long i = 0; i < w.cell_count(); ++i) CHECK(a.v[i] == b.v[i]);
}

TEST_CASE("n=2 smoke: chi norm, holder, goodlambda at N=64") {
  ExperimentConfig cfg;
  cfg.dim = 2;
  cfg.levels = {64};
  LevelContext ctx = make_level_context(cfg, 64);
  CHECK(run_property_level("CHI_NORM", ctx).pass);
  CHECK(run_property_level("GOODLAMBDA", ctx).pass);
  CHECK(run_property_level("MEAN_BOUND", ctx).pass);
}

TEST_CASE("empirical norm of M is finite and refinement stable") {
  ExperimentConfig cfg = crw_config();
  double prev = -1.0;
  for (int N : {64, 128, 256}) {
    LevelContext ctx = make_level_context(cfg, N);
    const RatioReport rr = empirical_norm(
        ctx, [&](const SampledField& f) { return hl_maximal(f, ctx.fam); },
        cfg.Phi, cfg.vp);
    CHECK(std::isfinite(rr.ratio));
    CHECK(rr.ratio >= 1.0);  // M f >= |f| cellwise
    if (prev > 0.0) CHECK(std::abs(rr.ratio / prev - 1.0) < 0.05);
    prev = rr.ratio;
  }
}

TEST_CASE("JN equivalence under an increasing power weight") {
  ExperimentConfig cfg = crw_config();
  cfg.psi = growth_power_pos(0.5);
  LevelContext ctx = make_level_context(cfg, 128);
  const LevelResult res = run_property_level("JN_EQUIV", ctx);
  CHECK(res.pass);
  CHECK(res.worst_ratio >= 1.0);  // Jensen lower bound
  CHECK(res.worst_ratio <= 8.0);
}

TEST_CASE("property report carries a witness on failure") {
  ExperimentConfig cfg = crw_config();
  cfg.cap = 1e-9;  // absurd cap forces a bounded-constant failure
  LevelContext ctx = make_level_context(cfg, 64);
  const LevelResult res = run_property_level("OSC_GROWTH", ctx);
  CHECK_FALSE(res.pass);
  CHECK_FALSE(res.witness_id.empty());
  CHECK_FALSE(res.witness.is_null());
}
