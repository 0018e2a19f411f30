#include "olab/serde.hpp"

#include <cmath>
#include <stdexcept>

namespace olab {

namespace {

double num_or_inf(const ojson& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInf;
  return j.get<double>();
}

ojson inf_or_num(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

ojson young_to_json(const YoungFunction& y) {
  switch (y.family) {
    case YoungFamily::Power:
      return ojson{{"family", "power"}, {"params", {{"p", y.p}}}};
    case YoungFamily::PowerLog:
      return ojson{{"family", "power_log"},
                   {"params", {{"p", y.p}, {"q", y.q}}}};
    case YoungFamily::ExpMinusOne:
      return ojson{{"family", "exp_minus_one"}, {"params", ojson::object()}};
    case YoungFamily::LinearCap:
      return ojson{{"family", "linear_cap"}, {"params", ojson::object()}};
    case YoungFamily::Scaled:
      return ojson{{"family", "scaled"},
                   {"params",
                    {{"c", y.scale}, {"inner", young_to_json(*y.inner)}}}};
    case YoungFamily::PiecewiseLinearConvex: {
      ojson pts = ojson::array();
      for (const auto& p : y.points) pts.push_back({p[0], p[1]});
      return ojson{{"family", "piecewise_linear"},
                   {"params",
                    {{"points", pts}, {"final_slope", inf_or_num(y.final_slope)}}}};
    }
  }
  throw std::logic_error("young_to_json: unreachable");
}

YoungFunction young_from_json(const ojson& j) {
  const std::string fam = j.at("family").get<std::string>();
  const ojson params = j.value("params", ojson::object());
  if (fam == "power") return young_power(params.at("p").get<double>());
  if (fam == "power_log")
    return young_power_log(params.at("p").get<double>(),
                           params.at("q").get<double>());
  if (fam == "exp_minus_one") return young_exp_minus_one();
  if (fam == "linear_cap") return young_linear_cap();
  if (fam == "scaled")
    return young_scaled(young_from_json(params.at("inner")),
                        params.at("c").get<double>());
  if (fam == "piecewise_linear") {
    std::vector<std::array<double, 2>> pts;
    for (const auto& p : params.at("points"))
      pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    double fs = -1.0;
    if (params.contains("final_slope")) fs = num_or_inf(params.at("final_slope"));
    return young_piecewise(std::move(pts), fs);
  }
  throw std::invalid_argument("young_from_json: unknown family " + fam);
}

ojson growth_to_json(const GrowthFunction& g) {
  switch (g.family) {
    case GrowthFamily::PowerNeg:
      return ojson{{"family", "power_neg"},
                   {"params", {{"lambda", g.a}, {"scale", g.c}}}};
    case GrowthFamily::PowerPos:
      return ojson{{"family", "power_pos"},
                   {"params", {{"alpha", g.a}, {"scale", g.c}}}};
    case GrowthFamily::PowerLogG:
      return ojson{{"family", "power_log"},
                   {"params", {{"a", g.a}, {"b", g.b}, {"scale", g.c}}}};
    case GrowthFamily::Constant:
      return ojson{{"family", "constant"}, {"params", {{"c", g.c}}}};
    case GrowthFamily::Tabulated: {
      ojson r = ojson::array(), v = ojson::array();
      for (double x : g.tab_r) r.push_back(x);
      for (double x : g.tab_v) v.push_back(x);
      return ojson{{"family", "tabulated"}, {"params", {{"r", r}, {"v", v}}}};
    }
  }
  throw std::logic_error("growth_to_json: unreachable");
}

GrowthFunction growth_from_json(const ojson& j) {
  const std::string fam = j.at("family").get<std::string>();
  const ojson params = j.value("params", ojson::object());
  const double scale = params.value("scale", 1.0);
  if (fam == "power_neg")
    return growth_scale(growth_power_neg(params.at("lambda").get<double>()),
                        scale);
  if (fam == "power_pos")
    return growth_scale(growth_power_pos(params.at("alpha").get<double>()),
                        scale);
  if (fam == "power_log")
    return growth_scale(growth_power_log(params.at("a").get<double>(),
                                         params.at("b").get<double>()),
                        scale);
  if (fam == "constant") return growth_constant(params.at("c").get<double>());
  if (fam == "tabulated") {
    std::vector<double> r, v;
    for (const auto& x : params.at("r")) r.push_back(x.get<double>());
    for (const auto& x : params.at("v")) v.push_back(x.get<double>());
    return growth_tabulated(std::move(r), std::move(v));
  }
  throw std::invalid_argument("growth_from_json: unknown family " + fam);
}

ojson field_spec_to_json(const FieldSpec& s) {
  switch (s.kind) {
    case FieldKind::Indicator:
      return ojson{{"kind", "indicator"},
                   {"params",
                    {{"shape", s.cube ? "cube" : "ball"},
                     {"center", {s.center[0], s.center[1]}},
                     {"radius", s.radius}}}};
    case FieldKind::PowerSingular:
      return ojson{{"kind", "power_singular"}, {"params", {{"beta", s.beta}}}};
    case FieldKind::Oscillatory:
      return ojson{{"kind", "oscillatory"}, {"params", {{"k", s.k}}}};
    case FieldKind::RandomStep:
      return ojson{{"kind", "random_step"},
                   {"params", {{"seed", s.seed}, {"depth", s.depth}}}};
    case FieldKind::Affine: {
      ojson terms = ojson::array();
      for (const auto& t : s.terms)
        terms.push_back(
            ojson{{"coef", t.first}, {"spec", field_spec_to_json(*t.second)}});
      return ojson{{"kind", "affine"}, {"params", {{"terms", terms}}}};
    }
    case FieldKind::ClampLinear:
      return ojson{{"kind", "clamp_linear"}, {"params", ojson::object()}};
    case FieldKind::LogAbs:
      return ojson{{"kind", "log_abs"}, {"params", ojson::object()}};
    case FieldKind::AbsPower:
      return ojson{{"kind", "abs_power"}, {"params", {{"beta", s.beta}}}};
  }
  throw std::logic_error("field_spec_to_json: unreachable");
}

FieldSpec field_spec_from_json(const ojson& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const ojson params = j.value("params", ojson::object());
  FieldSpec s;
  if (kind == "indicator") {
    s.kind = FieldKind::Indicator;
    s.cube = params.value("shape", std::string("ball")) == "cube";
    if (params.contains("center")) {
      s.center[0] = params.at("center").at(0).get<double>();
      if (params.at("center").size() > 1)
        s.center[1] = params.at("center").at(1).get<double>();
    }
    s.radius = params.value("radius", 1.0);
    return s;
  }
  if (kind == "power_singular") {
    s.kind = FieldKind::PowerSingular;
    s.beta = params.at("beta").get<double>();
    return s;
  }
  if (kind == "oscillatory") {
    s.kind = FieldKind::Oscillatory;
    s.k = params.at("k").get<int>();
    return s;
  }
  if (kind == "random_step") {
    s.kind = FieldKind::RandomStep;
    s.seed = params.at("seed").get<std::uint64_t>();
    s.depth = params.value("depth", 3);
    return s;
  }
  if (kind == "affine") {
    s.kind = FieldKind::Affine;
    for (const auto& t : params.at("terms"))
      s.terms.push_back({t.at("coef").get<double>(),
                         std::make_shared<const FieldSpec>(
                             field_spec_from_json(t.at("spec")))});
    return s;
  }
  if (kind == "clamp_linear") {
    s.kind = FieldKind::ClampLinear;
    return s;
  }
  if (kind == "log_abs") {
    s.kind = FieldKind::LogAbs;
    return s;
  }
  if (kind == "abs_power") {
    s.kind = FieldKind::AbsPower;
    s.beta = params.at("beta").get<double>();
    return s;
  }
  throw std::invalid_argument("field_spec_from_json: unknown kind " + kind);
}

ojson kernel_to_json(const KernelSpec& k) {
  const char* name = k.kind == KernelKind::Hilbert
                         ? "hilbert"
                         : (k.kind == KernelKind::Riesz1 ? "riesz1" : "riesz2");
  return ojson{{"kind", name}, {"omega", growth_to_json(k.omega)}};
}

KernelSpec kernel_from_json(const ojson& j) {
  KernelSpec k;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "hilbert")
    k.kind = KernelKind::Hilbert;
  else if (kind == "riesz1")
    k.kind = KernelKind::Riesz1;
  else if (kind == "riesz2")
    k.kind = KernelKind::Riesz2;
  else
    throw std::invalid_argument("kernel_from_json: unknown kind " + kind);
  if (j.contains("omega")) k.omega = growth_from_json(j.at("omega"));
  return k;
}

ojson condition_to_json(const ConditionReport& r) {
  ojson j{{"holds", r.holds},
          {"best_constant", inf_or_num(r.best_constant)},
          {"witness", r.witness},
          {"grid", r.grid}};
  if (!std::isnan(r.witness2)) j["witness2"] = r.witness2;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.parts.empty()) {
    ojson parts = ojson::object();
    for (const auto& p : r.parts) parts[p.first] = condition_to_json(p.second);
    j["parts"] = parts;
  }
  return j;
}

ojson class_report_to_json(const ClassReport& r) {
  return ojson{{"in_Gdec", r.in_Gdec},
               {"in_Ginc", r.in_Ginc},
               {"doubling", r.doubling},
               {"almost_increasing", r.almost_increasing},
               {"almost_decreasing", r.almost_decreasing},
               {"c_Gdec", inf_or_num(r.c_Gdec)},
               {"c_Ginc", inf_or_num(r.c_Ginc)},
               {"c_doubling", inf_or_num(r.c_doubling)},
               {"c_almost_increasing", inf_or_num(r.c_almost_increasing)},
               {"c_almost_decreasing", inf_or_num(r.c_almost_decreasing)},
               {"grid", r.grid}};
}

ojson norm_result_to_json(const NormResult& r) {
  return ojson{{"value", r.value},
               {"attaining_ball",
                {{"center", {r.attaining_ball.center[0], r.attaining_ball.center[1]}},
                 {"radius", r.attaining_ball.radius}}},
               {"bisection_iterations", r.bisection_iterations}};
}

ojson config_to_json(const ExperimentConfig& cfg) {
  ojson banks = ojson::array();
  for (const auto& e : cfg.bank)
    banks.push_back(ojson{{"id", e.id}, {"spec", field_spec_to_json(e.spec)}});
  ojson bbanks = ojson::array();
  for (const auto& e : cfg.b_bank)
    bbanks.push_back(ojson{{"id", e.id}, {"spec", field_spec_to_json(e.spec)}});
  ojson levels = ojson::array();
  for (int N : cfg.levels) levels.push_back(N);
  ojson props = ojson::array();
  for (const auto& p : cfg.properties) props.push_back(p);
  ojson j{{"window", {{"n", cfg.dim}, {"L", cfg.L}}},
          {"levels", levels},
          {"seed", cfg.seed},
          {"Phi", young_to_json(cfg.Phi)},
          {"Psi", young_to_json(cfg.Psi)},
          {"vp", growth_to_json(cfg.vp)},
          {"psi", growth_to_json(cfg.psi)},
          {"kernel", kernel_to_json(cfg.kernel)},
          {"eta", cfg.eta},
          {"stride", cfg.stride},
          {"K1", cfg.K1},
          {"K2", cfg.K2},
          {"cap", cfg.cap},
          {"stability_tol", cfg.stability_tol},
          {"properties", props}};
  if (cfg.Theta) j["Theta"] = young_to_json(*cfg.Theta);
  if (cfg.Phi0) j["Phi0"] = young_to_json(*cfg.Phi0);
  if (cfg.theta_g) j["theta"] = growth_to_json(*cfg.theta_g);
  if (cfg.rho) j["rho"] = growth_to_json(*cfg.rho);
  if (!banks.empty()) j["bank"] = banks;
  if (!bbanks.empty()) j["b_bank"] = bbanks;
  return j;
}

ExperimentConfig config_from_json(const ojson& j) {
  ExperimentConfig cfg;
  if (j.contains("window")) {
    cfg.dim = j.at("window").value("n", 1);
    cfg.L = j.at("window").value("L", 4.0);
  }
  if (j.contains("levels")) {
    cfg.levels.clear();
    for (const auto& n : j.at("levels")) cfg.levels.push_back(n.get<int>());
  }
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("Phi")) cfg.Phi = young_from_json(j.at("Phi"));
  if (j.contains("Psi")) cfg.Psi = young_from_json(j.at("Psi"));
  if (j.contains("Theta")) cfg.Theta = young_from_json(j.at("Theta"));
  if (j.contains("Phi0")) cfg.Phi0 = young_from_json(j.at("Phi0"));
  if (j.contains("vp")) cfg.vp = growth_from_json(j.at("vp"));
  if (j.contains("psi")) cfg.psi = growth_from_json(j.at("psi"));
  if (j.contains("theta")) cfg.theta_g = growth_from_json(j.at("theta"));
  if (j.contains("rho")) cfg.rho = growth_from_json(j.at("rho"));
  if (j.contains("kernel")) cfg.kernel = kernel_from_json(j.at("kernel"));
  cfg.eta = j.value("eta", 2.0);
  cfg.stride = j.value("stride", 1);
  cfg.K1 = j.value("K1", 0.5);
  cfg.K2 = j.value("K2", 2.0);
  cfg.cap = j.value("cap", 1e6);
  cfg.stability_tol = j.value("stability_tol", 0.05);
  if (j.contains("properties"))
    for (const auto& p : j.at("properties"))
      cfg.properties.push_back(p.get<std::string>());
  if (j.contains("bank"))
    for (const auto& e : j.at("bank"))
      cfg.bank.push_back({e.at("id").get<std::string>(),
                          field_spec_from_json(e.at("spec"))});
  if (j.contains("b_bank"))
    for (const auto& e : j.at("b_bank"))
      cfg.b_bank.push_back({e.at("id").get<std::string>(),
                            field_spec_from_json(e.at("spec"))});
  return cfg;
}

}  // namespace olab
