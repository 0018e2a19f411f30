// olab: Orlicz-Morrey functional calculus and operator verification CLI.
//
// Subcommands: check-young, check-growth, check-pairing, norm, apply,
// verify <property>, experiment <config.json>. Function arguments accept a
// file path or inline JSON. OLAB_THREADS caps parallelism.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "olab/harness.hpp"
#include "olab/serde.hpp"

using namespace olab;

namespace {

ojson load_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '['))
    return ojson::parse(arg);
  std::ifstream is(arg);
  if (!is) throw std::runtime_error("cannot open " + arg);
  return ojson::parse(is);
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

// fill the slots a property needs when the config leaves them empty
void apply_property_defaults(ExperimentConfig& cfg, const std::string& name) {
  const bool needs_rho = name == "TAIL_IR" || name == "TAIL_IR_PSI" ||
                         name == "MR_POINTWISE" || name == "MR_BOUNDED" ||
                         name == "COMM_PW_IR" || name == "COMM_BOUND_IR" ||
                         name == "COMM_BOUND_IR_DEC";
  if (needs_rho && !cfg.rho) {
    cfg.Phi = young_power(1.5);
    cfg.Psi = young_power(3.0);
    cfg.Theta = young_power(3.0);
    cfg.rho = growth_power_pos(1.0 / 3.0);
  }
  if (name == "COMM_BOUND_CZ_DEC" && !cfg.Phi0) {
    cfg.Phi = young_power(4.0);
    cfg.Phi0 = young_power(2.0);
    cfg.Psi = young_power(4.0 / 3.0);
    cfg.psi = growth_power_neg(1.0);
    cfg.theta_g = growth_power_neg(1.0);
  }
  if (name == "COMM_BOUND_IR_DEC" && !cfg.Phi0) {
    cfg.Phi = young_power(3.0);
    cfg.Phi0 = young_power(3.0);
    cfg.Psi = young_power(2.0);
    cfg.Theta = young_power(6.0);
    cfg.rho = growth_power_pos(1.0 / 6.0);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz-Morrey norms, integral operators and inequality checks"};
  app.require_subcommand(1);

  // ---- check-young
  auto* cy = app.add_subcommand("check-young", "Delta2 / Nabla2 diagnostics");
  std::string cy_phi, cy_check = "delta2";
  cy->add_option("--phi", cy_phi, "Young function JSON (file or inline)")
      ->required();
  cy->add_option("--check", cy_check, "delta2 | nabla2");

  // ---- check-growth
  auto* cg = app.add_subcommand("check-growth", "growth class diagnostics");
  std::string cg_g, cg_check = "class";
  int cg_n = 1;
  double cg_eps = 0.25;
  cg->add_option("--g", cg_g, "growth function JSON")->required();
  cg->add_option("--check", cg_check, "class | decay | rho");
  cg->add_option("--n", cg_n, "dimension for the class scans");
  cg->add_option("--eps", cg_eps, "epsilon for the rho admissibility scan");

  // ---- check-pairing
  auto* cp = app.add_subcommand("check-pairing", "hypothesis inequalities");
  std::string cp_kind = "CZ";
  std::string cp_phi, cp_psi_y, cp_theta_y, cp_phi0, cp_vp, cp_psi, cp_theta_g,
      cp_rho;
  cp->add_option("--kind", cp_kind, "CZ|CZ_NEC|FRACT|MAXIMAL|HOLDER|IPVP");
  cp->add_option("--phi", cp_phi, "Young Phi JSON")->required();
  cp->add_option("--psi-young", cp_psi_y, "Young Psi JSON");
  cp->add_option("--theta-young", cp_theta_y, "Young Theta JSON (FRACT)");
  cp->add_option("--phi0", cp_phi0, "Young Phi0 JSON (HOLDER)");
  cp->add_option("--vp", cp_vp, "growth vp JSON")->required();
  cp->add_option("--psi", cp_psi, "growth psi JSON");
  cp->add_option("--theta-growth", cp_theta_g, "growth theta JSON (HOLDER)");
  cp->add_option("--rho", cp_rho, "growth rho JSON (FRACT/MAXIMAL)");

  // ---- norm
  auto* nm = app.add_subcommand("norm", "Orlicz-Morrey / Campanato norm");
  std::string nm_field, nm_phi, nm_vp;
  bool nm_campanato = false;
  int nm_stride = 1;
  nm->add_option("--field", nm_field, "field file (.bin)")->required();
  nm->add_option("--phi", nm_phi, "Young function JSON")->required();
  nm->add_option("--vp", nm_vp, "growth function JSON")->required();
  nm->add_flag("--campanato", nm_campanato, "subtract ball means");
  nm->add_option("--stride", nm_stride, "ball-family center stride");

  // ---- apply
  auto* ap = app.add_subcommand("apply", "apply an operator to a field");
  std::string ap_op, ap_field, ap_out, ap_rho, ap_kernel = "hilbert", ap_b,
                                                ap_csv;
  int ap_stride = 1;
  ap->add_option("--op", ap_op, "M|Mrho|Msharp|Irho|T|commT|commIrho")
      ->required();
  ap->add_option("--field", ap_field, "input field file")->required();
  ap->add_option("--out", ap_out, "output field file")->required();
  ap->add_option("--rho", ap_rho, "growth rho JSON (Mrho/Irho/commIrho)");
  ap->add_option("--kernel", ap_kernel, "hilbert|riesz1|riesz2");
  ap->add_option("--b", ap_b, "symbol field file (commutators)");
  ap->add_option("--csv", ap_csv, "also export CSV");
  ap->add_option("--stride", ap_stride, "ball-family stride (maximal ops)");

  // ---- verify
  auto* vf = app.add_subcommand("verify", "run one named property");
  std::string vf_name, vf_config;
  std::optional<std::uint64_t> vf_seed;
  vf->add_option("property", vf_name, "catalog name")->required();
  vf->add_option("--config", vf_config, "experiment config JSON");
  vf->add_option("--seed", vf_seed, "bank seed override");

  // ---- experiment
  auto* ex = app.add_subcommand("experiment", "run a property list from JSON");
  std::string ex_config, ex_out = ".";
  std::optional<std::uint64_t> ex_seed;
  ex->add_option("config", ex_config, "config JSON path")->required();
  ex->add_option("--out", ex_out, "output directory");
  ex->add_option("--seed", ex_seed, "bank seed override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cy) {
      const YoungFunction phi = young_from_json(load_json_arg(cy_phi));
      ConditionReport rep;
      if (cy_check == "delta2") {
        rep = check_delta2(phi, default_scan_grid());
      } else if (cy_check == "nabla2") {
        rep = check_nabla2(phi, default_scan_grid(),
                           {1.1, 1.5, 2, 3, 4, 6, 8, 12, 16});
      } else {
        throw std::runtime_error("check-young: unknown check " + cy_check);
      }
      emit(condition_to_json(rep));
      return rep.holds ? 0 : 3;
    }

    if (*cg) {
      const GrowthFunction g = growth_from_json(load_json_arg(cg_g));
      if (cg_check == "class") {
        emit(class_report_to_json(
            classify_growth(g, cg_n, default_scan_grid())));
        return 0;
      }
      ConditionReport rep;
      if (cg_check == "decay")
        rep = check_decay_integral(g, default_scan_grid());
      else if (cg_check == "rho")
        rep = check_rho_admissible(g, cg_n, cg_eps, default_scan_grid());
      else
        throw std::runtime_error("check-growth: unknown check " + cg_check);
      emit(condition_to_json(rep));
      return rep.holds ? 0 : 3;
    }

    if (*cp) {
      YoungFunction phi = young_from_json(load_json_arg(cp_phi));
      std::optional<YoungFunction> psi_y, theta_y, phi0;
      if (!cp_psi_y.empty()) psi_y = young_from_json(load_json_arg(cp_psi_y));
      if (!cp_theta_y.empty())
        theta_y = young_from_json(load_json_arg(cp_theta_y));
      if (!cp_phi0.empty()) phi0 = young_from_json(load_json_arg(cp_phi0));
      GrowthFunction vp = growth_from_json(load_json_arg(cp_vp));
      std::optional<GrowthFunction> psi, theta_g, rho;
      if (!cp_psi.empty()) psi = growth_from_json(load_json_arg(cp_psi));
      if (!cp_theta_g.empty())
        theta_g = growth_from_json(load_json_arg(cp_theta_g));
      if (!cp_rho.empty()) rho = growth_from_json(load_json_arg(cp_rho));
      PairingInput in;
      in.Phi = &phi;
      if (psi_y) in.Psi = &*psi_y;
      if (theta_y) in.Theta = &*theta_y;
      if (phi0) in.Phi0 = &*phi0;
      in.vp = &vp;
      if (psi) in.psi = &*psi;
      if (theta_g) in.theta_g = &*theta_g;
      if (rho) in.rho = &*rho;
      PairingKind kind;
      if (cp_kind == "CZ")
        kind = PairingKind::CZ;
      else if (cp_kind == "CZ_NEC")
        kind = PairingKind::CZ_NEC;
      else if (cp_kind == "FRACT")
        kind = PairingKind::FRACT;
      else if (cp_kind == "MAXIMAL")
        kind = PairingKind::MAXIMAL;
      else if (cp_kind == "HOLDER")
        kind = PairingKind::HOLDER;
      else if (cp_kind == "IPVP")
        kind = PairingKind::IPVP;
      else
        throw std::runtime_error("check-pairing: unknown kind " + cp_kind);
      const ConditionReport rep = check_pairing(kind, in, default_scan_grid());
      emit(condition_to_json(rep));
      return rep.holds ? 0 : 3;
    }

    if (*nm) {
      const SampledField f = read_field(nm_field);
      const YoungFunction phi = young_from_json(load_json_arg(nm_phi));
      const GrowthFunction vp = growth_from_json(load_json_arg(nm_vp));
      BallPolicy pol;
      pol.stride = nm_stride;
      const BallFamily fam = ball_family(f.w, pol);
      const NormResult res = nm_campanato ? campanato_norm(f, phi, vp, fam)
                                          : om_norm(f, phi, vp, fam);
      ojson j = norm_result_to_json(res);
      j["family_balls"] = fam.balls.size();
      j["convention"] =
          "sup over the listed finite ball family; means run over ball "
          "cells, so with vp=r^-n this differs from the classical Orlicz "
          "norm by the unit-ball volume factor";
      emit(j);
      return 0;
    }

    if (*ap) {
      const SampledField f = read_field(ap_field);
      std::optional<GrowthFunction> rho;
      if (!ap_rho.empty()) rho = growth_from_json(load_json_arg(ap_rho));
      KernelSpec kernel = kernel_from_json(ojson{{"kind", ap_kernel}});
      OperatorOutput out;
      BallPolicy pol;
      pol.stride = ap_stride;
      if (ap_op == "M") {
        out.field = hl_maximal(f, ball_family(f.w, pol));
      } else if (ap_op == "Mrho") {
        if (!rho) throw std::runtime_error("apply: Mrho needs --rho");
        out.field = frac_maximal(f, *rho, ball_family(f.w, pol));
      } else if (ap_op == "Msharp") {
        out.field = sharp_maximal(f, ball_family(f.w, pol));
      } else if (ap_op == "Irho") {
        if (!rho) throw std::runtime_error("apply: Irho needs --rho");
        out = frac_integral(f, *rho);
      } else if (ap_op == "T") {
        out = cz_apply(f, kernel);
      } else if (ap_op == "commT" || ap_op == "commIrho") {
        if (ap_b.empty()) throw std::runtime_error("apply: commutators need --b");
        const SampledField b = read_field(ap_b);
        out = commutator(
            ap_op == "commT" ? CommutatorKind::CZ : CommutatorKind::FRACT, b,
            f, &kernel, rho ? &*rho : nullptr);
      } else {
        throw std::runtime_error("apply: unknown op " + ap_op);
      }
      write_field(out.field, ap_out);
      if (!ap_csv.empty()) write_field_csv(out.field, ap_csv);
      if (!out.truncation_note.empty())
        std::cerr << "note: " << out.truncation_note << "\n";
      return 0;
    }

    if (*vf) {
      ExperimentConfig cfg;
      if (!vf_config.empty()) cfg = config_from_json(load_json_arg(vf_config));
      if (vf_seed) cfg.seed = *vf_seed;
      apply_property_defaults(cfg, vf_name);
      const PropertyReport rep = run_property(vf_name, cfg);
      ojson trend = ojson::array();
      for (const auto& [N, v] : rep.trend)
        trend.push_back(ojson{{"N", N}, {"worst_ratio", v}});
      ojson j{{"property", rep.name},   {"pass", rep.pass},
              {"unstable", rep.unstable}, {"worst_ratio", rep.worst_ratio},
              {"witness_id", rep.witness_id}, {"trend", trend},
              {"note", rep.note}};
      if (!rep.witness.is_null()) j["witness"] = rep.witness;
      emit(j);
      return rep.pass ? 0 : (rep.unstable ? 2 : 3);
    }

    if (*ex) {
      ExperimentConfig cfg = config_from_json(load_json_arg(ex_config));
      if (ex_seed) cfg.seed = *ex_seed;
      const ExperimentOutcome out = run_experiment(cfg);
      namespace fs = std::filesystem;
      fs::create_directories(ex_out);
      {
        std::ofstream os(fs::path(ex_out) / "report.json");
        os << out.report_json.dump(2) << "\n";
      }
      {
        std::ofstream os(fs::path(ex_out) / "summary.csv");
        os << out.csv;
      }
      for (const auto& rep : out.reports) {
        const std::string note =
            rep.note.empty() ? "" : "  (" + rep.note + ")";
        std::printf("%-20s %s%s\n", rep.name.c_str(),
                    rep.pass ? "pass" : (rep.unstable ? "UNSTABLE" : "FAIL"),
                    note.c_str());
      }
      return out.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
