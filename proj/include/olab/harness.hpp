#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "olab/field.hpp"
#include "olab/growth.hpp"
#include "olab/norms.hpp"
#include "olab/operators.hpp"
#include "olab/young.hpp"

namespace olab {

using ojson = nlohmann::ordered_json;

struct BankEntry {
  std::string id;
  FieldSpec spec;
};

// 12 deterministic fields: indicators at 3 scales, two power singularities,
// two oscillation frequencies, 4 seeded step fields, one affine combo.
std::vector<BankEntry> default_bank(std::uint64_t seed);
// commutator symbols: clamped linear, clipped log (BMO exemplar), |x|^beta
std::vector<BankEntry> default_b_bank(double beta = 0.5);

struct ExperimentConfig {
  int dim = 1;
  double L = 4.0;
  std::vector<int> levels = {64, 128, 256};
  std::uint64_t seed = 814;

  std::vector<BankEntry> bank;    // empty: default_bank(seed)
  std::vector<BankEntry> b_bank;  // empty: default_b_bank()

  YoungFunction Phi = young_power(2.0);
  YoungFunction Psi = young_power(2.0);
  std::optional<YoungFunction> Theta;  // FRACT / COMM_BOUND_IR
  std::optional<YoungFunction> Phi0;   // decreasing-weight commutator variants
  GrowthFunction vp = growth_power_neg(1.0);
  GrowthFunction psi = growth_constant(1.0);
  std::optional<GrowthFunction> theta_g;  // HOLDER / dec-scale out weight
  std::optional<GrowthFunction> rho;      // fractional operators

  KernelSpec kernel;  // Hilbert in n=1
  double eta = 2.0;
  int stride = 1;
  double K1 = 0.5, K2 = 2.0;
  double cap = 1e6;            // generic boundedness cap
  double stability_tol = 0.05; // refinement drift allowed for pass verdicts

  std::vector<std::string> properties;
};

struct PropertyReport {
  std::string name;
  bool pass = false;
  bool unstable = false;
  double worst_ratio = 0.0;  // at the finest level
  std::string witness_id;
  ojson witness;  // ball / cell / lambda detail, present on failure
  std::vector<std::pair<int, double>> trend;  // (N, worst_ratio)
  std::string note;
};

struct RatioReport {
  double ratio = 0.0;
  std::string field_id;
  int excluded = 0;  // bank members skipped as not in the source space
};

// Per-level working state: window, family, sampled banks, operator caches.
struct LevelContext {
  const ExperimentConfig* cfg = nullptr;
  Window w;
  BallFamily fam;
  std::vector<BankEntry> bank;
  std::vector<SampledField> fields;
  std::vector<BankEntry> b_bank;
  std::vector<SampledField> b_fields;

  // lazy caches keyed by bank index
  std::map<int, SampledField> cz_out, ir_out;
  std::map<int, double> in_norm;   // ||f||_{L^{(Phi,vp)}}
  std::map<int, double> b_norm;    // ||b||_{L_{1,psi}}

  const SampledField& cz_of(int i);
  const SampledField& ir_of(int i);
  double in_norm_of(int i);
  double b_norm_of(int i);
  bool in_space(int i) const;  // PowerSingular in-space filter for (Phi, vp)
};

LevelContext make_level_context(const ExperimentConfig& cfg, int N);

// max over the bank of out_norm(Op f) / in_norm(f)
RatioReport empirical_norm(
    LevelContext& ctx,
    const std::function<SampledField(const SampledField&)>& op,
    const YoungFunction& out_Phi, const GrowthFunction& out_vp);

// One catalog property at one refinement level.
struct LevelResult {
  bool pass = false;
  double worst_ratio = 0.0;
  std::string witness_id;
  ojson witness;
  std::string note;
};

std::vector<std::string> property_catalog();
bool property_known(const std::string& name);
// true when the property is an exact identity (refinement drift not a verdict)
bool property_exact(const std::string& name);
// true when the property does not depend on the grid at all
bool property_scale_free(const std::string& name);

LevelResult run_property_level(const std::string& name, LevelContext& ctx);

// Runs the property across cfg.levels and applies the refinement-stability
// contract (COMM_* at 10%, others at cfg.stability_tol).
PropertyReport run_property(const std::string& name,
                            const ExperimentConfig& cfg);

struct ExperimentOutcome {
  std::vector<PropertyReport> reports;
  ojson report_json;  // deterministic: no timing inside
  std::string csv;    // property,N,pass,worst_ratio,witness_id,seconds
  int exit_code = 0;  // 0 ok, 1 validation, 2 unstable, 3 failure
};

ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace olab
