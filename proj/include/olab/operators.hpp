#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "olab/field.hpp"
#include "olab/growth.hpp"
#include "olab/report.hpp"
#include "olab/young.hpp"

namespace olab {

enum class KernelKind {
  Hilbert,  // n=1, K(x) = 1/(pi x)
  Riesz1,   // n=2, K(x) = x_1 / (2 pi |x|^3)
  Riesz2,   // n=2, K(x) = x_2 / (2 pi |x|^3)
};

struct KernelSpec {
  KernelKind kind = KernelKind::Hilbert;
  GrowthFunction omega = growth_power_pos(1.0);  // modulus of continuity
  int dim() const { return kind == KernelKind::Hilbert ? 1 : 2; }
};

struct OperatorOutput {
  SampledField field;
  std::string truncation_note;
};

// Hardy-Littlewood maximal function over the family: Mf(x) = max mean of |f|
// over family balls containing x.
SampledField hl_maximal(const SampledField& f, const BallFamily& fam);

// M_rho: weight rho(radius) on the ball mean.
SampledField frac_maximal(const SampledField& f, const GrowthFunction& rho,
                          const BallFamily& fam);

// General radius weight (the psi^eta and (rho* psi)^eta variants).
SampledField weighted_maximal(const SampledField& f,
                              const std::function<double(double)>& weight,
                              const BallFamily& fam);

// Sharp maximal function: max mean oscillation over containing balls.
SampledField sharp_maximal(const SampledField& f, const BallFamily& fam);

// Dyadic maximal / sharp maximal relative to the family root, one bottom-up
// pass over the cube tree.
SampledField dyadic_maximal(const SampledField& f, const DyadicFamily& fam);
SampledField dyadic_sharp(const SampledField& f, const DyadicFamily& fam);

// I_rho f(x) = int rho(|x-y|)/|x-y|^n f(y) dy against piecewise-constant
// data. n=1 uses exact radial cell integrals (differences of rho*); n=2 uses
// cell-center quadrature with the radialized self-cell integral.
OperatorOutput frac_integral(const SampledField& f, const GrowthFunction& rho);

// Calderon-Zygmund convolution: p.v. with the odd self-cell cancelled. n=1
// Hilbert uses exact cell integrals of the kernel; n=2 Riesz uses 2x2 Gauss
// on the touching cells.
OperatorOutput cz_apply(const SampledField& f, const KernelSpec& kernel);

// Smoothness constant of the kernel over seeded triples 2|y-z| <= |x-y|,
// plus the Dini and log-Dini integrals of omega.
ConditionReport check_standard_kernel(const KernelSpec& kernel,
                                      const GrowthFunction& omega,
                                      int triple_count, std::uint64_t seed,
                                      double box = 4.0);

enum class CommutatorKind { CZ, FRACT };

// [b, Op]f via the absolutely convergent (b(x) - b(y)) form; identical to
// b Op f - Op(b f) in the discrete weights.
OperatorOutput commutator(CommutatorKind kind, const SampledField& b,
                          const SampledField& f, const KernelSpec* kernel,
                          const GrowthFunction* rho);

enum class TailLemma { CZ, IR, IR_PSI };

struct TailCheckInput {
  TailLemma which = TailLemma::CZ;
  const SampledField* f = nullptr;
  const FieldSpec* f_spec = nullptr;  // analytic extension beyond the window
  const SampledField* b = nullptr;    // IR_PSI
  const FieldSpec* b_spec = nullptr;
  Ball B;          // the reference ball; CZ excludes 2B, IR excludes B(x,r)
  double x = 0.0;  // evaluation point in B (n=1 coordinate)
  const KernelSpec* kernel = nullptr;
  const GrowthFunction* rho = nullptr;
  const YoungFunction* Phi = nullptr;
  const GrowthFunction* vp = nullptr;
  const GrowthFunction* psi = nullptr;
  double norm_f = 1.0;  // ||f||_{L^{(Phi,vp)}} over the working family
  double norm_b = 1.0;  // ||b||_{L_{1,psi}} (IR_PSI)
  double K1 = 0.5;
};

// LHS tail integral (window cells + analytic beyond-window part) against
// the bound's RHS; best_constant is their ratio. n=1 only.
ConditionReport tail_bound_check(const TailCheckInput& in);

}  // namespace olab
