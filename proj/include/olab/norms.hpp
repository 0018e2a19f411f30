#pragma once

#include "olab/field.hpp"
#include "olab/growth.hpp"
#include "olab/young.hpp"

namespace olab {

struct NormResult {
  double value = 0.0;
  Ball attaining_ball;
  int bisection_iterations = 0;
};

// (1/vp(r)) fint_B Phi(|f - offset| / lambda), extended arithmetic.
double modular(const SampledField& f, const YoungFunction& Phi,
               const GrowthFunction& vp, const Ball& B, double lambda,
               double offset = 0.0);

// Luxemburg ball norm inf{lambda > 0 : modular <= 1}; monotone bisection to
// 1e-10 relative, approached from above (the returned lambda has modular<=1).
NormResult ball_norm(const SampledField& f, const YoungFunction& Phi,
                     const GrowthFunction& vp, const Ball& B,
                     double offset = 0.0);

// Orlicz-Morrey norm: max of ball_norm over the family.
NormResult om_norm(const SampledField& f, const YoungFunction& Phi,
                   const GrowthFunction& vp, const BallFamily& fam);

// Orlicz-Campanato seminorm: ball means subtracted per ball.
NormResult campanato_norm(const SampledField& f, const YoungFunction& Phi,
                          const GrowthFunction& vp, const BallFamily& fam);

// Classical generalized Campanato: sup_B psi(r)^{-1} (fint_B |f-f_B|^p)^{1/p}.
NormResult campanato_p(const SampledField& f, double p,
                       const GrowthFunction& psi, const BallFamily& fam);

struct SigmaResult {
  double value = 0.0;
  bool converged = false;
  double last_delta = 0.0;
};

// sigma(f) = lim_{r->inf} f_{B(0,r)} along the ladder. Rungs beyond the
// window use the spec's analytic extension (exact volume denominators), so
// compactly supported data reaches its vanishing limit.
SigmaResult sigma_limit(const SampledField& f,
                        const std::vector<double>& ladder,
                        const FieldSpec* spec = nullptr, double tol = 1e-6);

SampledField subtract_constant(const SampledField& f, double c);

}  // namespace olab
