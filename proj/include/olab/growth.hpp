#pragma once

#include <functional>
#include <vector>

#include "olab/report.hpp"
#include "olab/young.hpp"

namespace olab {

enum class GrowthFamily {
  PowerNeg,   // r^{-lambda}
  PowerPos,   // r^{alpha}
  PowerLogG,  // r^a (1 + |log r|)^b
  Constant,   // c
  Tabulated,  // log-grid samples, log-linear interpolation, constant beyond
};

// A positive weight on (0, inf): the phi / psi / rho / theta / omega slots of
// the hypothesis inequalities.
struct GrowthFunction {
  GrowthFamily family = GrowthFamily::Constant;
  double a = 0.0;  // exponent (lambda, alpha, or log-family a)
  double b = 0.0;  // log-family b
  double c = 1.0;  // Constant value / overall scale
  std::vector<double> tab_r;  // Tabulated: strictly ascending abscissae
  std::vector<double> tab_v;  // Tabulated: positive values
};

GrowthFunction growth_power_neg(double lambda);
GrowthFunction growth_power_pos(double alpha);
GrowthFunction growth_power_log(double a, double b);
GrowthFunction growth_constant(double c);
GrowthFunction growth_tabulated(std::vector<double> r, std::vector<double> v);
// pointwise scaled copy c * g (used by homogeneity audits)
GrowthFunction growth_scale(const GrowthFunction& g, double c);

double eval_growth(const GrowthFunction& g, double r);

// sup of g over (0, r]: exact for monotone power families, fine log-grid
// scan otherwise (the left factor of the MAXIMAL pairing).
double sup_growth_head(const GrowthFunction& g, double r);

// Class membership per the almost-monotonicity scans, pairwise over r_grid.
ClassReport classify_growth(const GrowthFunction& g, int dim,
                            const std::vector<double>& r_grid,
                            double cap = 1e6);

// Decay condition int_r^inf phi(t)/t dt <= C phi(r). Analytic for powers,
// octave quadrature otherwise; divergent tails report holds=false.
ConditionReport check_decay_integral(const GrowthFunction& phi,
                                     const std::vector<double>& r_grid);

// rho*(r) = int_0^r rho(t)/t dt; analytic head for power families.
double rho_star(const GrowthFunction& rho, double r);

// int_r^inf rho(t) f(t) / t dt with f supplied (used by pairing integrals);
// exact for pure power integrands.
double growth_tail_integral(const GrowthFunction& g,
                            const std::function<double(double)>& f, double r);

// Admissibility of rho: finite head integral, octave sup bound,
// rho(r)/r^{n-eps} almost decreasing, and the local continuity bound.
ConditionReport check_rho_admissible(const GrowthFunction& rho, int dim,
                                     double eps,
                                     const std::vector<double>& r_grid,
                                     double K1 = 0.5, double K2 = 2.0);

enum class PairingKind { CZ, CZ_NEC, FRACT, MAXIMAL, HOLDER, IPVP };

struct PairingInput {
  const YoungFunction* Phi = nullptr;
  const YoungFunction* Psi = nullptr;
  const YoungFunction* Theta = nullptr;   // FRACT
  const YoungFunction* Phi0 = nullptr;    // HOLDER
  const GrowthFunction* vp = nullptr;
  const GrowthFunction* psi = nullptr;
  const GrowthFunction* theta_g = nullptr;  // HOLDER
  const GrowthFunction* rho = nullptr;      // FRACT / MAXIMAL
  std::vector<double> t_grid;               // HOLDER second variable
};

// The hypothesis inequalities of the boundedness theorems, scanned over
// r_grid. best_constant = sup LHS/RHS; FRACT carries two sub-verdicts.
ConditionReport check_pairing(PairingKind kind, const PairingInput& in,
                              const std::vector<double>& r_grid);

// int_r^inf Phi^{-1}(vp(t))/t dt, exact for power slots.
double tail_phi_inverse(const YoungFunction& Phi, const GrowthFunction& vp,
                        double r);
// int_r^inf rho(t) Phi^{-1}(vp(t))/t dt.
double tail_rho_phi_inverse(const GrowthFunction& rho, const YoungFunction& Phi,
                            const GrowthFunction& vp, double r);
// int_r^inf psi(t)/t ( int_t^inf [rho(u)] Phi^{-1}(vp(u))/u du ) dt;
// rho == nullptr drops the factor.
double tail_psi_nested(const GrowthFunction& psi, const GrowthFunction* rho,
                       const YoungFunction& Phi, const GrowthFunction& vp,
                       double r);

}  // namespace olab
