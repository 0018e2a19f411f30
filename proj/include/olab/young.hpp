#pragma once

#include <array>
#include <memory>
#include <vector>

#include "olab/report.hpp"

namespace olab {

enum class YoungFamily {
  Power,                  // t^p, p >= 1
  PowerLog,               // t^p (log(e+t))^q, rectified to a convex minorant when q < 0
  ExpMinusOne,            // e^t - 1
  LinearCap,              // t on [0,1], inf beyond
  PiecewiseLinearConvex,  // breakpoints with nondecreasing slopes, optional jump to inf
  Scaled,                 // t -> inner(c*t), c > 0
};

// A Young function: increasing, convex on [0, b_phi), Phi(0)=0, with the
// extended-value conventions of the generalized calculus. Immutable value
// type; all operations on it are pure.
struct YoungFunction {
  YoungFamily family = YoungFamily::Power;
  double p = 1.0;      // Power / PowerLog exponent
  double q = 0.0;      // PowerLog log-exponent
  double scale = 1.0;  // Scaled factor c
  std::shared_ptr<const YoungFunction> inner;  // Scaled
  // PiecewiseLinearConvex: ascending (t, Phi(t)) with nondecreasing slopes,
  // first point (0,0). Beyond the last breakpoint the graph continues with
  // `final_slope`; final_slope == inf means Phi jumps to inf there.
  std::vector<std::array<double, 2>> points;
  double final_slope = 0.0;
  // Convex-minorant table for PowerLog with q < 0 (hull vertices, ascending t).
  std::shared_ptr<const std::vector<std::array<double, 2>>> hull;

  double a_phi() const;  // sup{t : Phi(t) = 0}
  double b_phi() const;  // inf{t : Phi(t) = inf}
};

YoungFunction young_power(double p);
YoungFunction young_power_log(double p, double q);
YoungFunction young_exp_minus_one();
YoungFunction young_linear_cap();
// `final_slope` defaults to extending with the last breakpoint slope.
YoungFunction young_piecewise(std::vector<std::array<double, 2>> pts,
                              double final_slope = -1.0);
YoungFunction young_scaled(YoungFunction inner, double c);

// If phi is Power or nested Scaled(Power), returns {p, c} with phi(t) = (c t)^p.
struct PowerForm {
  double p;
  double c;
};
bool as_power(const YoungFunction& phi, PowerForm* out);

// Extended evaluation: Phi(0) = 0, Phi(inf) = inf, values in [0, inf].
double eval_young(const YoungFunction& phi, double t);

// O'Neil generalized inverse: inf{t >= 0 : Phi(t) > u}, inverse(inf) = inf.
// Finite, nondecreasing and right continuous on [0, inf).
double inverse_young(const YoungFunction& phi, double u);

// Legendre-type complementary function sup{tu - Phi(u)}. Closed form for
// Power and Scaled chains, LinearCap <-> max(t-1, 0), identity <-> 0/inf cap,
// exact breakpoint transform for PiecewiseLinearConvex. Throws for families
// without a representation in the closed algebra (PowerLog, ExpMinusOne).
YoungFunction complementary(const YoungFunction& phi);

// Phi_theta(t) = Phi(t^theta), theta in (0,1]. Power(p) -> Power(p*theta),
// requires p*theta >= 1; defined for Power/Scaled-Power chains only.
YoungFunction power_compose(const YoungFunction& phi, double theta);

// Delta_2: Phi(2t) <= C Phi(t) for all t. Scans the grid; 0/0 counts as 1,
// a jump 0 -> positive or finite -> inf as unbounded.
ConditionReport check_delta2(const YoungFunction& phi,
                             const std::vector<double>& t_grid);

// Nabla_2: Phi(t) <= Phi(kt)/(2k) for some k > 1 and all t. best_constant is
// the smallest admissible k in k_grid.
ConditionReport check_nabla2(const YoungFunction& phi,
                             const std::vector<double>& t_grid,
                             const std::vector<double>& k_grid);

// Geometric grid {base * ratio^i : i = 0..count-1}.
std::vector<double> geometric_grid(double base, double ratio, int count);
// Default hypothesis scan grid {2^k : k = -20..20}.
std::vector<double> default_scan_grid();

}  // namespace olab
