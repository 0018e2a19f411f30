#pragma once

#include <functional>

namespace olab {

// Adaptive Simpson on [a, b], relative tolerance `tol`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-9);

// Improper tail integral of f over [a, inf), integrated octave by octave
// ([a,2a], [2a,4a], ...) until the increments are negligible. Returns inf
// when no convergence is reached within the octave budget; *truncation_radius
// (optional) receives the last abscissa actually integrated to.
double tail_integral(const std::function<double(double)>& f, double a,
                     double tol = 1e-11, double* truncation_radius = nullptr);

// Improper head integral of g(t)/t over (0, r], via t = r e^{-u}. Returns
// inf when divergent at 0.
double head_integral_over_t(const std::function<double(double)>& g, double r,
                            double tol = 1e-11);

}  // namespace olab
