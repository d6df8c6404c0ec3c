#ifndef FOURTERM_QUADRATURE_HPP
#define FOURTERM_QUADRATURE_HPP

#include <functional>

namespace fourterm::quadrature {

// Adaptive Gauss-Kronrod integral of f over [a, b]. Throws ToleranceFailure
// when the error estimate exceeds abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

// Same, but returns the achieved error estimate instead of throwing.
double integrate_estimate(const std::function<double(double)>& f, double a, double b,
                          double* error_estimate);

}  // namespace fourterm::quadrature

#endif
