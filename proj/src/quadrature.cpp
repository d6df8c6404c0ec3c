#include "fourterm/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fourterm/errors.hpp"

namespace fourterm::quadrature {

namespace {
using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
}

double integrate_estimate(const std::function<double(double)>& f, double a, double b,
                          double* error_estimate) {
    if (a == b) {
        if (error_estimate) *error_estimate = 0.0;
        return 0.0;
    }
    double err = 0.0;
    double value = Rule::integrate(f, a, b, 12, 1e-12, &err);
    if (error_estimate) *error_estimate = err;
    return value;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    double err = 0.0;
    double value = integrate_estimate(f, a, b, &err);
    if (err > abs_tol)
        throw ToleranceFailure("quadrature error estimate above tolerance", err);
    return value;
}

}  // namespace fourterm::quadrature
