#ifndef FOURTERM_POLYCORE_HPP
#define FOURTERM_POLYCORE_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "fourterm/coeffs.hpp"

namespace fourterm::polycore {

// Sign + log-magnitude representation; keeps the recurrence finite for
// n <= 1e5 at |x| <= 1e6 where raw doubles overflow near n ~ 200.
struct ScaledValue {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    static ScaledValue zero() { return {}; }
    static ScaledValue one() { return {1, 0.0}; }
    static ScaledValue from_double(double v);
    double to_double() const;  // saturates to +-inf / 0 outside double range

    bool is_zero() const { return sign == 0; }

    friend ScaledValue operator*(const ScaledValue& a, const ScaledValue& b);
    static ScaledValue sum(const ScaledValue& a, const ScaledValue& b);
};

// signed quotient a/b as a double; b must be nonzero
double quotient(const ScaledValue& a, const ScaledValue& b);

// Rescaled coefficients b_k, c_k, d_k for k = 0..n-1, precomputed once so the
// cascade can reuse one table across all its levels.
struct CoeffTable {
    std::vector<double> b, c, d;
    int N = 1;
    int size() const { return static_cast<int>(b.size()); }
    static CoeffTable build(const coeffs::CoefficientFamily& fam, int n, int N);
};

ScaledValue eval_P(const CoeffTable& tab, int n, double x);
ScaledValue eval_P(const coeffs::CoefficientFamily& fam, int n, int N, double x);

struct ValueAndDerivative {
    ScaledValue p;
    ScaledValue dp;
};
ValueAndDerivative eval_P_and_dP(const CoeffTable& tab, int n, double x);
ValueAndDerivative eval_P_and_dP(const coeffs::CoefficientFamily& fam, int n, int N, double x);

struct RatioState {
    std::complex<double> r_k;    // P_k / P_{k-1} at z, k = index
    std::complex<double> r_km1;  // P_{k-1} / P_{k-2}
    int k = 0;
};

inline constexpr double kDefaultPoleFloor = 1e-280;

// Runs the ratio recurrence r_{k+1} = z - b_k - c_k/r_k - d_k/(r_k r_{k-1})
// up to r_{n+1} = P_{n+1}/P_n. Throws NearPoleError when an iterate's modulus
// drops below pole_floor.
RatioState eval_ratio_seq(const CoeffTable& tab, int n, std::complex<double> z,
                          double pole_floor = kDefaultPoleFloor);
RatioState eval_ratio_seq(const coeffs::CoefficientFamily& fam, int n, int N,
                          std::complex<double> z, double pole_floor = kDefaultPoleFloor);

// P_n/P_{n+1}(z) = 1 / r_{n+1}
std::complex<double> ratio_P_over_Pnext(const coeffs::CoefficientFamily& fam, int n, int N,
                                        std::complex<double> z,
                                        double pole_floor = kDefaultPoleFloor);

// (1/n) P_n'(z)/P_n(z) via the ratio-normalized derivative recurrence.
std::complex<double> log_derivative_ratio(const coeffs::CoefficientFamily& fam, int n, int N,
                                          std::complex<double> z,
                                          double pole_floor = kDefaultPoleFloor);

// log P_n(z) (principal branch accumulated along the ratio sequence);
// exp of the real part matches eval_P's log_mag for real z off the zeros.
std::complex<double> log_P_from_ratios(const CoeffTable& tab, int n, std::complex<double> z,
                                       double pole_floor = kDefaultPoleFloor);

}  // namespace fourterm::polycore

#endif
