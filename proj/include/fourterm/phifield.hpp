#ifndef FOURTERM_PHIFIELD_HPP
#define FOURTERM_PHIFIELD_HPP

#include <complex>
#include <span>
#include <vector>

#include "fourterm/coeffs.hpp"

namespace fourterm::phifield {

using Complex = std::complex<double>;

// Branch rules: sqrt with theta in [0, 2pi); cube root with theta in (-pi, pi].
Complex sqrt_02pi(Complex w);
Complex cbrt_branch(Complex w);

double dist_to_cut(Complex z);  // distance to the segment [0,1]

struct PhiEval {
    Complex z;
    Complex phi;
    Complex phi_log_deriv;  // phi'/phi
};

// Direct branch formula, Newton-polished on z*phi = (1 + 4 phi/27)^3.
// Throws OnCutError within 1e-14 of [0,1].
Complex phi_value(Complex z);
PhiEval phi(Complex z);
Complex phi_log_derivative(Complex z);

// Homotopy continuation of the cubic root from the real anchor 1e4, the
// independent second route for phi. Throws AmbiguityError when root tracking
// cannot separate nearly coincident roots.
Complex phi_cubic_oracle(Complex z);

// All three roots of q3 w^3 + q2 w^2 + q1 w + q0 = 0.
std::array<Complex, 3> solve_cubic(Complex q3, Complex q2, Complex q1, Complex q0);

// Jump of phi'/phi across (0,1): purely imaginary, equals 2 pi i times the
// upsilon_{[0,1]} density.
Complex jump_m(double x);

struct GrowthReport {
    double slope_at_0 = 0.0;   // expect -2/3
    double slope_at_1 = 0.0;   // expect -1/2
    double slope_far = 0.0;    // expect -1
};
GrowthReport branch_point_growth_check();

struct StieltjesRow {
    Complex z;
    Complex lhs;  // phi'/phi
    Complex rhs;  // -int (z-x)^{-1} d upsilon
    double abs_err;
};
struct StieltjesReport {
    double max_abs_err = 0.0;
    std::vector<StieltjesRow> rows;
};
StieltjesReport stieltjes_identity_check(std::span<const Complex> grid);

struct RatioRow {
    Complex z;
    int n;
    double err;  // |P_n/P_{n+1}(z) - limit(z)|
};
struct RatioReport {
    std::vector<RatioRow> rows;
    // e_n nonincreasing along the schedule, ties below saturation_floor allowed
    bool decreasing = true;
    double top_err = 0.0;  // max over z of the last-n error
    double saturation_floor = 1e-12;
};
RatioReport ratio_asymptotics_check(const coeffs::CoefficientFamily& fam,
                                    std::span<const Complex> z_grid,
                                    std::span<const int> n_schedule, int N,
                                    bool validate_first = true);

// Moments of upsilon_{[0,1]} from the Laurent expansion of -phi'/phi at
// infinity, derived coefficient-wise from the cubic. Returns m_0..m_kmax.
std::vector<double> upsilon_moments_series(int kmax);

}  // namespace fourterm::phifield

#endif
