#ifndef FOURTERM_VERIFY_HPP
#define FOURTERM_VERIFY_HPP

#include <string>
#include <vector>

namespace fourterm::verify {

struct Tolerances {
    double phi_identity = 1e-12;    // relative residual of z*phi = (1+4phi/27)^3
    double phi_dual = 1e-10;        // |direct - homotopy|
    double tail = 2e-6;             // |z phi(z) - 1| at |z| = 1e6
    double laurent = 1e-6;          // fitted z^{-2} coefficient agreement
    double normalization = 1e-8;    // |total mass - 1|
    double jump = 1e-4;             // relative, Richardson vs closed form
    double slope = 0.05;            // branch-point exponent fits
    double stieltjes = 1e-7;        // absolute
    double profile = 1e-6;          // numeric profile average vs g, h
    double qn = 1e-12;              // relative, Q_n(0) closed form vs recurrence
    double ks_const = 0.05;         // D_400, constant alpha = 1
    double ks_slack = 0.20;         // monotonicity slack for D_100 >= D_200 >= D_400
    double ks_laguerre = 0.07;      // D_300 vs nu_1^L
    double ks_macdonald = 0.07;     // D_300 vs nu_1^M
    double ks_golden = 1e-3;        // absolute agreement with the recorded golden D values
    double ratio_top = 1e-3;        // e_400
    double alpha0 = 1e-14;          // zero family ratio exactness
    double zero_oracle = 1e-10;     // cascade vs grid isolation, n <= 12
    double scaling = 1e-10;         // zeros(alpha) = alpha * zeros(1)
    double moments = 1e-8;          // quadrature vs Laurent-series moments
    unsigned long long seed = 20260809;
    std::string golden_path;        // optional ks golden report (json)
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double achieved = 0.0;
    double required = 0.0;
    std::string note;
};

// All checks, in acceptance order. `only` filters by substring on the name
// (empty = everything).
std::vector<CheckResult> run_checks(const Tolerances& tol,
                                    const std::vector<std::string>& only = {});

// Applies "KEY=VALUE" overrides (keys: identity, dual, tail, laurent, norm,
// jump, slope, stieltjes, profile, qn, ks, ks-slack, ks-laguerre,
// ks-macdonald, ks-golden, ratio-top, alpha0, zero-oracle, scaling, moments,
// seed). Throws ValidationError on unknown keys.
void apply_tolerance_override(Tolerances& tol, const std::string& key_value);

std::vector<std::string> check_names();

}  // namespace fourterm::verify

#endif
