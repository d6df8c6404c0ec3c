#ifndef FOURTERM_COEFFS_HPP
#define FOURTERM_COEFFS_HPP

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fourterm/errors.hpp"

namespace fourterm::coeffs {

// Continuous limit profile alpha(t) on [0, horizon], together with the
// endpoints t_-(x) <= t_+(x) of the interval {s >= 0 : alpha(s) >= x}.
class LimitProfile {
  public:
    static constexpr double kDefaultHorizon = 4.0;

    static LimitProfile constant(double alpha);
    static LimitProfile linear_slope(double slope);    // alpha(t) = slope * t
    static LimitProfile quadratic(double coefficient); // alpha(t) = coefficient * t^2
    // Piecewise-linear table; t strictly increasing, alpha >= 0.
    static LimitProfile table(std::vector<std::pair<double, double>> points);

    double alpha(double t) const;
    double beta(double t) const { return 4.0 * alpha(t) / 27.0; }

    double horizon() const { return horizon_; }
    void set_horizon(double t_star);

    // inf / sup of {s in [0, horizon] : alpha(s) >= x}. Both +inf when the
    // set is empty; t_plus is +inf when the set reaches the horizon.
    double t_minus(double x) const;
    double t_plus(double x) const;
    // Grid scan: {s : alpha(s) >= x} has no gap inside [0, horizon].
    bool has_interval_property(double x) const;

    double max_alpha(double t) const;  // sup of alpha over [0, min(t, horizon)]

    static double infinity() { return std::numeric_limits<double>::infinity(); }

  private:
    enum class Kind { Constant, Linear, Quadratic, Table };
    Kind kind_ = Kind::Constant;
    double param_ = 0.0;
    std::vector<std::pair<double, double>> table_;
    double horizon_ = kDefaultHorizon;
};

// Supplier of the recurrence coefficients (b_n, c_n, d_n) in the rescaled
// coordinates the whole pipeline works in: b = 3 beta(n/N), c = 3 beta^2,
// d = beta^3 with beta(t) = 4 alpha(t) / 27. The original-coordinate
// coefficients carry the extra N^p factors recorded by scale_exponent.
class CoefficientFamily {
  public:
    CoefficientFamily(std::string name, LimitProfile profile, double scale_exponent);

    const std::string& name() const { return name_; }
    const LimitProfile& profile() const { return profile_; }
    double scale_exponent() const { return scale_exponent_; }

    double alpha(double t) const { return profile_.alpha(t); }
    double beta(double t) const { return profile_.beta(t); }

    // Rescaled coefficients at index n with scaling parameter N.
    double b(int n, int N) const;
    double c(int n, int N) const;
    double d(int n, int N) const;

    // Original-coordinate coefficients: b_raw = b * N^p, c_raw = c * N^{2p},
    // d_raw = d * N^{3p}.
    double b_raw(int n, int N) const;
    double c_raw(int n, int N) const;
    double d_raw(int n, int N) const;

    // N^{scale_exponent}: multiply rescaled zeros by this to return to
    // original coordinates.
    double scale_factor(int N) const;

    bool is_identically_zero() const;

  private:
    std::string name_;
    LimitProfile profile_;
    double scale_exponent_;
};

CoefficientFamily make_constant_family(double alpha);
CoefficientFamily make_jacobi_pineiro_family();
CoefficientFamily make_laguerre1_family();
CoefficientFamily make_macdonald_family();
CoefficientFamily make_custom_family(LimitProfile profile, std::string name = "custom");

// Family descriptor file:
//   {"name": str,
//    "kind": "constant"|"jacobi_pineiro"|"laguerre1"|"macdonald"|"custom",
//    "alpha": number | {"grid": [[t, alpha], ...], "interp": "linear"},
//    "scale_exponent": number}
// Throws ValidationError on malformed descriptors.
CoefficientFamily load_family_json(const std::string& json_text);
CoefficientFamily load_family_file(const std::string& path);

}  // namespace fourterm::coeffs

#endif
