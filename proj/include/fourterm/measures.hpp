#ifndef FOURTERM_MEASURES_HPP
#define FOURTERM_MEASURES_HPP

#include <complex>
#include <iosfwd>
#include <optional>

#include "fourterm/coeffs.hpp"
#include "fourterm/zeros.hpp"

namespace fourterm::measures {

double upsilon_unit_density(double x);
double upsilon_alpha_density(double alpha, double x);
// g and h on (0,1); 0 outside
double g_kernel(double y);
double h_kernel(double y);
double nu_L_density(double t, double x);  // support (0, 27t/8)
double nu_M_density(double t, double x);  // support (0, 27t^2/4)
// профile-averaged density (1/t) int upsilon_{[0,alpha(s)]}'(x) ds over
// {s <= t : alpha(s) >= x}
double nu_profile_density(const coeffs::LimitProfile& profile, double t, double x);

class LimitMeasure {
  public:
    enum class Kind { UpsilonUnit, UpsilonAlpha, NuProfile, NuL, NuM, Dirac0 };

    static LimitMeasure upsilon_unit();
    static LimitMeasure upsilon_alpha(double alpha);  // alpha > 0; use dirac0() for alpha = 0
    static LimitMeasure nu_profile(coeffs::LimitProfile profile, double t);
    static LimitMeasure nu_L(double t);
    static LimitMeasure nu_M(double t);
    static LimitMeasure dirac0();

    Kind kind() const { return kind_; }
    bool is_dirac() const { return kind_ == Kind::Dirac0; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    double density(double x) const;  // +inf sentinel at hard-edge endpoints
    double cdf(double x) const;      // abs tol 1e-9; ToleranceFailure on non-convergence
    // total integral of the density by quadrature (independent of cdf's
    // complementary construction); equals 1 within tolerance for valid kinds
    double total_mass() const;
    double moment(int k) const;
    std::complex<double> cauchy(std::complex<double> z) const;  // int d mu(x)/(z - x)

    std::string name() const;

  private:
    LimitMeasure() = default;
    Kind kind_ = Kind::UpsilonUnit;
    double alpha_ = 1.0;
    double t_ = 1.0;
    double lo_ = 0.0;
    double hi_ = 1.0;
    std::optional<coeffs::LimitProfile> profile_;

    double integrate_left(double from_u, double to_u,
                          const std::function<double(double)>& weight) const;
    double integrate_right(double from_v, double to_v,
                           const std::function<double(double)>& weight) const;
};

// k-th moment of upsilon_{[0,1]} by singularity-aware quadrature
double moments_upsilon(int k);

struct KSReport {
    int n = 0;
    double statistic = 0.0;
    double location = 0.0;
};

KSReport ks_statistic(const zeros::EmpiricalMeasure& emp, const LimitMeasure& limit);

// CSV rows (x, density, cdf) on an interior grid
void write_density_csv(std::ostream& out, const LimitMeasure& m, int npoints);

}  // namespace fourterm::measures

#endif
