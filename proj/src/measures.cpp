#include "fourterm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>

#include "fourterm/errors.hpp"
#include "fourterm/quadrature.hpp"

namespace fourterm::measures {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt3 = std::numbers::sqrt3;
const double kPi = std::numbers::pi;

// 1 - sqrt(1-x) without cancellation for small x
inline double one_minus_sqrt1m(double x) { return x / (1.0 + std::sqrt(1.0 - x)); }

inline double cbrt_pos(double v) { return std::cbrt(v); }

}  // namespace

double upsilon_unit_density(double x) {
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x == 0.0 || x == 1.0) return kInf;
    double s = std::sqrt(1.0 - x);
    double vp = cbrt_pos(1.0 + s);
    double vm = cbrt_pos(one_minus_sqrt1m(x));
    return kSqrt3 / (4.0 * kPi) * (vp + vm) / (std::pow(x, 2.0 / 3.0) * s);
}

double upsilon_alpha_density(double alpha, double x) {
    if (!(alpha > 0.0)) throw ValidationError("upsilon_alpha_density needs alpha > 0");
    return upsilon_unit_density(x / alpha) / alpha;
}

double g_kernel(double y) {
    if (y < 0.0 || y > 1.0) return 0.0;
    if (y == 0.0) return kInf;
    double w = std::sqrt(1.0 - y);
    double a = cbrt_pos(one_minus_sqrt1m(y));  // (1-w)^{1/3}
    double b = cbrt_pos(1.0 + w);
    // (1+3w)a - (1-3w)b = (a - b) + 3w(a + b), with a - b stabilized through
    // a^3 - b^3 = -2w
    double amb = -2.0 * w / (a * a + a * b + b * b);
    double num = amb + 3.0 * w * (a + b);
    return 3.0 * kSqrt3 / (16.0 * kPi) * num / std::pow(y, 2.0 / 3.0);
}

double h_kernel(double y) {
    if (y < 0.0 || y > 1.0) return 0.0;
    if (y == 0.0) return kInf;
    double w = std::sqrt(1.0 - y);
    double a = cbrt_pos(one_minus_sqrt1m(y));
    double b = cbrt_pos(1.0 + w);
    double bma = 2.0 * w / (a * a + a * b + b * b);  // b - a
    return 3.0 * kSqrt3 / (4.0 * kPi) * bma / std::pow(y, 2.0 / 3.0);
}

double nu_L_density(double t, double x) {
    if (!(t > 0.0)) throw ValidationError("nu_L_density needs t > 0");
    double hi = 27.0 * t / 8.0;
    if (x < 0.0 || x > hi) return 0.0;
    if (x == 0.0) return kInf;
    return 8.0 / (27.0 * t) * g_kernel(8.0 * x / (27.0 * t));
}

double nu_M_density(double t, double x) {
    if (!(t > 0.0)) throw ValidationError("nu_M_density needs t > 0");
    double hi = 27.0 * t * t / 4.0;
    if (x < 0.0 || x > hi) return 0.0;
    if (x == 0.0) return kInf;
    return 4.0 / (27.0 * t * t) * h_kernel(4.0 * x / (27.0 * t * t));
}

double nu_profile_density(const coeffs::LimitProfile& profile, double t, double x) {
    if (!(t > 0.0)) throw ValidationError("nu_profile_density needs t > 0");
    if (x <= 0.0) return x == 0.0 ? kInf : 0.0;
    if (!profile.has_interval_property(x))
        throw ValidationError("profile violates the interval property");
    double lo = std::min(t, profile.t_minus(x));
    double hi = std::min(t, profile.t_plus(x));
    if (!(lo < hi)) return 0.0;
    auto f = [&](double s) {
        double a = profile.alpha(s);
        if (!(a > 0.0) || x >= a) return 0.0;
        return upsilon_unit_density(x / a) / a;
    };
    // quadratic substitutions at both s-ends; the end where alpha(s) = x has
    // an inverse-square-root singularity
    double mid = 0.5 * (lo + hi);
    double wl = std::sqrt(mid - lo), wr = std::sqrt(hi - mid);
    double left = quadrature::integrate(
        [&](double w) { return f(lo + w * w) * 2.0 * w; }, 0.0, wl, 1e-9);
    double right = quadrature::integrate(
        [&](double v) { return f(hi - v * v) * 2.0 * v; }, 0.0, wr, 1e-9);
    return (left + right) / t;
}

LimitMeasure LimitMeasure::upsilon_unit() {
    LimitMeasure m;
    m.kind_ = Kind::UpsilonUnit;
    m.lo_ = 0.0;
    m.hi_ = 1.0;
    return m;
}

LimitMeasure LimitMeasure::upsilon_alpha(double alpha) {
    if (!(alpha > 0.0)) throw ValidationError("upsilon_alpha needs alpha > 0");
    LimitMeasure m;
    m.kind_ = Kind::UpsilonAlpha;
    m.alpha_ = alpha;
    m.lo_ = 0.0;
    m.hi_ = alpha;
    return m;
}

LimitMeasure LimitMeasure::nu_profile(coeffs::LimitProfile profile, double t) {
    if (!(t > 0.0)) throw ValidationError("nu_profile needs t > 0");
    if (t > profile.horizon()) throw ValidationError("t beyond the profile horizon");
    LimitMeasure m;
    m.kind_ = Kind::NuProfile;
    m.t_ = t;
    m.lo_ = 0.0;
    m.hi_ = profile.max_alpha(t);
    if (!(m.hi_ > 0.0)) return dirac0();
    for (int i = 1; i < 32; ++i)
        if (!profile.has_interval_property(m.hi_ * i / 32.0))
            throw ValidationError("profile violates the interval property");
    m.profile_ = std::move(profile);
    return m;
}

LimitMeasure LimitMeasure::nu_L(double t) {
    if (!(t > 0.0)) throw ValidationError("nu_L needs t > 0");
    LimitMeasure m;
    m.kind_ = Kind::NuL;
    m.t_ = t;
    m.lo_ = 0.0;
    m.hi_ = 27.0 * t / 8.0;
    return m;
}

LimitMeasure LimitMeasure::nu_M(double t) {
    if (!(t > 0.0)) throw ValidationError("nu_M needs t > 0");
    LimitMeasure m;
    m.kind_ = Kind::NuM;
    m.t_ = t;
    m.lo_ = 0.0;
    m.hi_ = 27.0 * t * t / 4.0;
    return m;
}

LimitMeasure LimitMeasure::dirac0() {
    LimitMeasure m;
    m.kind_ = Kind::Dirac0;
    m.lo_ = m.hi_ = 0.0;
    return m;
}

double LimitMeasure::density(double x) const {
    switch (kind_) {
        case Kind::UpsilonUnit: return upsilon_unit_density(x);
        case Kind::UpsilonAlpha: return upsilon_alpha_density(alpha_, x);
        case Kind::NuProfile: return nu_profile_density(*profile_, t_, x);
        case Kind::NuL: return nu_L_density(t_, x);
        case Kind::NuM: return nu_M_density(t_, x);
        case Kind::Dirac0: return x == 0.0 ? kInf : 0.0;
    }
    return 0.0;
}

// int_{u in [from_u, to_u]} density(lo + u^3) 3u^2 weight(lo + u^3) du
double LimitMeasure::integrate_left(double from_u, double to_u,
                                    const std::function<double(double)>& weight) const {
    return quadrature::integrate(
        [&](double u) {
            double x = lo_ + u * u * u;
            return density(x) * 3.0 * u * u * weight(x);
        },
        from_u, to_u, 1e-9);
}

double LimitMeasure::integrate_right(double from_v, double to_v,
                                     const std::function<double(double)>& weight) const {
    return quadrature::integrate(
        [&](double v) {
            double x = hi_ - v * v;
            return density(x) * 2.0 * v * weight(x);
        },
        from_v, to_v, 1e-9);
}

double LimitMeasure::cdf(double x) const {
    if (kind_ == Kind::Dirac0) return x >= 0.0 ? 1.0 : 0.0;
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    auto unit = [](double) { return 1.0; };
    double mid = 0.5 * (lo_ + hi_);
    if (x <= mid) return integrate_left(0.0, std::cbrt(x - lo_), unit);
    return 1.0 - integrate_right(0.0, std::sqrt(hi_ - x), unit);
}

double LimitMeasure::total_mass() const {
    if (kind_ == Kind::Dirac0) return 1.0;
    auto unit = [](double) { return 1.0; };
    double mid = 0.5 * (lo_ + hi_);
    return integrate_left(0.0, std::cbrt(mid - lo_), unit) +
           integrate_right(0.0, std::sqrt(hi_ - mid), unit);
}

double LimitMeasure::moment(int k) const {
    if (k < 0) throw ValidationError("moment order must be >= 0");
    if (kind_ == Kind::Dirac0) return k == 0 ? 1.0 : 0.0;
    auto wk = [k](double x) { return std::pow(x, k); };
    double mid = 0.5 * (lo_ + hi_);
    return integrate_left(0.0, std::cbrt(mid - lo_), wk) +
           integrate_right(0.0, std::sqrt(hi_ - mid), wk);
}

std::complex<double> LimitMeasure::cauchy(std::complex<double> z) const {
    if (kind_ == Kind::Dirac0) return 1.0 / z;
    double mid = 0.5 * (lo_ + hi_);
    double ul = std::cbrt(mid - lo_), vr = std::sqrt(hi_ - mid);
    auto component = [&](auto part) {
        double left = integrate_left(0.0, ul, [&](double x) { return part(1.0 / (z - x)); });
        double right = integrate_right(0.0, vr, [&](double x) { return part(1.0 / (z - x)); });
        return left + right;
    };
    double re = component([](std::complex<double> w) { return w.real(); });
    double im = component([](std::complex<double> w) { return w.imag(); });
    return {re, im};
}

std::string LimitMeasure::name() const {
    char buf[64];
    switch (kind_) {
        case Kind::UpsilonUnit: return "upsilon[0,1]";
        case Kind::UpsilonAlpha:
            std::snprintf(buf, sizeof buf, "upsilon[0,%g]", alpha_);
            return buf;
        case Kind::NuProfile:
            std::snprintf(buf, sizeof buf, "nu_t(profile), t=%g", t_);
            return buf;
        case Kind::NuL:
            std::snprintf(buf, sizeof buf, "nu_L, t=%g", t_);
            return buf;
        case Kind::NuM:
            std::snprintf(buf, sizeof buf, "nu_M, t=%g", t_);
            return buf;
        case Kind::Dirac0: return "dirac0";
    }
    return "?";
}

double moments_upsilon(int k) {
    if (k < 0 || k > 8) throw ValidationError("moments_upsilon supports k in 0..8");
    return LimitMeasure::upsilon_unit().moment(k);
}

KSReport ks_statistic(const zeros::EmpiricalMeasure& emp, const LimitMeasure& limit) {
    if (emp.atoms.empty()) throw ValidationError("empirical measure is empty");
    KSReport rep;
    rep.n = emp.n();
    const double n = static_cast<double>(rep.n);
    for (std::size_t j = 0; j < emp.atoms.size(); ++j) {
        double F = limit.cdf(emp.atoms[j]);
        double d = std::max(std::fabs(F - (j + 1) / n), std::fabs(F - j / n));
        if (d > rep.statistic) {
            rep.statistic = d;
            rep.location = emp.atoms[j];
        }
    }
    return rep;
}

void write_density_csv(std::ostream& out, const LimitMeasure& m, int npoints) {
    out << "x,density,cdf\n";
    char buf[160];
    if (m.is_dirac()) {
        out << "0,inf,1\n";
        return;
    }
    for (int i = 1; i <= npoints; ++i) {
        double x = m.lo() + (m.hi() - m.lo()) * i / (npoints + 1);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, m.density(x), m.cdf(x));
        out << buf;
    }
}

}  // namespace fourterm::measures
