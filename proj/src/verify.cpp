#include "fourterm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include "fourterm/coeffs.hpp"
#include "fourterm/errors.hpp"
#include "fourterm/measures.hpp"
#include "fourterm/phifield.hpp"
#include "fourterm/polycore.hpp"
#include "fourterm/toeplitz.hpp"
#include "fourterm/zeros.hpp"

namespace fourterm::verify {

namespace {

using Complex = std::complex<double>;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- seeded z-grids ------------------------------------------------------

std::vector<Complex> random_offcut_grid(unsigned long long seed, int count, double min_dist,
                                        double max_dist, double box) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ure(-box - 1.0, box + 2.0);
    std::uniform_real_distribution<double> uim(-box - 1.0, box + 1.0);
    std::vector<Complex> grid;
    while (static_cast<int>(grid.size()) < count) {
        Complex z(ure(rng), uim(rng));
        double d = phifield::dist_to_cut(z);
        if (d >= min_dist && d <= max_dist) grid.push_back(z);
    }
    return grid;
}

// ---- high-precision ratio route (criterion: strict decrease) -------------

using MpFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<800>>;

struct MpComplex {
    MpFloat re, im;
};

MpComplex mpc(double re, double im) { return {MpFloat(re), MpFloat(im)}; }

MpComplex operator+(const MpComplex& a, const MpComplex& b) { return {a.re + b.re, a.im + b.im}; }
MpComplex operator-(const MpComplex& a, const MpComplex& b) { return {a.re - b.re, a.im - b.im}; }
MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    MpFloat den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
MpComplex scale(const MpFloat& s, const MpComplex& a) { return {s * a.re, s * a.im}; }
MpFloat mp_abs(const MpComplex& a) { return sqrt(a.re * a.re + a.im * a.im); }

// the cubic q3 w^3 + q2 w^2 + (4/9 - z) w + 1 in mp arithmetic
MpComplex mp_phi(const MpComplex& z) {
    const MpFloat q3 = MpFloat(64) / 19683;
    const MpFloat q2 = MpFloat(16) / 243;
    const MpComplex q1z{MpFloat(4) / 9 - z.re, -z.im};
    const MpComplex one = mpc(1.0, 0.0);
    // seed with the double-precision branch-selected value
    Complex zd(static_cast<double>(z.re), static_cast<double>(z.im));
    Complex seed = phifield::phi_value(zd);
    MpComplex w = mpc(seed.real(), seed.imag());
    for (int i = 0; i < 24; ++i) {
        MpComplex q = ((scale(q3, w) + MpComplex{q2, 0}) * w + q1z) * w + one;
        MpComplex dq = (scale(3 * q3, w) + MpComplex{2 * q2, 0}) * w + q1z;
        MpComplex step = q / dq;
        w = w - step;
        if (mp_abs(step) < MpFloat("1e-795") * mp_abs(w)) break;
    }
    return w;
}

// P_n/P_{n+1} for the constant alpha=1 family at complex z, exact-route
std::vector<MpFloat> mp_ratio_errors(const MpComplex& z, const std::vector<int>& schedule) {
    const MpFloat b = MpFloat(4) / 9;
    const MpFloat c = MpFloat(16) / 243;
    const MpFloat d = MpFloat(64) / 19683;
    MpComplex phi = mp_phi(z);
    int n_max = *std::max_element(schedule.begin(), schedule.end());
    std::vector<MpFloat> errs;
    MpComplex r{z.re - b, z.im};  // r_1
    MpComplex rm1 = mpc(0.0, 0.0);
    const MpComplex one = mpc(1.0, 0.0);
    auto record_if_scheduled = [&](int n, const MpComplex& r_np1) {
        if (std::find(schedule.begin(), schedule.end(), n) != schedule.end())
            errs.push_back(mp_abs(one / r_np1 - phi));
    };
    record_if_scheduled(0, r);
    for (int k = 1; k <= n_max; ++k) {
        MpComplex next = MpComplex{z.re - b, z.im} - MpComplex{c, MpFloat(0)} / r;
        if (k >= 2) next = next - MpComplex{d, MpFloat(0)} / (r * rm1);
        rm1 = r;
        r = next;
        record_if_scheduled(k, r);
    }
    return errs;
}

// ---- grid-isolation zero oracle ------------------------------------------

std::vector<double> grid_isolation_zeros(const coeffs::CoefficientFamily& fam, int n, int N,
                                         int grid_points) {
    double R = zeros::spectral_bound(fam, n, N);
    auto tab = polycore::CoeffTable::build(fam, n, N);
    auto sign_at = [&](double x) { return polycore::eval_P(tab, n, x).sign; };
    std::vector<double> out;
    double prev_x = -R;
    int prev_s = sign_at(prev_x);
    for (int i = 1; i <= grid_points; ++i) {
        double x = -R + 2.0 * R * i / grid_points;
        int s = sign_at(x);
        if (s != 0 && prev_s != 0 && s != prev_s) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                int sm = sign_at(mid);
                if (sm == prev_s)
                    lo = mid;
                else
                    hi = mid;
                if (hi - lo < 1e-15 * std::max(1.0, std::fabs(mid))) break;
            }
            out.push_back(0.5 * (lo + hi));
        }
        if (s != 0) {
            prev_x = x;
            prev_s = s;
        }
    }
    return out;
}

// ---- the checks ----------------------------------------------------------

CheckResult check_phi_identity(const Tolerances& tol) {
    CheckResult r{"phi-identity", false, 0.0, tol.phi_identity, ""};
    auto grid = random_offcut_grid(tol.seed, 1000, 0.01, 100.0, 100.0);
    double worst = 0.0;
    for (Complex z : grid) {
        Complex w = phifield::phi_value(z);
        Complex lhs = z * w;
        Complex cube = 1.0 + 4.0 * w / 27.0;
        cube = cube * cube * cube;
        worst = std::max(worst, std::abs(lhs - cube) / std::max(1.0, std::abs(lhs)));
    }
    r.achieved = worst;
    r.pass = worst <= tol.phi_identity;
    r.note = "1000 seeded points, dist in [0.01, 100]";
    return r;
}

CheckResult check_phi_dual(const Tolerances& tol) {
    CheckResult r{"phi-dual", false, 0.0, tol.phi_dual, ""};
    auto grid = random_offcut_grid(tol.seed + 1, 1000, 0.1, 100.0, 100.0);
    double worst = 0.0;
    for (Complex z : grid)
        worst = std::max(worst, std::abs(phifield::phi_value(z) - phifield::phi_cubic_oracle(z)));
    r.achieved = worst;
    r.pass = worst <= tol.phi_dual;
    r.note = "direct branch formula vs cubic homotopy, 1000 points, dist >= 0.1";
    return r;
}

CheckResult check_phi_tail(const Tolerances& tol) {
    CheckResult r{"phi-tail", false, 0.0, tol.tail, ""};
    const double R = 1e6;
    double worst_tail = 0.0;
    Complex fit_direct(0.0, 0.0), fit_oracle(0.0, 0.0);
    for (int k = 0; k < 8; ++k) {
        Complex z = std::polar(R, k * std::numbers::pi / 4.0);
        if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
        Complex wd = phifield::phi_value(z);
        Complex wo = phifield::phi_cubic_oracle(z);
        worst_tail = std::max(worst_tail, std::abs(z * wd - 1.0));
        fit_direct += (wd - 1.0 / z) * z * z / 8.0;
        fit_oracle += (wo - 1.0 / z) * z * z / 8.0;
    }
    double series_a2 = phifield::upsilon_moments_series(1)[1];  // 4/9 from the cubic
    double fit_gap = std::abs(fit_direct - fit_oracle);
    double pin_gap = std::abs(fit_direct - series_a2);
    r.achieved = worst_tail;
    r.pass = worst_tail <= tol.tail && fit_gap <= tol.laurent && pin_gap <= tol.laurent;
    r.note = "laurent z^-2 fit " + fmt(fit_direct.real()) + " vs series " + fmt(series_a2) +
             " (gap " + fmt(pin_gap) + ", dual gap " + fmt(fit_gap) + ")";
    return r;
}

CheckResult check_normalization(const Tolerances& tol) {
    CheckResult r{"normalization", false, 0.0, tol.normalization, ""};
    double e1 = std::fabs(measures::LimitMeasure::upsilon_unit().total_mass() - 1.0);
    double e2 = std::fabs(measures::LimitMeasure::nu_L(1.0).total_mass() - 1.0);
    double e3 = std::fabs(measures::LimitMeasure::nu_M(1.0).total_mass() - 1.0);
    r.achieved = std::max({e1, e2, e3});
    r.pass = r.achieved <= tol.normalization;
    r.note = "upsilon " + fmt(e1) + ", nu_L " + fmt(e2) + ", nu_M " + fmt(e3);
    return r;
}

CheckResult check_jump(const Tolerances& tol) {
    CheckResult r{"jump", false, 0.0, tol.jump, ""};
    double worst = 0.0;
    for (int i = 1; i <= 19; ++i) {
        double x = 0.05 * i;
        auto D = [&](double eps) {
            return phifield::phi_log_derivative(Complex(x, eps)) -
                   phifield::phi_log_derivative(Complex(x, -eps));
        };
        Complex d1 = D(1e-3), d2 = D(1e-4), d3 = D(1e-5);
        Complex r1a = (10.0 * d2 - d1) / 9.0;
        Complex r1b = (10.0 * d3 - d2) / 9.0;
        Complex extrap = (100.0 * r1b - r1a) / 99.0;
        Complex m = phifield::jump_m(x);
        worst = std::max(worst, std::abs(extrap - m) / std::abs(m));
    }
    r.achieved = worst;
    r.pass = worst <= tol.jump;
    r.note = "Richardson (eps 1e-3,1e-4,1e-5) vs closed form, 19 points";
    return r;
}

CheckResult check_growth(const Tolerances& tol) {
    CheckResult r{"growth", false, 0.0, tol.slope, ""};
    auto rep = phifield::branch_point_growth_check();
    double e0 = std::fabs(rep.slope_at_0 + 2.0 / 3.0);
    double e1 = std::fabs(rep.slope_at_1 + 0.5);
    r.achieved = std::max(e0, e1);
    r.pass = r.achieved <= tol.slope;
    r.note = "slopes " + fmt(rep.slope_at_0) + " (want -2/3), " + fmt(rep.slope_at_1) +
             " (want -1/2), far " + fmt(rep.slope_far);
    return r;
}

CheckResult check_stieltjes(const Tolerances& tol) {
    CheckResult r{"stieltjes", false, 0.0, tol.stieltjes, ""};
    auto grid = random_offcut_grid(tol.seed + 2, 50, 0.05, 1e9, 3.0);
    auto rep = phifield::stieltjes_identity_check(grid);
    r.achieved = rep.max_abs_err;
    r.pass = r.achieved <= tol.stieltjes;
    r.note = "50-point grid, dist >= 0.05";
    return r;
}

CheckResult check_profile(const Tolerances& tol) {
    CheckResult r{"profile-closed-forms", false, 0.0, tol.profile, ""};
    auto lag = coeffs::LimitProfile::linear_slope(27.0 / 8.0);
    auto mac = coeffs::LimitProfile::quadratic(27.0 / 4.0);
    double worstL = 0.0, worstM = 0.0;
    for (int i = 1; i <= 100; ++i) {
        double xL = (27.0 / 8.0) * i / 101.0;
        worstL = std::max(worstL, std::fabs(measures::nu_profile_density(lag, 1.0, xL) -
                                            measures::nu_L_density(1.0, xL)));
        double xM = (27.0 / 4.0) * i / 101.0;
        worstM = std::max(worstM, std::fabs(measures::nu_profile_density(mac, 1.0, xM) -
                                            measures::nu_M_density(1.0, xM)));
    }
    r.achieved = std::max(worstL, worstM);
    r.pass = r.achieved <= tol.profile;
    r.note = "laguerre " + fmt(worstL) + ", macdonald " + fmt(worstM) + ", 100 points each";
    return r;
}

CheckResult check_qn(const Tolerances& tol) {
    CheckResult r{"toeplitz-qn0", false, 0.0, tol.qn, ""};
    double worst = 0.0;
    for (double alpha : {1.0, 2.0, 27.0 / 4.0}) {
        auto fam = coeffs::make_constant_family(alpha);
        for (int n = 0; n <= 50; ++n) {
            auto closed = toeplitz::qn_at_zero_scaled(alpha, n);
            auto rec = polycore::eval_P(fam, n, 1, 0.0);
            if (closed.sign != rec.sign) {
                worst = 1.0;
                continue;
            }
            if (n == 0) continue;
            worst = std::max(worst, std::fabs(std::expm1(rec.log_mag - closed.log_mag)));
        }
    }
    r.achieved = worst;
    r.pass = worst <= tol.qn;
    r.note = "n <= 50, alpha in {1, 2, 27/4}";
    return r;
}

CheckResult check_ks(const Tolerances& tol) {
    CheckResult r{"ks-convergence", false, 0.0, tol.ks_const, ""};
    auto fam1 = coeffs::make_constant_family(1.0);
    auto ups = measures::LimitMeasure::upsilon_unit();
    std::map<int, double> d_const;
    for (int n : {100, 200, 400}) {
        auto zs = zeros::zero_cascade(fam1, n, 1);
        d_const[n] = measures::ks_statistic(zeros::empirical_measure(zs, fam1), ups).statistic;
    }
    auto famL = coeffs::make_laguerre1_family();
    auto zsL = zeros::zero_cascade(famL, 300, 300);
    double dL =
        measures::ks_statistic(zeros::empirical_measure(zsL, famL), measures::LimitMeasure::nu_L(1.0))
            .statistic;
    auto famM = coeffs::make_macdonald_family();
    auto zsM = zeros::zero_cascade(famM, 300, 300);
    double dM =
        measures::ks_statistic(zeros::empirical_measure(zsM, famM), measures::LimitMeasure::nu_M(1.0))
            .statistic;

    bool pass = d_const[400] <= tol.ks_const;
    pass = pass && d_const[200] <= (1.0 + tol.ks_slack) * d_const[100];
    pass = pass && d_const[400] <= (1.0 + tol.ks_slack) * d_const[200];
    pass = pass && dL <= tol.ks_laguerre && dM <= tol.ks_macdonald;

    std::string golden_note;
    if (!tol.golden_path.empty()) {
        std::ifstream in(tol.golden_path);
        if (in) {
            nlohmann::json g = nlohmann::json::parse(in, nullptr, false);
            if (!g.is_discarded()) {
                double worst_gap = 0.0;
                for (int n : {100, 200, 400}) {
                    double ref = g["constant_alpha1"][std::to_string(n)].get<double>();
                    worst_gap = std::max(worst_gap, std::fabs(d_const[n] - ref));
                }
                worst_gap = std::max(worst_gap,
                                     std::fabs(dL - g["laguerre_t1_n300"].get<double>()));
                worst_gap = std::max(worst_gap,
                                     std::fabs(dM - g["macdonald_t1_n300"].get<double>()));
                pass = pass && worst_gap <= tol.ks_golden;
                golden_note = ", golden gap " + fmt(worst_gap);
            } else {
                golden_note = ", golden file unparsable";
                pass = false;
            }
        } else {
            golden_note = ", golden file missing (thresholds only)";
        }
    }
    r.achieved = d_const[400];
    r.pass = pass;
    r.note = "D_100 " + fmt(d_const[100]) + ", D_200 " + fmt(d_const[200]) + ", D_400 " +
             fmt(d_const[400]) + ", laguerre D_300 " + fmt(dL) + ", macdonald D_300 " + fmt(dM) +
             golden_note;
    return r;
}

CheckResult check_ratio(const Tolerances& tol) {
    CheckResult r{"ratio-asymptotics", false, 0.0, tol.ratio_top, ""};
    const std::vector<int> schedule{50, 100, 200, 400};
    const std::vector<MpComplex> zs{mpc(3.0, 0.0), mpc(-1.0, 0.0), mpc(1.5, 1.5)};
    bool strict = true;
    double top = 0.0;
    std::ostringstream note;
    note << "log10 e_n:";
    for (const auto& z : zs) {
        auto errs = mp_ratio_errors(z, schedule);
        note << " [";
        for (std::size_t i = 0; i < errs.size(); ++i) {
            if (i) {
                if (!(errs[i] < errs[i - 1])) strict = false;
                note << " > ";
            }
            note << fmt(static_cast<double>(log10(errs[i])));
        }
        note << "]";
        top = std::max(top, static_cast<double>(errs.back()));
    }
    // alpha = 0 family: P_n = z^n, the ratio is exactly 1/z
    auto fam0 = coeffs::make_custom_family(coeffs::LimitProfile::constant(0.0), "zero");
    double worst0 = 0.0;
    for (Complex z : {Complex(3.0, 0.0), Complex(-1.0, 0.0), Complex(1.5, 1.5)}) {
        Complex ratio = polycore::ratio_P_over_Pnext(fam0, 50, 1, z);
        worst0 = std::max(worst0, std::abs(ratio - 1.0 / z));
    }
    r.achieved = top;
    r.pass = strict && top <= tol.ratio_top && worst0 <= tol.alpha0;
    r.note = note.str() + (strict ? ", strictly decreasing" : ", NOT strictly decreasing") +
             ", alpha=0 err " + fmt(worst0);
    return r;
}

CheckResult check_zero_oracle(const Tolerances& tol) {
    CheckResult r{"zero-oracle", false, 0.0, tol.zero_oracle, ""};
    double worst = 0.0;
    bool count_ok = true;
    auto compare = [&](const coeffs::CoefficientFamily& fam, int n, int N, int grid) {
        auto zs = zeros::zero_cascade(fam, n, N);
        auto oracle = grid_isolation_zeros(fam, n, N, grid);
        if (oracle.size() != zs.zeros.size()) {
            count_ok = false;
            return;
        }
        for (std::size_t j = 0; j < oracle.size(); ++j)
            worst = std::max(worst, std::fabs(oracle[j] - zs.zeros[j]));
    };
    auto fam1 = coeffs::make_constant_family(1.0);
    auto fam274 = coeffs::make_constant_family(27.0 / 4.0);
    auto famL = coeffs::make_laguerre1_family();
    for (int n = 1; n <= 12; ++n) {
        compare(fam1, n, 1, 10000);
        compare(fam274, n, 1, 10000);
        compare(famL, n, 12, 100000);
    }
    // alpha-scaling equivariance at n = 40
    auto z1 = zeros::zero_cascade(fam1, 40, 1);
    auto z2 = zeros::zero_cascade(coeffs::make_constant_family(2.0), 40, 1);
    double worst_scale = 0.0;
    for (int j = 0; j < 40; ++j)
        worst_scale = std::max(worst_scale, std::fabs(z2.zeros[j] - 2.0 * z1.zeros[j]));
    r.achieved = std::max(worst, worst_scale);
    r.pass = count_ok && worst <= tol.zero_oracle && worst_scale <= tol.scaling;
    r.note = std::string(count_ok ? "" : "oracle zero count mismatch; ") + "cascade gap " +
             fmt(worst) + ", scaling gap " + fmt(worst_scale);
    return r;
}

CheckResult check_moments(const Tolerances& tol) {
    CheckResult r{"moments", false, 0.0, tol.moments, ""};
    auto series = phifield::upsilon_moments_series(4);
    double worst = 0.0;
    for (int k = 0; k <= 4; ++k)
        worst = std::max(worst, std::fabs(measures::moments_upsilon(k) - series[k]));
    const double frozen[5] = {1.0, 4.0 / 9.0, 80.0 / 243.0, 1792.0 / 6561.0, 14080.0 / 59049.0};
    double pin = 0.0;
    for (int k = 0; k <= 4; ++k) pin = std::max(pin, std::fabs(series[k] - frozen[k]));
    r.achieved = worst;
    r.pass = worst <= tol.moments && pin <= 1e-14;
    r.note = "quad vs series gap " + fmt(worst) + ", series vs frozen rationals gap " + fmt(pin);
    return r;
}

using CheckFn = std::function<CheckResult(const Tolerances&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> reg = {
        {"phi-identity", check_phi_identity},
        {"phi-dual", check_phi_dual},
        {"phi-tail", check_phi_tail},
        {"normalization", check_normalization},
        {"jump", check_jump},
        {"growth", check_growth},
        {"stieltjes", check_stieltjes},
        {"profile-closed-forms", check_profile},
        {"toeplitz-qn0", check_qn},
        {"ks-convergence", check_ks},
        {"ratio-asymptotics", check_ratio},
        {"zero-oracle", check_zero_oracle},
        {"moments", check_moments},
    };
    return reg;
}

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

std::vector<CheckResult> run_checks(const Tolerances& tol, const std::vector<std::string>& only) {
    std::vector<CheckResult> results;
    for (const auto& [name, fn] : registry()) {
        if (!only.empty()) {
            bool wanted = false;
            for (const auto& o : only)
                if (name.find(o) != std::string::npos) wanted = true;
            if (!wanted) continue;
        }
        results.push_back(fn(tol));
    }
    return results;
}

void apply_tolerance_override(Tolerances& tol, const std::string& key_value) {
    auto eq = key_value.find('=');
    if (eq == std::string::npos)
        throw ValidationError("tolerance override must look like KEY=VALUE: " + key_value);
    std::string key = key_value.substr(0, eq);
    double value = 0.0;
    try {
        value = std::stod(key_value.substr(eq + 1));
    } catch (const std::exception&) {
        throw ValidationError("bad tolerance value in: " + key_value);
    }
    if (key == "identity") tol.phi_identity = value;
    else if (key == "dual") tol.phi_dual = value;
    else if (key == "tail") tol.tail = value;
    else if (key == "laurent") tol.laurent = value;
    else if (key == "norm") tol.normalization = value;
    else if (key == "jump") tol.jump = value;
    else if (key == "slope") tol.slope = value;
    else if (key == "stieltjes") tol.stieltjes = value;
    else if (key == "profile") tol.profile = value;
    else if (key == "qn") tol.qn = value;
    else if (key == "ks") tol.ks_const = value;
    else if (key == "ks-slack") tol.ks_slack = value;
    else if (key == "ks-laguerre") tol.ks_laguerre = value;
    else if (key == "ks-macdonald") tol.ks_macdonald = value;
    else if (key == "ks-golden") tol.ks_golden = value;
    else if (key == "ratio-top") tol.ratio_top = value;
    else if (key == "alpha0") tol.alpha0 = value;
    else if (key == "zero-oracle") tol.zero_oracle = value;
    else if (key == "scaling") tol.scaling = value;
    else if (key == "moments") tol.moments = value;
    else if (key == "seed") tol.seed = static_cast<unsigned long long>(value);
    else throw ValidationError("unknown tolerance key: " + key);
}

}  // namespace fourterm::verify
