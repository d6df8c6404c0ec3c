#include "fourterm/phifield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fourterm/errors.hpp"
#include "fourterm/measures.hpp"
#include "fourterm/polycore.hpp"
#include "fourterm/zeros.hpp"

namespace fourterm::phifield {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOnCutEps = 1e-14;
const Complex kOmega3 = std::polar(1.0, 2.0 * kPi / 3.0);

// cubic in w equivalent to z*w = (1 + 4w/27)^3:
//   q3 w^3 + q2 w^2 + (4/9 - z) w + 1 = 0
constexpr double kQ3 = 64.0 / 19683.0;
constexpr double kQ2 = 16.0 / 243.0;

inline Complex cubic_residual(Complex w, Complex z) {
    return ((kQ3 * w + kQ2) * w + (4.0 / 9.0 - z)) * w + 1.0;
}

inline Complex cubic_derivative(Complex w, Complex z) {
    return (3.0 * kQ3 * w + 2.0 * kQ2) * w + (4.0 / 9.0 - z);
}

Complex newton_polish(Complex w, Complex z) {
    for (int i = 0; i < 3; ++i) {
        Complex dq = cubic_derivative(w, z);
        if (std::abs(dq) == 0.0) break;
        Complex step = cubic_residual(w, z) / dq;
        w -= step;
        if (std::abs(step) <= 1e-16 * std::abs(w)) break;
    }
    return w;
}

}  // namespace

Complex sqrt_02pi(Complex w) {
    double th = std::arg(w);  // [-pi, pi]
    if (th < 0.0) th += 2.0 * kPi;
    return std::polar(std::sqrt(std::abs(w)), 0.5 * th);
}

Complex cbrt_branch(Complex w) {
    double th = std::arg(w);
    if (th <= -kPi) th += 2.0 * kPi;  // map -pi to +pi
    return std::polar(std::cbrt(std::abs(w)), th / 3.0);
}

double dist_to_cut(Complex z) {
    double xr = std::clamp(z.real(), 0.0, 1.0);
    return std::abs(z - Complex(xr, 0.0));
}

Complex phi_value(Complex z) {
    if (dist_to_cut(z) <= kOnCutEps)
        throw OnCutError("phi evaluated on (or within 1e-14 of) the cut [0,1]");
    Complex w;
    if (z.imag() == 0.0 && z.real() < 0.0) {
        // On (-inf, 0) the two one-sided limits coincide and are real;
        // evaluating the general formula here would mix branch sides through
        // the signed zeros of the imaginary part.
        double x = z.real();
        double sig = std::sqrt(1.0 - x);
        double inner = std::cbrt(sig + 1.0) - std::cbrt(sig - 1.0);
        w = Complex(6.75 * (1.5 * std::cbrt(-x) * inner - 1.0), 0.0);
    } else {
        Complex s = sqrt_02pi(1.0 - z);
        Complex inner = kOmega3 * cbrt_branch(-1.0 + s) + cbrt_branch(-1.0 - s);
        w = 6.75 * (1.5 * kOmega3 * cbrt_branch(z) * inner - 1.0);
    }
    // The raw formula loses relative accuracy at large |z| (the bracket above
    // cancels to ~phi/6.75); one or two Newton steps on the algebraic identity
    // restore it without touching branch selection.
    w = newton_polish(w, z);
    if (z.imag() == 0.0) w = Complex(w.real(), 0.0);  // Schwarz symmetry off the cut
    return w;
}

namespace {
inline Complex log_deriv_from_phi(Complex w, Complex z) {
    return (4.0 * w / 27.0 + 1.0) / (z * (8.0 * w / 27.0 - 1.0));
}
}  // namespace

PhiEval phi(Complex z) {
    Complex w = phi_value(z);
    return {z, w, log_deriv_from_phi(w, z)};
}

Complex phi_log_derivative(Complex z) { return phi(z).phi_log_deriv; }

std::array<Complex, 3> solve_cubic(Complex q3, Complex q2, Complex q1, Complex q0) {
    // depressed cubic t^3 + p t + q with w = t - q2/(3 q3)
    Complex shift = q2 / (3.0 * q3);
    Complex p = q1 / q3 - shift * shift * 3.0;
    Complex q = q0 / q3 - shift * (q1 / q3) + 2.0 * shift * shift * shift;
    Complex sq = std::sqrt(0.25 * q * q + p * p * p / 27.0);
    Complex cand1 = -0.5 * q + sq;
    Complex cand2 = -0.5 * q - sq;
    Complex ucube = std::abs(cand1) >= std::abs(cand2) ? cand1 : cand2;
    std::array<Complex, 3> roots;
    if (std::abs(ucube) == 0.0) {
        Complex t = std::pow(-q, 1.0 / 3.0);
        for (int j = 0; j < 3; ++j)
            roots[j] = t * std::polar(1.0, 2.0 * kPi * j / 3.0) - shift;
        return roots;
    }
    Complex u = std::pow(ucube, 1.0 / 3.0);
    for (int j = 0; j < 3; ++j) {
        Complex uj = u * std::polar(1.0, 2.0 * kPi * j / 3.0);
        Complex v = -p / (3.0 * uj);
        roots[j] = uj + v - shift;
    }
    return roots;
}

namespace {

std::array<Complex, 3> phi_cubic_roots(Complex z) {
    auto roots = solve_cubic(kQ3, kQ2, 4.0 / 9.0 - z, 1.0);
    for (auto& r : roots) r = newton_polish(r, z);
    return roots;
}

// advance the tracked root along the straight segment za -> zb
Complex track_segment(Complex w, Complex za, Complex zb) {
    double s = 0.0;
    double step = 0.05;
    while (s < 1.0) {
        double snext = std::min(1.0, s + step);
        Complex zc = za + (zb - za) * snext;
        auto roots = phi_cubic_roots(zc);
        int best = 0;
        for (int j = 1; j < 3; ++j)
            if (std::abs(roots[j] - w) < std::abs(roots[best] - w)) best = j;
        double spacing = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 3; ++j)
            if (j != best) spacing = std::min(spacing, std::abs(roots[j] - roots[best]));
        if (std::abs(roots[best] - w) > 0.1 * spacing) {
            step *= 0.5;
            if (step < 1e-13)
                throw AmbiguityError("cubic root tracking stalled near a branch point");
            continue;
        }
        w = roots[best];
        s = snext;
        step = std::min(step * 1.7, 0.25);
    }
    return w;
}

}  // namespace

Complex phi_cubic_oracle(Complex z) {
    if (dist_to_cut(z) <= kOnCutEps)
        throw OnCutError("phi oracle requested on the cut [0,1]");
    const Complex anchor(1e4, 0.0);
    auto roots0 = phi_cubic_roots(anchor);
    Complex w = roots0[0];
    for (const auto& r : roots0)
        if (std::abs(r - 1.0 / anchor) < std::abs(w - 1.0 / anchor)) w = r;
    // exactly-real targets left of the cut are reached from the upper half
    // plane so the straight path never crosses [0,1]
    if (z.imag() == 0.0 && z.real() < 1.0) {
        Complex waypoint(0.5, 2.0);
        w = track_segment(w, anchor, waypoint);
        w = track_segment(w, waypoint, z);
    } else {
        w = track_segment(w, anchor, z);
    }
    if (z.imag() == 0.0) w = Complex(w.real(), 0.0);
    return w;
}

Complex jump_m(double x) {
    if (!(x > 0.0 && x < 1.0)) throw ValidationError("jump_m needs x in (0,1)");
    double s = std::sqrt(1.0 - x);
    double vp = std::cbrt(1.0 + s);
    double vm = std::cbrt(x / (1.0 + s));  // (1 - sqrt(1-x))^{1/3}, cancellation-free
    double mag = std::numbers::sqrt3 / (2.0 * std::pow(x, 2.0 / 3.0)) * (vp + vm) / s;
    return {0.0, mag};
}

namespace {
double fit_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < logx.size(); ++i) {
        mx += logx[i];
        my += logy[i];
    }
    mx /= logx.size();
    my /= logy.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < logx.size(); ++i) {
        num += (logx[i] - mx) * (logy[i] - my);
        den += (logx[i] - mx) * (logx[i] - mx);
    }
    return num / den;
}
}  // namespace

GrowthReport branch_point_growth_check() {
    GrowthReport rep;
    std::vector<double> le, l0, l1;
    for (int k = 1; k <= 6; ++k) {
        double eps = std::pow(10.0, -k);
        le.push_back(std::log(eps));
        l0.push_back(std::log(std::abs(phi_log_derivative(Complex(0.0, eps)))));
        l1.push_back(std::log(std::abs(phi_log_derivative(Complex(1.0, eps)))));
    }
    rep.slope_at_0 = fit_slope(le, l0);
    rep.slope_at_1 = fit_slope(le, l1);
    std::vector<double> lr, lf;
    for (int k = 3; k <= 6; ++k) {
        double r = std::pow(10.0, k);
        lr.push_back(std::log(r));
        lf.push_back(std::log(std::abs(phi_log_derivative(std::polar(r, kPi / 4.0)))));
    }
    rep.slope_far = fit_slope(lr, lf);
    return rep;
}

StieltjesReport stieltjes_identity_check(std::span<const Complex> grid) {
    StieltjesReport rep;
    auto ups = measures::LimitMeasure::upsilon_unit();
    for (Complex z : grid) {
        Complex lhs = phi_log_derivative(z);
        Complex cau = ups.cauchy(z);
        double err = std::abs(lhs + cau);
        rep.rows.push_back({z, lhs, -cau, err});
        rep.max_abs_err = std::max(rep.max_abs_err, err);
    }
    return rep;
}

RatioReport ratio_asymptotics_check(const coeffs::CoefficientFamily& fam,
                                    std::span<const Complex> z_grid,
                                    std::span<const int> n_schedule, int N,
                                    bool validate_first) {
    RatioReport rep;
    if (n_schedule.empty() || z_grid.empty()) return rep;
    int n_max = *std::max_element(n_schedule.begin(), n_schedule.end());
    if (validate_first && !fam.is_identically_zero()) {
        auto hyp = zeros::validate_hypotheses(fam, n_max, N);
        if (!hyp.all_real_simple)
            throw InterlacingViolation("family failed the real-simple hypothesis", 0, 0.0, 0.0);
    }
    for (Complex z : z_grid) {
        double prev = std::numeric_limits<double>::infinity();
        for (int n : n_schedule) {
            double alpha = fam.alpha(static_cast<double>(n) / N);
            Complex limit = alpha > 0.0 ? phi_value(z / alpha) / alpha : 1.0 / z;
            Complex ratio = polycore::ratio_P_over_Pnext(fam, n, N, z);
            double err = std::abs(ratio - limit);
            rep.rows.push_back({z, n, err});
            if (err > prev && err > rep.saturation_floor) rep.decreasing = false;
            prev = err;
        }
        rep.top_err = std::max(rep.top_err, rep.rows.back().err);
    }
    return rep;
}

std::vector<double> upsilon_moments_series(int kmax) {
    if (kmax < 0) throw ValidationError("kmax must be >= 0");
    // phi = sum_{k>=1} a_k z^{-k}; matching powers in z phi = (1 + 4 phi/27)^3
    int K = kmax + 2;
    std::vector<double> a(K + 2, 0.0);
    a[1] = 1.0;
    for (int m = 1; m <= K; ++m) {
        double quad = 0.0;
        for (int i = 1; i < m; ++i) quad += a[i] * a[m - i];
        double cub = 0.0;
        for (int i = 1; i < m; ++i)
            for (int j = 1; j < m - i; ++j) cub += a[i] * a[j] * a[m - i - j];
        a[m + 1] = (4.0 / 9.0) * a[m] + kQ2 * quad + kQ3 * cub;
    }
    // log(1 + sum c_k w^k) with c_k = a_{k+1}; moments m_k = k * log-coefficient
    std::vector<double> c(kmax + 1, 0.0);
    for (int k = 1; k <= kmax; ++k) c[k] = a[k + 1];
    std::vector<double> S(kmax + 1, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        double acc = c[k];
        for (int j = 1; j < k; ++j) acc -= (static_cast<double>(j) / k) * S[j] * c[k - j];
        S[k] = acc;
    }
    std::vector<double> m(kmax + 1, 0.0);
    m[0] = 1.0;
    for (int k = 1; k <= kmax; ++k) m[k] = k * S[k];
    return m;
}

}  // namespace fourterm::phifield
