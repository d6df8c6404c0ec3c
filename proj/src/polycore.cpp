#include "fourterm/polycore.hpp"

#include <algorithm>

#include "fourterm/errors.hpp"

namespace fourterm::polycore {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScaleHigh = 1e150;
constexpr double kScaleLow = 1e-150;

inline int sgn(double v) { return (v > 0.0) - (v < 0.0); }
}  // namespace

ScaledValue ScaledValue::from_double(double v) {
    if (v == 0.0) return zero();
    return {sgn(v), std::log(std::fabs(v))};
}

double ScaledValue::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);
}

ScaledValue operator*(const ScaledValue& a, const ScaledValue& b) {
    if (a.sign == 0 || b.sign == 0) return ScaledValue::zero();
    return {a.sign * b.sign, a.log_mag + b.log_mag};
}

ScaledValue ScaledValue::sum(const ScaledValue& a, const ScaledValue& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const ScaledValue& big = a.log_mag >= b.log_mag ? a : b;
    const ScaledValue& small = a.log_mag >= b.log_mag ? b : a;
    double t = small.sign * big.sign * std::exp(small.log_mag - big.log_mag);
    double m = 1.0 + t;
    if (m == 0.0) return zero();
    return {big.sign * sgn(m), big.log_mag + std::log(std::fabs(m))};
}

double quotient(const ScaledValue& a, const ScaledValue& b) {
    if (b.sign == 0) throw ValidationError("scaled quotient by zero");
    if (a.sign == 0) return 0.0;
    return a.sign * b.sign * std::exp(a.log_mag - b.log_mag);
}

CoeffTable CoeffTable::build(const coeffs::CoefficientFamily& fam, int n, int N) {
    if (n < 0 || N < 1) throw ValidationError("CoeffTable needs n >= 0 and N >= 1");
    CoeffTable t;
    t.N = N;
    t.b.resize(n);
    t.c.resize(n);
    t.d.resize(n);
    for (int k = 0; k < n; ++k) {
        t.b[k] = fam.b(k, N);
        t.c[k] = fam.c(k, N);
        t.d[k] = fam.d(k, N);
    }
    return t;
}

ScaledValue eval_P(const CoeffTable& tab, int n, double x) {
    if (n > tab.size()) throw ValidationError("coefficient table shorter than n");
    double p2 = 0.0, p1 = 0.0, p = 1.0;
    double log_scale = 0.0;
    for (int k = 0; k < n; ++k) {
        double pn = (x - tab.b[k]) * p - tab.c[k] * p1 - tab.d[k] * p2;
        p2 = p1;
        p1 = p;
        p = pn;
        double m = std::max({std::fabs(p), std::fabs(p1), std::fabs(p2)});
        if (m > kScaleHigh || (m > 0.0 && m < kScaleLow)) {
            p /= m;
            p1 /= m;
            p2 /= m;
            log_scale += std::log(m);
        }
    }
    if (p == 0.0) return ScaledValue::zero();
    return {sgn(p), std::log(std::fabs(p)) + log_scale};
}

ScaledValue eval_P(const coeffs::CoefficientFamily& fam, int n, int N, double x) {
    return eval_P(CoeffTable::build(fam, n, N), n, x);
}

ValueAndDerivative eval_P_and_dP(const CoeffTable& tab, int n, double x) {
    if (n > tab.size()) throw ValidationError("coefficient table shorter than n");
    double p2 = 0.0, p1 = 0.0, p = 1.0;
    double q2 = 0.0, q1 = 0.0, q = 0.0;  // derivatives
    double log_scale = 0.0;
    for (int k = 0; k < n; ++k) {
        double pn = (x - tab.b[k]) * p - tab.c[k] * p1 - tab.d[k] * p2;
        double qn = p + (x - tab.b[k]) * q - tab.c[k] * q1 - tab.d[k] * q2;
        p2 = p1;
        p1 = p;
        p = pn;
        q2 = q1;
        q1 = q;
        q = qn;
        double m = std::max({std::fabs(p), std::fabs(p1), std::fabs(p2), std::fabs(q),
                             std::fabs(q1), std::fabs(q2)});
        if (m > kScaleHigh || (m > 0.0 && m < kScaleLow)) {
            p /= m;
            p1 /= m;
            p2 /= m;
            q /= m;
            q1 /= m;
            q2 /= m;
            log_scale += std::log(m);
        }
    }
    ValueAndDerivative out;
    out.p = p == 0.0 ? ScaledValue::zero() : ScaledValue{sgn(p), std::log(std::fabs(p)) + log_scale};
    out.dp = q == 0.0 ? ScaledValue::zero() : ScaledValue{sgn(q), std::log(std::fabs(q)) + log_scale};
    return out;
}

ValueAndDerivative eval_P_and_dP(const coeffs::CoefficientFamily& fam, int n, int N, double x) {
    return eval_P_and_dP(CoeffTable::build(fam, n, N), n, x);
}

RatioState eval_ratio_seq(const CoeffTable& tab, int n, std::complex<double> z,
                          double pole_floor) {
    if (n + 1 > tab.size()) throw ValidationError("coefficient table shorter than n+1");
    std::complex<double> r = z - tab.b[0];  // r_1
    std::complex<double> rm1(0.0, 0.0);
    if (std::abs(r) < pole_floor) throw NearPoleError("ratio underflow at level 1", 1);
    for (int k = 1; k <= n; ++k) {
        std::complex<double> next = z - tab.b[k] - tab.c[k] / r;
        if (k >= 2) next -= tab.d[k] / (r * rm1);
        rm1 = r;
        r = next;
        if (std::abs(r) < pole_floor)
            throw NearPoleError("ratio underflow at level " + std::to_string(k + 1), k + 1);
    }
    return {r, rm1, n + 1};
}

RatioState eval_ratio_seq(const coeffs::CoefficientFamily& fam, int n, int N,
                          std::complex<double> z, double pole_floor) {
    return eval_ratio_seq(CoeffTable::build(fam, n + 1, N), n, z, pole_floor);
}

std::complex<double> ratio_P_over_Pnext(const coeffs::CoefficientFamily& fam, int n, int N,
                                        std::complex<double> z, double pole_floor) {
    return 1.0 / eval_ratio_seq(fam, n, N, z, pole_floor).r_k;
}

std::complex<double> log_derivative_ratio(const coeffs::CoefficientFamily& fam, int n, int N,
                                          std::complex<double> z, double pole_floor) {
    if (n < 1) throw ValidationError("log_derivative_ratio needs n >= 1");
    CoeffTable tab = CoeffTable::build(fam, n, N);
    // s_k = P_k'/P_k alongside the ratio sequence
    std::complex<double> r = z - tab.b[0];
    std::complex<double> rm1(0.0, 0.0);
    if (std::abs(r) < pole_floor) throw NearPoleError("ratio underflow at level 1", 1);
    std::complex<double> s2(0.0, 0.0), s1(0.0, 0.0), s = 1.0 / r;  // s_1
    for (int k = 1; k < n; ++k) {
        std::complex<double> acc = 1.0 + (z - tab.b[k]) * s - tab.c[k] * s1 / r;
        if (k >= 2) acc -= tab.d[k] * s2 / (r * rm1);
        std::complex<double> rnext = z - tab.b[k] - tab.c[k] / r;
        if (k >= 2) rnext -= tab.d[k] / (r * rm1);
        if (std::abs(rnext) < pole_floor)
            throw NearPoleError("ratio underflow at level " + std::to_string(k + 1), k + 1);
        s2 = s1;
        s1 = s;
        s = acc / rnext;
        rm1 = r;
        r = rnext;
    }
    return s / static_cast<double>(n);
}

std::complex<double> log_P_from_ratios(const CoeffTable& tab, int n, std::complex<double> z,
                                       double pole_floor) {
    if (n < 1) return {0.0, 0.0};
    std::complex<double> r = z - tab.b[0];
    std::complex<double> rm1(0.0, 0.0);
    if (std::abs(r) < pole_floor) throw NearPoleError("ratio underflow at level 1", 1);
    std::complex<double> acc = std::log(r);
    for (int k = 1; k < n; ++k) {
        std::complex<double> next = z - tab.b[k] - tab.c[k] / r;
        if (k >= 2) next -= tab.d[k] / (r * rm1);
        if (std::abs(next) < pole_floor)
            throw NearPoleError("ratio underflow at level " + std::to_string(k + 1), k + 1);
        rm1 = r;
        r = next;
        acc += std::log(r);
    }
    return acc;
}

}  // namespace fourterm::polycore
