#include "fourterm/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>

#include "fourterm/errors.hpp"

namespace fourterm::zeros {

using polycore::CoeffTable;
using polycore::eval_P;
using polycore::eval_P_and_dP;

namespace {

int sign_at(const CoeffTable& tab, int k, double x) { return eval_P(tab, k, x).sign; }

// Safeguarded bisection + Newton polish inside a sign-change bracket.
double refine_zero(const CoeffTable& tab, int k, double lo, double hi, int slo,
                   const CascadeOptions& opt) {
    // bisect to a narrow window first
    double wide_tol = std::max(opt.abs_tol, 1e-6);
    while (hi - lo > wide_tol) {
        double mid = 0.5 * (lo + hi);
        int sm = sign_at(tab, k, mid);
        if (sm == 0) return mid;
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    int newton_left = opt.newton_steps;
    for (int it = 0; it < 64; ++it) {
        double tol = std::max(opt.abs_tol, 4.0 * std::numeric_limits<double>::epsilon() *
                                               std::max(1.0, std::fabs(x)));
        if (hi - lo <= tol) break;
        bool stepped = false;
        if (newton_left > 0) {
            auto [p, dp] = eval_P_and_dP(tab, k, x);
            if (p.sign == 0) return x;
            if (dp.sign != 0) {
                double step = polycore::quotient(p, dp);
                double cand = x - step;
                if (cand > lo && cand < hi) {
                    // keep the bracket consistent
                    int sc = sign_at(tab, k, cand);
                    if (sc == 0) return cand;
                    if (sc == slo)
                        lo = cand;
                    else
                        hi = cand;
                    x = cand;
                    --newton_left;
                    stepped = true;
                    if (std::fabs(step) <= tol) break;
                }
            }
            if (!stepped) newton_left = 0;  // Newton unhelpful here; pure bisection
        }
        if (!stepped) {
            double mid = 0.5 * (lo + hi);
            int sm = sign_at(tab, k, mid);
            if (sm == 0) return mid;
            if (sm == slo)
                lo = mid;
            else
                hi = mid;
            x = 0.5 * (lo + hi);
        }
    }
    double tol = std::max(opt.abs_tol, 4.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(1.0, std::fabs(x)));
    if (hi - lo > 64.0 * tol)
        throw ToleranceFailure("zero refinement stalled at level " + std::to_string(k),
                               hi - lo);
    return 0.5 * (lo + hi);
}

struct Bracket {
    double lo, hi;
    int slo;
};

struct LevelOutcome {
    std::vector<double> zeros;
    bool interlaced = true;
    int recovered = 0;
};

LevelOutcome solve_level(const CoeffTable& tab, int k, double R,
                         const std::vector<double>& prev, const CascadeOptions& opt) {
    LevelOutcome out;
    if (k == 1) {
        out.zeros.push_back(tab.b[0]);  // P_1 = x - b_0
        return out;
    }
    std::vector<double> cuts;
    cuts.reserve(prev.size() + 2);
    cuts.push_back(-R);
    cuts.insert(cuts.end(), prev.begin(), prev.end());
    cuts.push_back(R);

    std::vector<int> s(cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        s[i] = sign_at(tab, k, cuts[i]);
        if (s[i] == 0) {
            if (i == 0 || i + 1 == cuts.size())
                throw InterlacingViolation("boundary zero at +-R at level " + std::to_string(k),
                                           k, -R, R);
            // nudge an interior cut that sits exactly on a zero of P_k
            double eps = 1e-14 * std::max(1.0, std::fabs(cuts[i]));
            cuts[i] += eps;
            s[i] = sign_at(tab, k, cuts[i]);
            if (s[i] == 0)
                throw ToleranceFailure("persistent exact zero at cut, level " + std::to_string(k),
                                       0.0);
        }
    }
    // monic degree-k with zeros inside (-R, R): P_k(R) > 0, sign at -R is (-1)^k
    if (s.back() != 1 || s.front() != ((k % 2 == 0) ? 1 : -1))
        throw InterlacingViolation("endpoint signs inconsistent at level " + std::to_string(k),
                                   k, -R, R);

    std::vector<Bracket> brackets;
    struct Segment {
        double lo, hi;
        int slo, shi;
        int depth;
    };
    std::deque<Segment> plain;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (s[i] * s[i + 1] < 0)
            brackets.push_back({cuts[i], cuts[i + 1], s[i]});
        else
            plain.push_back({cuts[i], cuts[i + 1], s[i], s[i + 1], 0});
    }

    int missing = k - static_cast<int>(brackets.size());
    if (missing < 0)
        throw InterlacingViolation("more sign changes than degree at level " + std::to_string(k),
                                   k, -R, R);
    if (missing > 0) {
        out.interlaced = false;
        if (!opt.allow_recovery)
            throw InterlacingViolation("bracket without sign change at level " + std::to_string(k),
                                       k, plain.empty() ? -R : plain.front().lo,
                                       plain.empty() ? R : plain.front().hi);
        // Breadth-first midpoint subdivision: zeros lost to a local interlacing
        // failure sit in pairs inside some segment.
        while (missing > 0) {
            if (plain.empty())
                throw InterlacingViolation(
                    "zeros unrecoverable (complex pair?) at level " + std::to_string(k), k, -R, R);
            Segment seg = plain.front();
            plain.pop_front();
            if (seg.depth >= opt.max_recovery_depth)
                throw InterlacingViolation("recovery depth exhausted at level " + std::to_string(k),
                                           k, seg.lo, seg.hi);
            double mid = 0.5 * (seg.lo + seg.hi);
            int sm = sign_at(tab, k, mid);
            if (sm == 0) {
                double eps = 1e-14 * std::max(1.0, std::fabs(mid));
                mid += eps;
                sm = sign_at(tab, k, mid);
            }
            if (seg.slo * sm < 0) {
                brackets.push_back({seg.lo, mid, seg.slo});
                missing -= 1;
                out.recovered += 1;
            } else {
                plain.push_back({seg.lo, mid, seg.slo, sm, seg.depth + 1});
            }
            if (sm * seg.shi < 0) {
                brackets.push_back({mid, seg.hi, sm});
                missing -= 1;
                out.recovered += 1;
            } else {
                plain.push_back({mid, seg.hi, sm, seg.shi, seg.depth + 1});
            }
        }
    }

    out.zeros.reserve(k);
    for (const Bracket& br : brackets)
        out.zeros.push_back(refine_zero(tab, k, br.lo, br.hi, br.slo, opt));
    std::sort(out.zeros.begin(), out.zeros.end());
    return out;
}

struct CascadeRun {
    std::vector<double> final_zeros;
    bool final_interlaced = true;
    bool all_interlaced = true;
    bool all_real_simple = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    int levels_with_recovery = 0;
    std::vector<LevelReport> offenders;
};

CascadeRun run_cascade(const CoeffTable& tab, int n, double R, const CascadeOptions& opt,
                       bool keep_reports) {
    CascadeRun run;
    std::vector<double> prev;
    for (int k = 1; k <= n; ++k) {
        LevelOutcome lv = solve_level(tab, k, R, prev, opt);
        bool simple = true;
        for (std::size_t j = 0; j + 1 < lv.zeros.size(); ++j)
            if (!(lv.zeros[j] < lv.zeros[j + 1])) simple = false;
        double margin = std::numeric_limits<double>::infinity();
        if (k >= 2 && lv.interlaced) {
            for (std::size_t j = 0; j < prev.size(); ++j) {
                margin = std::min(margin, prev[j] - lv.zeros[j]);
                margin = std::min(margin, lv.zeros[j + 1] - prev[j]);
            }
        } else if (!lv.interlaced) {
            margin = 0.0;
        }
        run.all_real_simple = run.all_real_simple && simple;
        run.all_interlaced = run.all_interlaced && lv.interlaced;
        if (k >= 2) run.worst_margin = std::min(run.worst_margin, margin);
        if (lv.recovered > 0) ++run.levels_with_recovery;
        if (keep_reports && (!lv.interlaced || !simple))
            run.offenders.push_back({k, lv.interlaced, lv.recovered, margin});
        if (k == n) run.final_interlaced = lv.interlaced;
        prev = std::move(lv.zeros);
    }
    run.final_zeros = std::move(prev);
    return run;
}

}  // namespace

double spectral_bound(const coeffs::CoefficientFamily& fam, int n, int N) {
    double R = 0.0;
    for (int k = 0; k <= n; ++k) {
        double v = 1.0 + std::fabs(fam.b(k, N)) + std::fabs(fam.c(k, N)) + std::fabs(fam.d(k, N));
        R = std::max(R, v);
    }
    return R;
}

ZeroSet zero_cascade(const coeffs::CoefficientFamily& fam, int n, int N,
                     const CascadeOptions& opt) {
    if (n < 1) throw ValidationError("zero_cascade needs n >= 1");
    if (N < 1) throw ValidationError("zero_cascade needs N >= 1");
    ZeroSet zs;
    zs.n = n;
    zs.N = N;
    zs.scale_factor = fam.scale_factor(N);
    if (fam.is_identically_zero()) {
        // P_n = x^n: the n-fold zero at the origin
        zs.zeros.assign(n, 0.0);
        zs.bound_R = 1.0;
        zs.real_simple = (n == 1);
        zs.interlaced_with_prev = (n == 1);
        return zs;
    }
    zs.bound_R = spectral_bound(fam, n, N);
    CoeffTable tab = CoeffTable::build(fam, n, N);
    CascadeRun run = run_cascade(tab, n, zs.bound_R, opt, false);
    zs.zeros = std::move(run.final_zeros);
    zs.real_simple = run.all_real_simple;
    zs.interlaced_with_prev = run.final_interlaced;
    return zs;
}

HypothesisReport validate_hypotheses(const coeffs::CoefficientFamily& fam, int n_max, int N,
                                     const CascadeOptions& opt) {
    HypothesisReport rep;
    rep.n_max = n_max;
    rep.N = N;
    if (fam.is_identically_zero()) {
        rep.degenerate_dirac = true;
        rep.all_real_simple = (n_max <= 1);
        rep.all_interlaced = (n_max <= 1);
        rep.worst_margin = 0.0;
        return rep;
    }
    double R = spectral_bound(fam, n_max, N);
    CoeffTable tab = CoeffTable::build(fam, n_max, N);
    CascadeRun run = run_cascade(tab, n_max, R, opt, true);
    rep.all_real_simple = run.all_real_simple;
    rep.all_interlaced = run.all_interlaced;
    rep.worst_margin = run.worst_margin;
    rep.levels_with_recovery = run.levels_with_recovery;
    rep.offending_levels = std::move(run.offenders);
    return rep;
}

EmpiricalMeasure empirical_measure(const ZeroSet& zs, const coeffs::CoefficientFamily& fam) {
    (void)fam;  // zeros are already in rescaled coordinates
    EmpiricalMeasure em;
    em.atoms = zs.zeros;
    std::sort(em.atoms.begin(), em.atoms.end());
    return em;
}

std::complex<double> log_derivative_from_zeros(const ZeroSet& zs, std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (double x : zs.zeros) acc += 1.0 / (z - x);
    return acc / static_cast<double>(zs.zeros.size());
}

void write_zeros_csv(std::ostream& out, const ZeroSet& zs) {
    out << "k_level,j_index,zero,rescaled_zero\n";
    char buf[128];
    for (std::size_t j = 0; j < zs.zeros.size(); ++j) {
        double rescaled = zs.zeros[j];
        double original = rescaled * zs.scale_factor;
        std::snprintf(buf, sizeof buf, "%d,%zu,%.17g,%.17g\n", zs.n, j + 1, original, rescaled);
        out << buf;
    }
}

}  // namespace fourterm::zeros
