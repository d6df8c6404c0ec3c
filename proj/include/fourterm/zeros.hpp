#ifndef FOURTERM_ZEROS_HPP
#define FOURTERM_ZEROS_HPP

#include <complex>
#include <iosfwd>
#include <vector>

#include "fourterm/coeffs.hpp"
#include "fourterm/polycore.hpp"

namespace fourterm::zeros {

struct ZeroSet {
    int n = 0;
    int N = 1;
    std::vector<double> zeros;  // rescaled coordinates, strictly increasing
    double bound_R = 0.0;
    bool real_simple = false;
    bool interlaced_with_prev = false;
    double scale_factor = 1.0;  // N^{scale_exponent}; original = zeros * scale_factor
};

// R = sup_{k <= n} (1 + |b_k| + |c_k| + |d_k|) over the rescaled coefficients.
double spectral_bound(const coeffs::CoefficientFamily& fam, int n, int N);

struct CascadeOptions {
    // When a level-k bracket shows no sign change, subdivide brackets until
    // all k zeros reappear instead of failing outright; the level is then
    // recorded as not interlacing.
    bool allow_recovery = true;
    int max_recovery_depth = 52;
    double abs_tol = 1e-13;  // bisection window, absolute (zeros live in [-R, R])
    int newton_steps = 5;
};

ZeroSet zero_cascade(const coeffs::CoefficientFamily& fam, int n, int N,
                     const CascadeOptions& opt = {});

struct LevelReport {
    int level = 0;
    bool interlaced = true;
    int recovered_zeros = 0;
    double min_margin = 0.0;  // min gap between this level's and previous level's zeros
};

struct HypothesisReport {
    int n_max = 0;
    int N = 1;
    bool all_real_simple = false;
    bool all_interlaced = false;
    bool degenerate_dirac = false;  // alpha == 0 short-circuit
    double worst_margin = 0.0;
    int levels_with_recovery = 0;
    std::vector<LevelReport> offending_levels;
};

HypothesisReport validate_hypotheses(const coeffs::CoefficientFamily& fam, int n_max, int N,
                                     const CascadeOptions& opt = {});

struct EmpiricalMeasure {
    std::vector<double> atoms;  // sorted; each carries weight 1/n
    int n() const { return static_cast<int>(atoms.size()); }
};

EmpiricalMeasure empirical_measure(const ZeroSet& zs, const coeffs::CoefficientFamily& fam);

// (1/n) sum_j 1/(z - x_j), the zero-sum route to the log-derivative.
std::complex<double> log_derivative_from_zeros(const ZeroSet& zs, std::complex<double> z);

// CSV rows (k_level, j_index, zero, rescaled_zero); zero is in original
// coordinates, rescaled_zero in pipeline coordinates.
void write_zeros_csv(std::ostream& out, const ZeroSet& zs);

}  // namespace fourterm::zeros

#endif
