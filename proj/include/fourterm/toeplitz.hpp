#ifndef FOURTERM_TOEPLITZ_HPP
#define FOURTERM_TOEPLITZ_HPP

#include <span>
#include <vector>

#include "fourterm/measures.hpp"
#include "fourterm/polycore.hpp"

namespace fourterm::toeplitz {

using Matrix = std::vector<std::vector<double>>;

// n x n banded Toeplitz matrix with (3b, 3b^2, b^3) below the diagonal and 1
// above, b = 4 alpha / 27.
Matrix build_T(double alpha, int n);
// (n+1) x (n+1) unit-superdiagonal-free factor version and its bidiagonal
// cube root
Matrix build_T_tilde(double alpha, int n);
Matrix build_A_tilde(double alpha, int n);

Matrix matmul(const Matrix& a, const Matrix& b);
double det_dense(Matrix m);  // LU with partial pivoting

// (-beta)^n (1 + 3n/2 + n^2/2)
double qn_at_zero(double alpha, int n);
polycore::ScaledValue qn_at_zero_scaled(double alpha, int n);

bool tn_nonsingular_check(double alpha, int n);

struct TNReport {
    int n = 0;
    long long minors_checked = 0;
    double min_minor = 0.0;
    bool all_nonnegative = false;
    bool exhaustive = false;  // full enumeration (n <= 6) vs random sampling
    double min_minor_A = 0.0;
};

// Exhaustive minor enumeration of A~ and T~ = A~^3 for n <= 6; random
// sampling of 10^4 minors beyond that.
TNReport total_nonnegativity_smalln(double alpha, int n, unsigned long long seed = 12345);

double charpoly_via_det(double alpha, int n, double x);  // det(xI - T_n)

// zeros of Q_n via the cascade, KS distance against upsilon_{[0,alpha]}
std::vector<measures::KSReport> toeplitz_limit_check(double alpha, std::span<const int> schedule);

}  // namespace fourterm::toeplitz

#endif
