#include "fourterm/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fourterm/errors.hpp"
#include "fourterm/zeros.hpp"

namespace fourterm::toeplitz {

namespace {
double beta_of(double alpha) {
    if (!(alpha > 0.0)) throw ValidationError("toeplitz needs alpha > 0");
    return 4.0 * alpha / 27.0;
}
}  // namespace

Matrix build_T(double alpha, int n) {
    double b = beta_of(alpha);
    Matrix T(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        T[i][i] = 3.0 * b;
        if (i + 1 < n) T[i][i + 1] = 1.0;
        if (i >= 1) T[i][i - 1] = 3.0 * b * b;
        if (i >= 2) T[i][i - 2] = b * b * b;
    }
    return T;
}

Matrix build_T_tilde(double alpha, int n) {
    double b = beta_of(alpha);
    Matrix T(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i <= n; ++i) {
        T[i][i] = 1.0;
        if (i >= 1) T[i][i - 1] = 3.0 * b;
        if (i >= 2) T[i][i - 2] = 3.0 * b * b;
        if (i >= 3) T[i][i - 3] = b * b * b;
    }
    return T;
}

Matrix build_A_tilde(double alpha, int n) {
    double b = beta_of(alpha);
    Matrix A(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i <= n; ++i) {
        A[i][i] = 1.0;
        if (i >= 1) A[i][i - 1] = b;
    }
    return A;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    std::size_t n = a.size(), m = b[0].size(), k = b.size();
    Matrix c(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            double av = a[i][l];
            if (av == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += av * b[l][j];
        }
    return c;
}

double det_dense(Matrix m) {
    int n = static_cast<int>(m.size());
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            double f = m[r][col] / m[col][col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

double qn_at_zero(double alpha, int n) {
    double b = beta_of(alpha);
    double poly = 1.0 + 1.5 * n + 0.5 * static_cast<double>(n) * n;
    return std::pow(-b, n) * poly;
}

polycore::ScaledValue qn_at_zero_scaled(double alpha, int n) {
    double b = beta_of(alpha);
    if (n == 0) return polycore::ScaledValue::one();
    double poly = 1.0 + 1.5 * n + 0.5 * static_cast<double>(n) * n;
    int sign = (n % 2 == 0) ? 1 : -1;
    return {sign, n * std::log(b) + std::log(poly)};
}

bool tn_nonsingular_check(double alpha, int n) { return qn_at_zero_scaled(alpha, n).sign != 0; }

namespace {

double minor_det(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    int k = static_cast<int>(rows.size());
    Matrix sub(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[i][j] = m[rows[i]][cols[j]];
    return det_dense(std::move(sub));
}

// visit all k-subsets of {0..n-1}
template <typename F>
void for_each_subset(int n, int k, F&& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

TNReport total_nonnegativity_smalln(double alpha, int n, unsigned long long seed) {
    TNReport rep;
    rep.n = n;
    Matrix A = build_A_tilde(alpha, n);
    Matrix T = matmul(matmul(A, A), A);  // T~ = A~^3
    int dim = n + 1;
    rep.min_minor = std::numeric_limits<double>::infinity();
    rep.min_minor_A = std::numeric_limits<double>::infinity();
    if (n <= 6) {
        rep.exhaustive = true;
        for (int k = 1; k <= dim; ++k) {
            std::vector<std::vector<int>> row_sets;
            for_each_subset(dim, k, [&](const std::vector<int>& r) { row_sets.push_back(r); });
            for (const auto& r : row_sets)
                for (const auto& c : row_sets) {
                    rep.min_minor = std::min(rep.min_minor, minor_det(T, r, c));
                    rep.min_minor_A = std::min(rep.min_minor_A, minor_det(A, r, c));
                    rep.minors_checked += 2;
                }
        }
    } else {
        rep.exhaustive = false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> ksize(1, dim);
        for (int trial = 0; trial < 10000; ++trial) {
            int k = ksize(rng);
            std::vector<int> all(dim);
            for (int i = 0; i < dim; ++i) all[i] = i;
            std::vector<int> rows = all, cols = all;
            std::shuffle(rows.begin(), rows.end(), rng);
            std::shuffle(cols.begin(), cols.end(), rng);
            rows.resize(k);
            cols.resize(k);
            std::sort(rows.begin(), rows.end());
            std::sort(cols.begin(), cols.end());
            rep.min_minor = std::min(rep.min_minor, minor_det(T, rows, cols));
            rep.min_minor_A = std::min(rep.min_minor_A, minor_det(A, rows, cols));
            rep.minors_checked += 2;
        }
    }
    rep.all_nonnegative = rep.min_minor >= -1e-10 && rep.min_minor_A >= -1e-10;
    return rep;
}

double charpoly_via_det(double alpha, int n, double x) {
    Matrix m = build_T(alpha, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = (i == j ? x : 0.0) - m[i][j];
    return det_dense(std::move(m));
}

std::vector<measures::KSReport> toeplitz_limit_check(double alpha, std::span<const int> schedule) {
    auto fam = coeffs::make_constant_family(alpha);
    auto limit = measures::LimitMeasure::upsilon_alpha(alpha);
    std::vector<measures::KSReport> out;
    for (int n : schedule) {
        auto zs = zeros::zero_cascade(fam, n, 1);
        out.push_back(measures::ks_statistic(zeros::empirical_measure(zs, fam), limit));
    }
    return out;
}

}  // namespace fourterm::toeplitz
