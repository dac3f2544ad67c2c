// complex_linalg.hpp - dense complex LU with partial pivoting for small systems
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"

namespace giantatom {

using cdouble = std::complex<double>;

struct LuDecomposition {
    int n = 0;
    std::vector<cdouble> lu;   // row-major, L (unit diagonal) and U packed
    std::vector<int> pivot;    // row swapped with k at step k
};

inline LuDecomposition lu_factor(std::vector<cdouble> a, int n) {
    LuDecomposition f;
    f.n = n;
    f.pivot.resize(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[k * n + k]);
        for (int r = k + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + k]);
            if (v > best) {
                best = v;
                p = r;
            }
        }
        f.pivot[k] = p;
        if (p != k)
            for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[p * n + c]);
        if (best == 0.0) throw singular_system_error("exactly singular matrix (zero pivot)");
        const cdouble inv_piv = 1.0 / a[k * n + k];
        for (int r = k + 1; r < n; ++r) {
            const cdouble m = a[r * n + k] * inv_piv;
            a[r * n + k] = m;
            for (int c = k + 1; c < n; ++c) a[r * n + c] -= m * a[k * n + c];
        }
    }
    f.lu = std::move(a);
    return f;
}

inline void lu_solve_in_place(const LuDecomposition& f, std::vector<cdouble>& b) {
    const int n = f.n;
    // rows were swapped in full during factorization; permute first
    for (int k = 0; k < n; ++k)
        if (f.pivot[k] != k) std::swap(b[k], b[f.pivot[k]]);
    for (int k = 0; k < n; ++k)
        for (int r = k + 1; r < n; ++r) b[r] -= f.lu[r * n + k] * b[k];
    for (int k = n - 1; k >= 0; --k) {
        for (int c = k + 1; c < n; ++c) b[k] -= f.lu[k * n + c] * b[c];
        b[k] /= f.lu[k * n + k];
    }
}

inline double matrix_inf_norm(const std::vector<cdouble>& a, int n) {
    double norm = 0.0;
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += std::abs(a[r * n + c]);
        norm = std::max(norm, s);
    }
    return norm;
}

// ‖A‖∞·‖A⁻¹‖∞ with the inverse built column by column; systems here are tiny.
inline double condition_estimate(const std::vector<cdouble>& a, const LuDecomposition& f) {
    const int n = f.n;
    std::vector<double> inv_row_sums(n, 0.0);
    std::vector<cdouble> col(n);
    for (int j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), cdouble(0.0));
        col[j] = 1.0;
        lu_solve_in_place(f, col);
        for (int r = 0; r < n; ++r) inv_row_sums[r] += std::abs(col[r]);
    }
    const double inv_norm = *std::max_element(inv_row_sums.begin(), inv_row_sums.end());
    return matrix_inf_norm(a, n) * inv_norm;
}

} // namespace giantatom
