#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace vfdeg {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void cross3(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
}

// LU with partial pivoting on a row-major n x n matrix, in place. Returns
// false on a vanishing pivot. det receives the determinant either way.
inline bool lu_factor(std::vector<double>& a, int n, std::vector<int>& perm, double& det) {
    perm.resize(static_cast<std::size_t>(n));
    det = 1.0;
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(col, j));
            std::swap(perm[static_cast<std::size_t>(piv)], perm[static_cast<std::size_t>(col)]);
            det = -det;
        }
        double p = at(col, col);
        det *= p;
        if (p == 0.0) return false;
        for (int r = col + 1; r < n; ++r) {
            double m = at(r, col) / p;
            at(r, col) = m;
            for (int j = col + 1; j < n; ++j) at(r, j) -= m * at(col, j);
        }
    }
    return true;
}

inline void lu_solve(const std::vector<double>& lu, int n, const std::vector<int>& perm,
                     std::vector<double>& b) {
    std::vector<double> y(static_cast<std::size_t>(n));
    auto at = [&](int i, int j) { return lu[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        for (int j = 0; j < i; ++j) s -= at(i, j) * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= at(i, j) * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(i)] = s / at(i, i);
    }
}

inline double det(std::vector<double> a, int n) {
    std::vector<int> perm;
    double d = 0.0;
    lu_factor(a, n, perm, d);
    return d;
}

} // namespace vfdeg
