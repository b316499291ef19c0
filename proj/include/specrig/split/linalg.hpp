#pragma once

// Exact linear algebra over a field: solving, inversion, kernels.

#include <cstddef>
#include <optional>
#include <vector>

#include "specrig/exact/matrix.hpp"

namespace specrig {

/// Reduced row echelon form in place; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& M) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < M.cols() && row < M.rows(); ++col) {
        std::size_t p = row;
        while (p < M.rows() && is_zero(M(p, col))) ++p;
        if (p == M.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(p, j), M(row, j));
        K inv = K(1) / M(row, col);
        for (std::size_t j = col; j < M.cols(); ++j) M(row, j) = M(row, j) * inv;
        for (std::size_t i = 0; i < M.rows(); ++i) {
            if (i == row || is_zero(M(i, col))) continue;
            K f = M(i, col);
            for (std::size_t j = col; j < M.cols(); ++j) M(i, j) = M(i, j) - f * M(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Basis of the right kernel, as columns.
template <class K>
std::vector<std::vector<K>> kernel(Matrix<K> M) {
    auto piv = rref(M);
    std::vector<bool> is_pivot(M.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t f = 0; f < M.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<K> v(M.cols());
        v[f] = K(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -M(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Unique solution of M x = b; nullopt if M is singular.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& M, const std::vector<K>& b) {
    const std::size_t n = M.rows();
    Matrix<K> aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
    std::vector<K> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& M) {
    const std::size_t n = M.rows();
    Matrix<K> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
        aug(i, n + i) = K(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    return aug.block(0, n, n, n);
}

}  // namespace specrig
