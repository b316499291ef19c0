#pragma once

// Dense matrices over a commutative ring and division-free characteristic
// polynomials (Berkowitz).

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "specrig/exact/rational.hpp"

namespace specrig {

template <class R>
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<R>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw MathError("ragged matrix literal");
            for (const auto& x : r) a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n, const R& one = R(1)) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        check_same(x, y);
        Matrix r(x.rows_, x.cols_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        check_same(x, y);
        Matrix r(x.rows_, x.cols_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw MathError("matrix shape mismatch in product");
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const R& xik = x(i, k);
                if (is_zero(xik)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + xik * y(k, j);
            }
        return r;
    }
    friend Matrix operator*(const R& s, const Matrix& x) {
        Matrix r(x.rows_, x.cols_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = s * x.a_[k];
        return r;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    template <class S, class Fn>
    Matrix<S> map(Fn&& fn) const {
        Matrix<S> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = fn((*this)(i, j));
        return r;
    }

    bool all_zero() const {
        for (const auto& x : a_)
            if (!is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (std::size_t k = 0; k < x.a_.size(); ++k)
            if (!(x.a_[k] == y.a_[k])) return false;
        return true;
    }

   private:
    static void check_same(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw MathError("matrix shape mismatch");
    }
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<R> a_;
};

/// Coefficients of det(xI - M), leading first: result[0] = 1, result[n] = (-1)^n det M.
template <class R>
std::vector<R> berkowitz(const Matrix<R>& M, const R& one = R(1)) {
    if (!M.square()) throw MathError("characteristic polynomial of a non-square matrix");
    const std::size_t n = M.rows();
    if (n == 0) return {one};
    // C holds the coefficients for the leading r x r principal submatrix.
    std::vector<R> C = {one, -M(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // A = M[0..r-1][0..r-1], R = M[r][0..r-1], S = M[0..r-1][r], a = M[r][r].
        std::vector<R> t;
        t.reserve(r + 2);
        t.push_back(one);
        t.push_back(-M(r, r));
        std::vector<R> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = M(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            R dot = R();
            for (std::size_t i = 0; i < r; ++i) dot = dot + M(r, i) * v[i];
            t.push_back(-dot);
            if (k + 1 < r) {
                std::vector<R> w(r);
                for (std::size_t i = 0; i < r; ++i) {
                    R s = R();
                    for (std::size_t j = 0; j < r; ++j) s = s + M(i, j) * v[j];
                    w[i] = std::move(s);
                }
                v = std::move(w);
            }
        }
        // Toeplitz (r+2) x (r+1) lower-triangular product with C.
        std::vector<R> next(r + 2);
        for (std::size_t i = 0; i < r + 2; ++i) {
            R s = R();
            for (std::size_t j = 0; j <= r && j <= i; ++j) s = s + t[i - j] * C[j];
            next[i] = std::move(s);
        }
        C = std::move(next);
    }
    return C;
}

template <class R>
R determinant(const Matrix<R>& M, const R& one = R(1)) {
    auto c = berkowitz(M, one);
    R d = c.back();
    if (M.rows() % 2 == 1) d = -d;
    return d;
}

}  // namespace specrig
