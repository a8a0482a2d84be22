#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "redform/error.hpp"

namespace redform {

template <typename T>
class Matrix;

/// Matrix product; specialized for scalar types with a faster route.
template <typename T>
struct MatrixProduct {
    static Matrix<T> run(const Matrix<T>& a, const Matrix<T>& b);
};

/// Dense row-major matrix over a commutative scalar type T. T needs the ring
/// operations, construction from long, and is_zero(); the elimination-based
/// routines further down additionally need division by nonzero pivots.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0L)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw MathError("ragged matrix initializer");
            for (const auto& v : row) a_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1L);
        return m;
    }

    /// Column vector from a list of entries.
    static Matrix column(const std::vector<T>& v) {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[check(i, j)]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[check(i, j)]; }

    const std::vector<T>& data() const noexcept { return a_; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    template <typename F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
        Matrix<decltype(f(std::declval<const T&>()))> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    Matrix& operator+=(const Matrix& o) {
        same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) { return MatrixProduct<T>::run(a, b); }
    friend Matrix operator*(const T& s, const Matrix& m) {
        Matrix r = m;
        for (auto& v : r.a_) v = s * v;
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw MathError("matrix-vector shape mismatch");
        std::vector<T> r(rows_, T(0L));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    T trace() const {
        T t(0L);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    /// Block-diagonal sum.
    friend Matrix direct_sum(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
        return r;
    }

    /// Kronecker product; basis e_i (x) f_j is ordered lexicographically in (i, j).
    friend Matrix kronecker(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                if (a(i, j).is_zero()) continue;
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        if (!b(k, l).is_zero()) r(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
            }
        return r;
    }

private:
    std::size_t check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw MathError("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of bounds");
        return i * cols_ + j;
    }
    void same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

/// Whether a scalar may serve as an elimination pivot. Rings with zero
/// divisors overload this (see DualNumber).
template <typename T>
Matrix<T> MatrixProduct<T>::run(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw MathError("matrix product shape mismatch");
    Matrix<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const T& bkj = b(k, j);
                if (bkj.is_zero()) continue;
                r(i, j) += aik * bkj;
            }
        }
    return r;
}

template <typename T>
bool is_invertible_scalar(const T& v) {
    return !v.is_zero();
}

template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}

/// Reduced row echelon form in place (pivot entries 1); returns pivot columns.
template <typename T>
std::vector<std::size_t> rref_in_place(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !is_invertible_scalar(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1L) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename T>
std::size_t rank(Matrix<T> m) {
    return rref_in_place(m).size();
}

/// Basis of the right kernel; each vector has a 1 at its free column and the
/// remaining free entries 0, i.e. the reduced echelon normalization.
template <typename T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
    auto pivots = rref_in_place(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), T(0L));
        v[f] = T(1L);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <typename T>
T determinant(Matrix<T> m) {
    if (!m.is_square()) throw MathError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    T det(1L);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && !is_invertible_scalar(m(p, c))) ++p;
        if (p == n) return T(0L);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det = det * m(c, c);
        T inv = T(1L) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            T f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Gauss-Jordan inverse; throws MathError on a singular matrix.
template <typename T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (!m.is_square()) throw MathError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = T(1L);
    }
    auto pivots = rref_in_place(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw MathError("matrix is singular");
    Matrix<T> r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

/// Fraction-free (Bareiss) determinant for integral domains with exact
/// division, provided through the callable div(a, b).
template <typename T, typename Div>
T bareiss_determinant(Matrix<T> m, Div&& div) {
    if (!m.is_square()) throw MathError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return T(1L);
    T prev(1L);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return T(0L);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
        prev = m(k, k);
    }
    T d = m(n - 1, n - 1);
    return negate ? -d : d;
}

}  // namespace redform
