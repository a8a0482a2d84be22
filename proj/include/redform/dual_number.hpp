#pragma once

#include "redform/error.hpp"
#include "redform/matrix.hpp"

namespace redform {

/// a + eps*b with eps^2 = 0, over a field T.
template <typename T>
class DualNumber {
public:
    DualNumber() : a_(0L), b_(0L) {}
    DualNumber(long v) : a_(v), b_(0L) {}  // NOLINT(implicit)
    DualNumber(T a, T b = T(0L)) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT(implicit)

    const T& real() const noexcept { return a_; }
    const T& eps() const noexcept { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    DualNumber operator-() const { return {-a_, -b_}; }
    DualNumber& operator+=(const DualNumber& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    DualNumber& operator-=(const DualNumber& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    friend DualNumber operator+(DualNumber x, const DualNumber& y) { return x += y; }
    friend DualNumber operator-(DualNumber x, const DualNumber& y) { return x -= y; }
    friend DualNumber operator*(const DualNumber& x, const DualNumber& y) {
        return {x.a_ * y.a_, x.a_ * y.b_ + x.b_ * y.a_};
    }
    /// Division requires an invertible real part.
    friend DualNumber operator/(const DualNumber& x, const DualNumber& y) {
        if (y.a_.is_zero()) throw MathError("dual number with zero real part is not invertible");
        T inv = T(1L) / y.a_;
        return {x.a_ * inv, (x.b_ * y.a_ - x.a_ * y.b_) * inv * inv};
    }
    friend bool operator==(const DualNumber& x, const DualNumber& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

private:
    T a_;
    T b_;
};

template <typename T>
bool is_invertible_scalar(const DualNumber<T>& v) {
    return !v.real().is_zero();
}

/// Matrix a + eps*b.
template <typename T>
struct DualNumberMatrix {
    Matrix<T> a;
    Matrix<T> b;

    Matrix<DualNumber<T>> combined() const {
        if (a.rows() != b.rows() || a.cols() != b.cols()) throw MathError("dual matrix parts differ in shape");
        Matrix<DualNumber<T>> m(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = DualNumber<T>(a(i, j), b(i, j));
        return m;
    }

    static DualNumberMatrix split(const Matrix<DualNumber<T>>& m) {
        DualNumberMatrix r{Matrix<T>(m.rows(), m.cols()), Matrix<T>(m.rows(), m.cols())};
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                r.a(i, j) = m(i, j).real();
                r.b(i, j) = m(i, j).eps();
            }
        return r;
    }
};

}  // namespace redform
