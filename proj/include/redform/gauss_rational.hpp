#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

#include "redform/error.hpp"

namespace redform {

/// Element re + i*im of the Gaussian rationals Q(i), the constant field of
/// every system handled by the library. Both parts are kept canonical by GMP.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long v) : re_(v), im_(0) {}  // NOLINT(implicit)
    GaussRational(mpq_class re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
    GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRational i() { return GaussRational(mpq_class(0), mpq_class(1)); }
    static GaussRational ratio(long num, long den) {
        if (den == 0) throw MathError("zero denominator in rational constant");
        mpq_class q(num, den);
        q.canonicalize();
        return GaussRational(q);
    }

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const noexcept { return sgn(im_) == 0 && re_ == 1; }
    bool is_real() const noexcept { return sgn(im_) == 0; }
    bool is_integer() const { return is_real() && re_.get_den() == 1; }

    GaussRational conj() const { return GaussRational(re_, -im_); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRational inverse() const {
        if (is_zero()) throw MathError("division by zero constant");
        mpq_class n = norm();
        return GaussRational(re_ / n, -im_ / n);
    }

    GaussRational operator-() const { return GaussRational(-re_, -im_); }

    GaussRational& operator+=(const GaussRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        if (is_real()) {
            mpq_class r = re_;
            re_ = r * o.re_;
            im_ = r * o.im_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class s = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(s);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o) {
        if (o.is_real()) {
            if (sgn(o.re_) == 0) throw MathError("division by zero constant");
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        return *this *= o.inverse();
    }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Total order (re first, then im) used only for deterministic sorting.
    friend bool lex_less(const GaussRational& a, const GaussRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    /// Renders in the expression grammar: "3", "-1/2", "i", "(1/2 - 3*i)".
    std::string str() const {
        std::ostringstream os;
        if (sgn(im_) == 0) {
            os << re_;
            return os.str();
        }
        auto imag_part = [&](const mpq_class& v, bool leading) {
            mpq_class a = abs(v);
            std::string s;
            if (sgn(v) < 0) s += leading ? "-" : " - ";
            else if (!leading) s += " + ";
            if (a == 1) s += "i";
            else s += a.get_str() + "*i";
            return s;
        };
        if (sgn(re_) == 0) return imag_part(im_, true);
        os << "(" << re_ << imag_part(im_, false) << ")";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussRational& c) { return os << c.str(); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Floor of a nonnegative-or-negative rational, as an exact integer.
inline mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace redform
