#pragma once

#include <string>
#include <utility>
#include <vector>

#include "redform/error.hpp"
#include "redform/unipoly.hpp"

namespace redform {

/// Element of k = Q(i)(x): a reduced fraction with monic denominator.
/// Since the representation is canonical, equality is structural.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(GaussRational c) : num_(std::move(c)), den_(1) {}  // NOLINT(implicit)
    RatFunc(long c) : num_(c), den_(1) {}                      // NOLINT(implicit)
    RatFunc(UniPoly p) : num_(std::move(p)), den_(1) {}        // NOLINT(implicit)
    RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc x() { return RatFunc(UniPoly::x()); }

    const UniPoly& num() const noexcept { return num_; }
    const UniPoly& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.lead().is_one(); }
    bool is_constant() const noexcept { return den_.degree() == 0 && num_.degree() <= 0; }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    GaussRational constant_value() const {
        if (!is_constant()) throw MathError("rational function is not constant");
        return num_.coeff(0);
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        if (a.is_polynomial()) return raw(a.num_ * b.den_ + b.num_, b.den_);
        if (b.is_polynomial()) return raw(a.num_ + b.num_ * a.den_, a.den_);
        UniPoly g = UniPoly::gcd(a.den_, b.den_);
        UniPoly ad = UniPoly::exact_div(a.den_, g);
        UniPoly bd = UniPoly::exact_div(b.den_, g);
        return RatFunc(a.num_ * bd + b.num_ * ad, ad * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        if (a.is_constant()) return a.scaled(b);
        if (b.is_constant()) return b.scaled(a);
        UniPoly g1 = UniPoly::gcd(a.num_, b.den_);
        UniPoly g2 = UniPoly::gcd(b.num_, a.den_);
        return RatFunc::raw(UniPoly::exact_div(a.num_, g1) * UniPoly::exact_div(b.num_, g2),
                            UniPoly::exact_div(a.den_, g2) * UniPoly::exact_div(b.den_, g1));
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc inverse() const {
        if (is_zero()) throw MathError("division by zero rational function");
        return RatFunc(den_, num_);
    }

    /// Quotient-rule derivative d/dx.
    RatFunc derivative() const {
        if (is_polynomial()) return RatFunc(num_.derivative() * den_.lead().inverse());
        // (n/d)' = (n'd - nd')/d^2; with g = gcd(d, d') the factor g cancels.
        UniPoly dd = den_.derivative();
        UniPoly g = UniPoly::gcd(den_, dd);
        UniPoly dg = UniPoly::exact_div(den_, g);
        UniPoly ddg = UniPoly::exact_div(dd, g);
        return RatFunc(num_.derivative() * dg - num_ * ddg, dg * den_);
    }

    GaussRational eval(const GaussRational& at) const {
        GaussRational d = den_.eval(at);
        if (d.is_zero()) throw MathError("evaluation at a pole x = " + at.str());
        return num_.eval(at) / d;
    }

    /// f(t^k).
    RatFunc compose_power(std::size_t k) const {
        RatFunc r;
        r.num_ = num_.compose_power(k);
        r.den_ = den_.compose_power(k);
        return r;
    }

    /// f(x + a).
    RatFunc shift(const GaussRational& a) const {
        RatFunc r;
        r.num_ = num_.shift(a);
        r.den_ = den_.shift(a);
        return r;
    }

    /// Renders in the expression grammar.
    std::string str(const std::string& var = "x") const {
        if (is_polynomial()) return num_.str(var);
        std::string n = num_.str(var);
        std::string d = den_.str(var);
        if (num_.is_constant() && num_.coeff(0).is_real() && num_.coeff(0).re().get_den() != 1) {
            // 1/(2*x) rather than (1/2)/x
            const mpq_class q = num_.coeff(0).re();
            if (d.find(' ') != std::string::npos) d = "(" + d + ")";
            return q.get_num().get_str() + "/(" + q.get_den().get_str() + "*" + d + ")";
        }
        if (n.find_first_of(" /") != std::string::npos) n = "(" + n + ")";
        if (d.find_first_of(" */") != std::string::npos) d = "(" + d + ")";
        return n + "/" + d;
    }

    /// Builds from a numerator/denominator pair already known to be coprime.
    static RatFunc raw(UniPoly num, UniPoly den) {
        RatFunc r;
        if (num.is_zero()) return r;
        GaussRational lc = den.lead();
        if (!lc.is_one()) {
            GaussRational inv = lc.inverse();
            num *= inv;
            den *= inv;
        }
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

private:
    RatFunc scaled(const RatFunc& other) const {
        RatFunc r = other;
        r.num_ *= num_.coeff(0);
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw MathError("zero denominator in rational function");
        if (num_.is_zero()) {
            den_ = UniPoly(1);
            return;
        }
        if (den_.degree() > 0) {
            UniPoly g = UniPoly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = UniPoly::exact_div(num_, g);
                den_ = UniPoly::exact_div(den_, g);
            }
        }
        GaussRational lc = den_.lead();
        if (!lc.is_one()) {
            GaussRational inv = lc.inverse();
            num_ *= inv;
            den_ *= inv;
        }
    }

    UniPoly num_;
    UniPoly den_;
};

/// ratfunc_normalize: canonical fraction num/den.
inline RatFunc normalize(UniPoly num, UniPoly den) { return RatFunc(std::move(num), std::move(den)); }

/// Taylor coefficients c_0..c_order of f at z0, computed exactly by power
/// series division after shifting the expansion point to the origin.
inline std::vector<GaussRational> series_expand(const RatFunc& f, const GaussRational& z0, std::size_t order) {
    UniPoly n = f.num().shift(z0);
    UniPoly d = f.den().shift(z0);
    GaussRational d0 = d.coeff(0);
    if (d0.is_zero()) throw MathError("series expansion at a pole: x = " + z0.str() + " is a root of " + f.den().str());
    GaussRational inv = d0.inverse();
    std::vector<GaussRational> c(order + 1);
    for (std::size_t k = 0; k <= order; ++k) {
        GaussRational s = n.coeff(k);
        const std::size_t lim = std::min<std::size_t>(k, static_cast<std::size_t>(std::max(0L, d.degree())));
        for (std::size_t j = 1; j <= lim; ++j) s -= d.coeff(j) * c[k - j];
        c[k] = s * inv;
    }
    return c;
}

}  // namespace redform
