#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "redform/error.hpp"
#include "redform/gauss_rational.hpp"

namespace redform {

/// Dense univariate polynomial over Q(i), coefficients in ascending degree.
/// The zero polynomial has no coefficients; there is never a trailing zero.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(GaussRational c) {  // NOLINT(implicit)
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    UniPoly(long c) : UniPoly(GaussRational(c)) {}  // NOLINT(implicit)
    explicit UniPoly(std::vector<GaussRational> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<GaussRational> coeffs) : c_(coeffs) { trim(); }

    /// The monomial c*x^k.
    static UniPoly monomial(GaussRational c, std::size_t k) {
        if (c.is_zero()) return {};
        std::vector<GaussRational> v(k + 1);
        v[k] = std::move(c);
        return UniPoly(std::move(v));
    }
    static UniPoly x() { return monomial(1, 1); }

    const std::vector<GaussRational>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    /// Degree; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    GaussRational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussRational(); }
    GaussRational lead() const { return c_.empty() ? GaussRational() : c_.back(); }
    /// Lowest power of x with a nonzero coefficient (0 for the zero polynomial).
    std::size_t valuation() const {
        std::size_t k = 0;
        while (k < c_.size() && c_[k].is_zero()) ++k;
        return c_.empty() ? 0 : k;
    }

    GaussRational eval(const GaussRational& at) const {
        GaussRational r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r *= at;
            r += *it;
        }
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<GaussRational> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussRational(static_cast<long>(k));
        return UniPoly(std::move(d));
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        GaussRational inv = lead().inverse();
        return *this * inv;
    }

    /// p(x + a), the Taylor shift.
    UniPoly shift(const GaussRational& a) const {
        if (a.is_zero() || c_.size() <= 1) return *this;
        std::vector<GaussRational> r = c_;
        const std::size_t n = r.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j) r[j - 1] += a * r[j];
        return UniPoly(std::move(r));
    }

    /// p(x^k).
    UniPoly compose_power(std::size_t k) const {
        if (k == 1 || c_.empty()) return *this;
        std::vector<GaussRational> r((c_.size() - 1) * k + 1);
        for (std::size_t j = 0; j < c_.size(); ++j) r[j * k] = c_[j];
        return UniPoly(std::move(r));
    }

    /// x^deg * p(1/x) for deg >= degree().
    UniPoly reversed(std::size_t deg) const {
        std::vector<GaussRational> r(deg + 1);
        for (std::size_t j = 0; j < c_.size(); ++j) r[deg - j] = c_[j];
        return UniPoly(std::move(r));
    }

    UniPoly truncated(std::size_t len) const {
        if (c_.size() <= len) return *this;
        return UniPoly(std::vector<GaussRational>(c_.begin(), c_.begin() + static_cast<long>(len)));
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    UniPoly& operator*=(const GaussRational& s) {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_) c *= s;
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const GaussRational& s) { return a *= s; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussRational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division: returns (q, r) with a = q*b + r, deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw MathError("polynomial division by zero");
        if (a.degree() < b.degree()) return {UniPoly(), a};
        std::vector<GaussRational> rem = a.c_;
        const std::size_t db = b.c_.size() - 1;
        std::vector<GaussRational> q(rem.size() - db);
        GaussRational inv = b.lead().inverse();
        for (std::size_t k = rem.size(); k-- > db;) {
            if (rem[k].is_zero()) continue;
            GaussRational f = rem[k] * inv;
            for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c_[j];
            q[k - db] = std::move(f);
        }
        rem.resize(db);
        return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
    }

    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

    /// Exact division; throws if b does not divide a.
    static UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw MathError("inexact polynomial division");
        return q;
    }

    /// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = a % b;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }

    /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
    static std::tuple<UniPoly, UniPoly, UniPoly> xgcd(const UniPoly& a, const UniPoly& b) {
        UniPoly r0 = a, r1 = b, s0 = 1, s1, t0, t1 = 1;
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            UniPoly s2 = s0 - q * s1;
            s0 = std::move(s1);
            s1 = std::move(s2);
            UniPoly t2 = t0 - q * t1;
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.is_zero()) return {UniPoly(), UniPoly(), UniPoly()};
        GaussRational inv = r0.lead().inverse();
        return {r0 * inv, s0 * inv, t0 * inv};
    }

    static UniPoly lcm(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return (exact_div(a, gcd(a, b)) * b).monic();
    }

    /// Inverse of a modulo m; throws when gcd(a, m) != 1.
    static UniPoly inverse_mod(const UniPoly& a, const UniPoly& m) {
        auto [g, s, t] = xgcd(a % m, m);
        if (g.degree() != 0) throw MathError("polynomial not invertible modulo factor");
        return s % m;
    }

    static UniPoly power(const UniPoly& base, std::size_t e) {
        UniPoly r = 1, b = base;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    /// Squarefree decomposition of a monic polynomial: (f_1, f_2, ...) with
    /// p = prod f_k^k, pairwise coprime and squarefree (Yun's algorithm).
    static std::vector<UniPoly> squarefree(const UniPoly& p) {
        std::vector<UniPoly> out;
        if (p.degree() <= 0) return out;
        UniPoly a = p.monic();
        UniPoly b = a.derivative();
        UniPoly c = gcd(a, b);
        UniPoly w = exact_div(a, c);
        UniPoly y = exact_div(b, c);
        UniPoly z = y - w.derivative();
        while (w.degree() > 0) {
            UniPoly g = gcd(w, z);
            out.push_back(g);
            w = exact_div(w, g);
            y = exact_div(z, g);
            z = y - w.derivative();
        }
        while (!out.empty() && out.back().degree() == 0) out.pop_back();
        return out;
    }

    /// Renders in the expression grammar with the given variable name.
    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const GaussRational& c = c_[k];
            if (c.is_zero()) continue;
            bool neg = false;
            GaussRational a = c;
            if (c.is_real() && sgn(c.re()) < 0) {
                neg = true;
                a = -c;
            } else if (sgn(c.re()) == 0 && sgn(c.im()) < 0) {
                neg = true;
                a = -c;
            }
            if (first) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            first = false;
            std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            if (k == 0) s += a.str();
            else if (a.is_one()) s += mono;
            else s += a.str() + "*" + mono;
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<GaussRational> c_;
};

}  // namespace redform
