#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "redform/error.hpp"
#include "redform/ratfunc.hpp"

namespace redform {

/// Polynomial in a fixed number of unknowns with coefficients in k = Q(i)(x).
/// Terms are keyed by exponent vectors; the ring has no knowledge of the
/// unknowns' names, which are supplied when printing.
class MPoly {
public:
    using Exponent = std::vector<unsigned>;

    MPoly() = default;
    MPoly(long c) : MPoly(RatFunc(c)) {}  // NOLINT(implicit)
    MPoly(const RatFunc& c) {             // NOLINT(implicit)
        if (!c.is_zero()) terms_.emplace(Exponent{}, c);
    }

    static MPoly variable(std::size_t k, std::size_t nvars) {
        if (k >= nvars) throw MathError("unknown index out of range");
        Exponent e(nvars, 0);
        e[k] = 1;
        MPoly p;
        p.terms_.emplace(normalize_exponent(std::move(e)), RatFunc(1L));
        return p;
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    const std::map<Exponent, RatFunc>& terms() const noexcept { return terms_; }

    unsigned total_degree() const {
        unsigned best = 0;
        for (const auto& [e, c] : terms_) {
            unsigned s = 0;
            for (unsigned k : e) s += k;
            best = std::max(best, s);
        }
        return best;
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    MPoly& operator+=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
        return r;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    /// Substitutes values[k] for the k-th unknown.
    MPoly substitute(const std::vector<MPoly>& values) const {
        MPoly r;
        for (const auto& [e, c] : terms_) {
            MPoly t(c);
            for (std::size_t k = 0; k < e.size(); ++k)
                for (unsigned p = 0; p < e[k]; ++p) t *= values.at(k);
            r += t;
        }
        return r;
    }

    /// Renders in the expression grammar; terms by descending total degree,
    /// then descending exponent vector.
    std::string str(const std::vector<std::string>& names, const std::string& var = "x") const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<const Exponent*, const RatFunc*>> order;
        for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
        std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            unsigned da = 0, db = 0;
            for (unsigned k : *a.first) da += k;
            for (unsigned k : *b.first) db += k;
            if (da != db) return da > db;
            return padded_greater(*a.first, *b.first);
        });
        std::string out;
        for (const auto& [e, c] : order) {
            std::string mon;
            for (std::size_t k = 0; k < e->size(); ++k) {
                if ((*e)[k] == 0) continue;
                if (!mon.empty()) mon += "*";
                mon += names.at(k);
                if ((*e)[k] > 1) mon += "^" + std::to_string((*e)[k]);
            }
            std::string coef = c->str(var);
            const std::string flipped = (-*c).str(var);
            const bool negative = coef.front() == '-' && coef.compare(1, std::string::npos, flipped) == 0;
            if (negative) coef = flipped;
            std::string term;
            if (coef.find(' ') != std::string::npos) coef = "(" + coef + ")";
            if (mon.empty()) term = coef;
            else if (coef == "1") term = mon;
            else term = coef + "*" + mon;
            if (out.empty()) out = negative ? "-" + term : term;
            else out += negative ? " - " + term : " + " + term;
        }
        return out;
    }

private:
    static Exponent add_exponents(const Exponent& a, const Exponent& b) {
        Exponent r(std::max(a.size(), b.size()), 0);
        for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
        for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
        return normalize_exponent(std::move(r));
    }
    static Exponent normalize_exponent(Exponent e) {
        while (!e.empty() && e.back() == 0) e.pop_back();
        return e;
    }
    static bool padded_greater(const Exponent& a, const Exponent& b) {
        for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
            unsigned x = k < a.size() ? a[k] : 0, y = k < b.size() ? b[k] : 0;
            if (x != y) return x > y;
        }
        return false;
    }
    void add_term(const Exponent& e, const RatFunc& c) {
        if (c.is_zero()) return;
        Exponent key = normalize_exponent(e);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    std::map<Exponent, RatFunc> terms_;
};

}  // namespace redform
