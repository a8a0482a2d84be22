#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "redform/io.hpp"
#include "redform/redform.hpp"

namespace redform::testing {

using Rng = std::mt19937_64;

inline RatFunc rf(const std::string& text, const std::string& var = "x") { return parse_ratfunc(text, var); }

inline FieldMatrix fm(std::initializer_list<std::initializer_list<const char*>> rows, const std::string& var = "x") {
    FieldMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (const char* e : r) m(i, j++) = parse_ratfunc(e, var);
        ++i;
    }
    return m;
}

inline ConstMatrix cm(std::initializer_list<std::initializer_list<long>> rows) {
    ConstMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long e : r) m(i, j++) = GaussRational(e);
        ++i;
    }
    return m;
}

inline RatVector rv(std::initializer_list<const char*> entries, const std::string& var = "x") {
    RatVector v;
    for (const char* e : entries) v.push_back(parse_ratfunc(e, var));
    return v;
}

inline ConstVector cv(std::initializer_list<long> entries) {
    ConstVector v;
    for (long e : entries) v.emplace_back(e);
    return v;
}

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline ConstMatrix random_const_matrix(Rng& rng, std::size_t n, long lo = -3, long hi = 3) {
    ConstMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = GaussRational(uniform(rng, lo, hi));
    return m;
}

inline ConstMatrix random_invertible_const_matrix(Rng& rng, std::size_t n, long lo = -3, long hi = 3) {
    for (;;) {
        ConstMatrix m = random_const_matrix(rng, n, lo, hi);
        if (!determinant(m).is_zero()) return m;
    }
}

inline UniPoly random_poly(Rng& rng, long max_degree, long lo = -3, long hi = 3) {
    std::vector<GaussRational> c;
    for (long k = 0; k <= max_degree; ++k) c.emplace_back(uniform(rng, lo, hi));
    return UniPoly(std::move(c));
}

/// num/den with both degrees <= max_degree; den drawn until nonzero.
inline RatFunc random_ratfunc(Rng& rng, long max_degree, bool allow_denominator = true) {
    UniPoly num = random_poly(rng, max_degree);
    if (!allow_denominator || uniform(rng, 0, 2) == 0) return RatFunc(num);
    UniPoly den;
    while (den.is_zero()) den = random_poly(rng, max_degree);
    return RatFunc(num, den);
}

inline FieldMatrix random_field_matrix(Rng& rng, std::size_t n, long max_degree, bool allow_denominator = true) {
    FieldMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_ratfunc(rng, max_degree, allow_denominator);
    return m;
}

inline FieldMatrix random_invertible_field_matrix(Rng& rng, std::size_t n, long max_degree,
                                                  bool allow_denominator = true) {
    for (;;) {
        FieldMatrix m = random_field_matrix(rng, n, max_degree, allow_denominator);
        if (!determinant(m).is_zero()) return m;
    }
}

/// Rank over Q(i) of a family of vectors in k^n, computed from the numerator
/// coefficients over a common denominator.
inline std::size_t constant_rank(const std::vector<RatVector>& vecs) {
    if (vecs.empty()) return 0;
    const std::size_t n = vecs[0].size();
    UniPoly den(1L);
    for (const auto& v : vecs)
        for (const auto& f : v) den = UniPoly::lcm(den, f.den());
    std::vector<std::vector<UniPoly>> nums;
    std::size_t len = 1;
    for (const auto& v : vecs) {
        std::vector<UniPoly> row;
        for (const auto& f : v) {
            row.push_back(f.num() * UniPoly::exact_div(den, f.den()));
            len = std::max<std::size_t>(len, row.back().coeffs().size());
        }
        nums.push_back(std::move(row));
    }
    ConstMatrix m(vecs.size(), n * len);
    for (std::size_t r = 0; r < vecs.size(); ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t k = 0; k < nums[r][c].coeffs().size(); ++k) m(r, c * len + k) = nums[r][c].coeffs()[k];
    return rank(m);
}

/// Equality of constant spans of two families.
inline bool same_constant_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b) {
    std::vector<RatVector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const std::size_t r = constant_rank(both);
    return constant_rank(a) == r && constant_rank(b) == r;
}

/// phi = c * psi for a nonzero constant c (returned), or nothing.
inline std::optional<GaussRational> constant_ratio(const RatVector& phi, const RatVector& psi) {
    if (phi.size() != psi.size()) return std::nullopt;
    std::optional<GaussRational> c;
    for (std::size_t k = 0; k < phi.size(); ++k) {
        if (psi[k].is_zero()) {
            if (!phi[k].is_zero()) return std::nullopt;
            continue;
        }
        RatFunc q = phi[k] / psi[k];
        if (!q.is_constant() || q.is_zero()) return std::nullopt;
        if (c && !(*c == q.constant_value())) return std::nullopt;
        c = q.constant_value();
    }
    return c;
}

inline bool is_zero_vector(const RatVector& v) {
    for (const auto& f : v)
        if (!f.is_zero()) return false;
    return true;
}

/// f is c * g^2 for some g in k and the given constant c, decided by
/// squarefree decomposition of f / c.
inline bool is_constant_times_square(const RatFunc& f, const GaussRational& c) {
    if (f.is_zero() || c.is_zero()) return false;
    RatFunc q = f / RatFunc(c);
    auto is_square_poly = [](const UniPoly& p) {
        auto parts = UniPoly::squarefree(p);
        for (std::size_t k = 0; k < parts.size(); ++k)
            if ((k + 1) % 2 == 1 && parts[k].degree() > 0) return false;
        return true;
    };
    // Leading coefficient of q must be a square in Q(i).
    GaussRational lc = q.num().lead() / q.den().lead();
    bool lc_square = false;
    for (const auto& r : gaussian_rational_roots(UniPoly{-lc, GaussRational(0L), GaussRational(1L)})) lc_square = lc_square || !r.is_zero();
    return lc_square && is_square_poly(q.num()) && is_square_poly(q.den());
}

}  // namespace redform::testing
