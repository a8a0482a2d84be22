#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "redform/unipoly.hpp"

namespace redform {

namespace detail {

using cld = std::complex<long double>;

inline long double to_ld(const mpq_class& q) {
    // mpq -> double loses range for huge values; go through the string-free
    // mantissa/exponent route of mpz to stay in long double range.
    long e_num = 0, e_den = 0;
    double m_num = mpz_get_d_2exp(&e_num, q.get_num_mpz_t());
    double m_den = mpz_get_d_2exp(&e_den, q.get_den_mpz_t());
    return std::ldexp(static_cast<long double>(m_num) / m_den, static_cast<int>(e_num - e_den));
}

inline cld to_cld(const GaussRational& c) { return {to_ld(c.re()), to_ld(c.im())}; }

/// Approximate complex roots of a squarefree polynomial (Aberth-Ehrlich).
inline std::vector<cld> approximate_roots(const UniPoly& p) {
    const long n = p.degree();
    if (n <= 0) return {};
    std::vector<cld> c(static_cast<std::size_t>(n) + 1);
    cld lc = to_cld(p.lead());
    for (long k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = to_cld(p.coeff(static_cast<std::size_t>(k))) / lc;
    long double bound = 0;
    for (long k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(k)]));
    bound += 1;
    std::vector<cld> z(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) {
        long double ang = 2.0L * 3.14159265358979323846L * (k + 0.25L) / n + 0.4L;
        z[static_cast<std::size_t>(k)] = std::polar(bound * 0.5L + 0.1L, ang);
    }
    auto eval = [&](cld x, cld& dv) {
        cld v = c[static_cast<std::size_t>(n)];
        dv = 0;
        for (long k = n - 1; k >= 0; --k) {
            dv = dv * x + v;
            v = v * x + c[static_cast<std::size_t>(k)];
        }
        return v;
    };
    for (int it = 0; it < 800; ++it) {
        long double change = 0;
        for (long i = 0; i < n; ++i) {
            cld d;
            cld v = eval(z[static_cast<std::size_t>(i)], d);
            if (v == cld(0)) continue;
            cld ratio = v / d;
            cld s = 0;
            for (long j = 0; j < n; ++j)
                if (j != i) s += 1.0L / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
            cld w = ratio / (1.0L - ratio * s);
            z[static_cast<std::size_t>(i)] -= w;
            change = std::max(change, std::abs(w) / (1 + std::abs(z[static_cast<std::size_t>(i)])));
        }
        if (change < 1e-17L) break;
    }
    return z;
}

inline mpz_class round_ld(long double v) {
    long double r = std::nearbyint(v);
    if (std::fabs(r) < 9.0e18L) return mpz_class(static_cast<long>(r));
    int e = 0;
    long double m = std::frexp(r, &e);
    mpz_class z(static_cast<long>(std::ldexp(m, 62)));
    if (e > 62) z <<= static_cast<unsigned>(e - 62);
    else z >>= static_cast<unsigned>(62 - e);
    return z;
}

/// Smallest Gaussian integer multiplier turning p into a Gaussian-integer
/// polynomial; returns its (integer) leading coefficient scaled version.
inline GaussRational integer_leading_coefficient(const UniPoly& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
    }
    return p.lead() * GaussRational(mpq_class(l));
}

}  // namespace detail

/// Distinct roots of p lying in Q(i). Candidates are located numerically on
/// the squarefree part and each one is confirmed by exact evaluation, so
/// every returned value is a root; sorted for determinism.
inline std::vector<GaussRational> gaussian_rational_roots(const UniPoly& p) {
    std::vector<GaussRational> out;
    if (p.degree() <= 0) return out;
    UniPoly sq = UniPoly::exact_div(p.monic(), UniPoly::gcd(p, p.derivative()));
    // Zero is handled exactly; it would otherwise be a poorly scaled candidate.
    if (sq.coeff(0).is_zero()) {
        out.push_back(GaussRational());
        sq = UniPoly::exact_div(sq, UniPoly::x());
    }
    while (sq.degree() >= 1) {
        if (sq.degree() == 1) {
            out.push_back(-sq.coeff(0) / sq.coeff(1));
            break;
        }
        GaussRational lc = detail::integer_leading_coefficient(sq);
        detail::cld lcn = detail::to_cld(lc);
        bool found = false;
        for (const auto& z : detail::approximate_roots(sq)) {
            detail::cld g = z * lcn;
            for (int dr = 0; dr <= 1 && !found; ++dr) {
                mpz_class gr = detail::round_ld(g.real()) + (dr ? (g.real() > std::nearbyint(g.real()) ? 1 : -1) : 0);
                mpz_class gi = detail::round_ld(g.imag());
                GaussRational cand = GaussRational(mpq_class(gr), mpq_class(gi)) / lc;
                if (sq.eval(cand).is_zero()) {
                    out.push_back(cand);
                    sq = UniPoly::exact_div(sq, UniPoly{-cand, GaussRational(1L)});
                    found = true;
                }
            }
            if (found) break;
        }
        if (!found) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Distinct integer roots of p, exact.
inline std::vector<mpz_class> integer_roots(const UniPoly& p) {
    std::vector<mpz_class> out;
    for (const auto& r : gaussian_rational_roots(p))
        if (r.is_integer()) out.push_back(r.re().get_num());
    std::sort(out.begin(), out.end());
    return out;
}

/// A factor of a polynomial with its multiplicity.
struct PolyFactor {
    UniPoly factor;
    std::size_t multiplicity;
};

/// Factorization of the monic part of p over Q(i): squarefree decomposition,
/// then every linear factor with a Gaussian-rational root is split off.
/// Remaining factors have no root in Q(i), hence are irreducible when their
/// degree is at most 3.
inline std::vector<PolyFactor> factor_over_qi(const UniPoly& p) {
    std::vector<PolyFactor> out;
    auto sq = UniPoly::squarefree(p);
    for (std::size_t k = 0; k < sq.size(); ++k) {
        UniPoly rest = sq[k];
        if (rest.degree() <= 0) continue;
        for (const auto& r : gaussian_rational_roots(rest)) {
            UniPoly lin{-r, GaussRational(1L)};
            rest = UniPoly::exact_div(rest, lin);
            out.push_back({lin, k + 1});
        }
        if (rest.degree() > 0) out.push_back({rest.monic(), k + 1});
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        const auto& ca = a.factor.coeffs();
        const auto& cb = b.factor.coeffs();
        for (std::size_t i = ca.size(); i-- > 0;)
            if (!(ca[i] == cb[i])) return lex_less(ca[i], cb[i]);
        return false;
    });
    return out;
}

}  // namespace redform
