#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redform/diffsys.hpp"
#include "redform/weinorman.hpp"

namespace redform {

/// Parameters of the rational-solution ansatz.
struct BoundConfig {
    std::size_t pole_exponent_window = 20;
    std::size_t extra_denominator_slack = 2;
    std::size_t numerator_degree_cap = 60;
};

using RatVector = std::vector<RatFunc>;

/// Exponent bound chosen for one singular factor of the system.
struct FactorBound {
    UniPoly factor;
    std::size_t pole_order = 0;
    std::size_t exponent_bound = 0;
    bool flagged = false;
};

/// Outcome of the local analysis: denominator exponents at every finite
/// singular factor and the admissible growth order at infinity.
struct BoundAnalysis {
    std::vector<FactorBound> finite;
    long infinity_pole_order = 0;  // <= 0 when infinity is an ordinary point
    std::size_t degree_bound = 0;  // deg(num) - deg(den) of every entry stays below this
    std::vector<std::string> warnings;

    UniPoly denominator_bound() const {
        UniPoly d(1L);
        for (const auto& f : finite) d *= UniPoly::power(f.factor, f.exponent_bound);
        return d;
    }
};

/// Constant-linearly independent rational solutions, in reduced echelon
/// normalization over Q(i).
struct RationalSolutionBasis {
    std::vector<RatVector> vectors;
    BoundAnalysis bounds;
    std::vector<std::string> warnings;

    std::size_t dim() const noexcept { return vectors.size(); }
};

namespace detail {

/// Integers lambda in [-window, 0] with det(R - lambda I) = 0 at some root of
/// p; R has polynomial entries read modulo p.
inline std::vector<long> residue_exponents(const Matrix<UniPoly>& residue, const UniPoly& p, std::size_t window) {
    std::vector<long> roots;
    const std::size_t n = residue.rows();
    const bool linear = p.degree() == 1;
    const GaussRational root = linear ? -p.coeff(0) / p.coeff(1) : GaussRational();
    for (long lambda = 0; lambda >= -static_cast<long>(window); --lambda) {
        if (linear) {
            ConstMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = residue(i, j).eval(root);
            for (std::size_t i = 0; i < n; ++i) m(i, i) -= GaussRational(lambda);
            if (determinant(m).is_zero()) roots.push_back(lambda);
        } else {
            Matrix<UniPoly> m = residue;
            for (std::size_t i = 0; i < n; ++i) m(i, i) -= UniPoly(GaussRational(lambda));
            UniPoly det = bareiss_determinant(m, [](const UniPoly& a, const UniPoly& b) { return UniPoly::exact_div(a, b); });
            if (UniPoly::gcd(det % p, p).degree() > 0) roots.push_back(lambda);
        }
    }
    return roots;
}

inline std::size_t exponent_from_roots(const std::vector<long>& roots) {
    long lo = 0;
    for (long r : roots) lo = std::min(lo, r);
    return static_cast<std::size_t>(-lo);
}

}  // namespace detail

/// Local exponent analysis of Y' = B Y at every finite singular factor and at infinity.
inline BoundAnalysis analyze_bounds(const FieldMatrix& B, const BoundConfig& cfg) {
    BoundAnalysis out;
    const std::size_t n = B.rows();
    for (auto& sp : singular_points(B)) {
        FactorBound fb;
        fb.factor = sp.factor;
        fb.pole_order = sp.pole_order;
        if (sp.pole_order == 1) {
            Matrix<UniPoly> residue(n, n);
            const UniPoly dp = sp.factor.derivative();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const RatFunc& b = B(i, j);
                    auto [h, rem] = UniPoly::divmod(b.den(), sp.factor);
                    if (!rem.is_zero() || b.is_zero()) continue;
                    residue(i, j) = (b.num() * UniPoly::inverse_mod(dp * h, sp.factor)) % sp.factor;
                }
            auto roots = detail::residue_exponents(residue, sp.factor, cfg.pole_exponent_window);
            fb.exponent_bound = detail::exponent_from_roots(roots) + cfg.extra_denominator_slack;
            if (!roots.empty() && roots.front() <= -static_cast<long>(cfg.pole_exponent_window)) {
                fb.flagged = true;
                out.warnings.push_back("exponent window binds at factor " + sp.factor.str() + " (window " +
                                       std::to_string(cfg.pole_exponent_window) + ", slack " +
                                       std::to_string(cfg.extra_denominator_slack) + ")");
            }
            for (long r : roots)
                if (r <= -static_cast<long>(cfg.pole_exponent_window) && !fb.flagged) fb.flagged = true;
        } else {
            fb.exponent_bound = sp.pole_order + cfg.pole_exponent_window;
            fb.flagged = true;
            out.warnings.push_back("pole order " + std::to_string(sp.pole_order) + " at factor " + sp.factor.str() +
                                   ": exponent bound " + std::to_string(fb.exponent_bound) + " from window " +
                                   std::to_string(cfg.pole_exponent_window) + " (slack " +
                                   std::to_string(cfg.extra_denominator_slack) + " unused)");
        }
        out.finite.push_back(std::move(fb));
    }

    // At infinity, x = 1/t turns B into -t^-2 B(1/t).
    bool any = false;
    long q = 0;
    for (const auto& b : B.data()) {
        if (b.is_zero()) continue;
        long v = 2 + b.num().degree() - b.den().degree();
        q = any ? std::max(q, v) : v;
        any = true;
    }
    out.infinity_pole_order = any ? q : 0;
    std::size_t e = 0;
    if (any && q == 1) {
        Matrix<UniPoly> residue(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const RatFunc& b = B(i, j);
                if (!b.is_zero() && b.num().degree() - b.den().degree() == -1)
                    residue(i, j) = UniPoly(-(b.num().lead() / b.den().lead()));
            }
        auto roots = detail::residue_exponents(residue, UniPoly::x(), cfg.pole_exponent_window);
        e = detail::exponent_from_roots(roots) + cfg.extra_denominator_slack;
        if (!roots.empty() && roots.front() <= -static_cast<long>(cfg.pole_exponent_window))
            out.warnings.push_back("exponent window binds at infinity (window " +
                                   std::to_string(cfg.pole_exponent_window) + ")");
    } else if (any && q > 1) {
        e = static_cast<std::size_t>(q) + cfg.pole_exponent_window;
        out.warnings.push_back("pole order " + std::to_string(q) + " at infinity: degree bound " + std::to_string(e) +
                               " from window " + std::to_string(cfg.pole_exponent_window));
    }
    if (e > cfg.numerator_degree_cap) {
        out.warnings.push_back("degree bound " + std::to_string(e) + " capped at " +
                               std::to_string(cfg.numerator_degree_cap));
        e = cfg.numerator_degree_cap;
    }
    out.degree_bound = e;
    return out;
}

/// Whether phi' = B phi holds exactly.
inline bool is_solution(const FieldMatrix& B, const RatVector& phi) {
    if (phi.size() != B.cols()) return false;
    RatVector lhs(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) lhs[i] = phi[i].derivative();
    return lhs == B.apply(phi);
}

/// Reduced echelon normalization of a family of rational vectors over Q(i):
/// coordinates are the coefficients of the numerators over the common
/// denominator, ordered by component then ascending power of x.
inline std::vector<RatVector> echelon_normalize(const std::vector<RatVector>& vecs) {
    if (vecs.empty()) return {};
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
        for (std::size_t c = 0; c < n; ++c) {
            const auto& co = nums[r][c].coeffs();
            for (std::size_t k = 0; k < co.size(); ++k) m(r, c * len + k) = co[k];
        }
    auto pivots = rref_in_place(m);
    std::vector<RatVector> out;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        RatVector v;
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<GaussRational> co(len);
            for (std::size_t k = 0; k < len; ++k) co[k] = m(r, c * len + k);
            v.emplace_back(UniPoly(std::move(co)), den);
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// All rational solutions of Y' = B Y within the bounds of analyze_bounds.
///
/// A rational solution is fixed by its value v at the ordinary point z0:
/// phi = U v with U the canonical series matrix. For phi = F/d with F of
/// degree <= E + deg d, the series d*U*v has no terms beyond that degree,
/// which is a linear condition on v. Kernel vectors are rebuilt as rational
/// functions and checked by substitution; the truncation is lengthened until
/// every kernel vector checks, at which point the kernel is exactly the
/// space of bounded rational solutions.
inline RationalSolutionBasis rational_solutions(const FieldMatrix& B, const BoundConfig& cfg = {}) {
    if (B.rows() != B.cols()) throw MathError("system matrix must be square");
    RationalSolutionBasis out;
    out.bounds = analyze_bounds(B, cfg);
    out.warnings = out.bounds.warnings;
    const std::size_t n = B.rows();
    if (n == 0) return out;

    const GaussRational z0 = pick_ordinary_point(B);
    const UniPoly d = out.bounds.denominator_bound();
    const UniPoly ds = d.shift(z0);
    const std::size_t degd = static_cast<std::size_t>(d.degree());
    const std::size_t top = out.bounds.degree_bound + degd;

    auto form = detail::shifted_polynomial_form(B, z0);
    std::vector<ConstMatrix> U{ConstMatrix::identity(n)};
    auto weighted = [&](std::size_t j) {
        ConstMatrix w(n, n);
        for (std::size_t i = 0; i <= std::min(j, degd); ++i)
            if (!ds.coeff(i).is_zero()) w += ds.coeff(i) * U[j - i];
        return w;
    };

    std::size_t extra = n + 4;
    const std::size_t max_extra = 8 * (top + n) + 256;
    for (;;) {
        const std::size_t K = top + extra;
        detail::extend_series(form, U, K);
        ConstMatrix sys((K - top) * n, n);
        for (std::size_t j = top + 1; j <= K; ++j) {
            ConstMatrix w = weighted(j);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) sys((j - top - 1) * n + r, c) = w(r, c);
        }
        auto kernel = nullspace(sys);
        std::vector<RatVector> sols;
        bool all_verified = true;
        if (!kernel.empty()) {
            std::vector<ConstMatrix> W;
            for (std::size_t j = 0; j <= top; ++j) W.push_back(weighted(j));
            for (const auto& v : kernel) {
                RatVector phi;
                for (std::size_t r = 0; r < n; ++r) {
                    std::vector<GaussRational> co(top + 1);
                    for (std::size_t j = 0; j <= top; ++j)
                        for (std::size_t c = 0; c < n; ++c)
                            if (!v[c].is_zero() && !W[j](r, c).is_zero()) co[j] += W[j](r, c) * v[c];
                    phi.emplace_back(UniPoly(std::move(co)).shift(-z0), d);
                }
                if (!is_solution(B, phi)) {
                    all_verified = false;
                    break;
                }
                sols.push_back(std::move(phi));
            }
        }
        if (all_verified) {
            out.vectors = echelon_normalize(sols);
            return out;
        }
        if (extra > max_extra) throw MathError("rational solution ansatz did not stabilise");
        extra *= 2;
    }
}

inline RationalSolutionBasis rational_solutions(const LinearDiffSystem& sys, const BoundConfig& cfg = {}) {
    return rational_solutions(sys.A, cfg);
}

/// True iff every basis vector has constant entries (vacuously true when empty).
inline bool constant_coefficient_test(const std::vector<RatVector>& basis) {
    for (const auto& v : basis)
        for (const auto& f : v)
            if (!f.is_constant()) return false;
    return true;
}

inline bool constant_coefficient_test(const RationalSolutionBasis& basis) {
    return constant_coefficient_test(basis.vectors);
}

namespace detail {

/// Integer values of the residue function r modulo a squarefree p, with
/// the factor of p on which each value is taken. Empty optional when some
/// residue is not an integer.
inline std::optional<std::vector<std::pair<long, UniPoly>>> integer_residues(const UniPoly& r, const UniPoly& p) {
    std::vector<std::pair<long, UniPoly>> out;
    if (r.degree() <= 0) {
        GaussRational c = r.coeff(0);
        if (!c.is_integer() || !c.re().get_num().fits_slong_p()) return std::nullopt;
        out.emplace_back(c.re().get_num().get_si(), p);
        return out;
    }
    // Minimal polynomial of r in Q(i)[x]/(p) from the first dependency among its powers.
    const std::size_t deg = static_cast<std::size_t>(p.degree());
    std::vector<UniPoly> powers{UniPoly(1L)};
    std::vector<GaussRational> rel;
    for (std::size_t k = 1; k <= deg; ++k) {
        powers.push_back((powers.back() * r) % p);
        ConstMatrix m(deg, k + 1);
        for (std::size_t c = 0; c <= k; ++c)
            for (std::size_t i = 0; i < powers[c].coeffs().size(); ++i) m(i, c) = powers[c].coeffs()[i];
        auto ker = nullspace(m);
        if (!ker.empty()) {
            rel = ker[0];
            break;
        }
    }
    UniPoly minpoly(std::vector<GaussRational>(rel.begin(), rel.end()));
    UniPoly covered(1L);
    for (const auto& c : integer_roots(minpoly)) {
        if (!c.fits_slong_p()) return std::nullopt;
        UniPoly g = UniPoly::gcd(p, r - UniPoly(GaussRational(mpq_class(c))));
        covered *= g;
        out.emplace_back(c.get_si(), g);
    }
    if (!(covered.monic() == p.monic())) return std::nullopt;
    return out;
}

}  // namespace detail

/// u in k with u'/u = f, when one exists: f must be proper with simple poles
/// and integer residues, and then u is the product of the pole factors raised
/// to their residues.
inline std::optional<RatFunc> log_derivative_rational(const RatFunc& f) {
    if (f.is_zero()) return RatFunc(1L);
    const UniPoly& num = f.num();
    const UniPoly& den = f.den();
    if (num.degree() >= den.degree()) return std::nullopt;
    const UniPoly dden = den.derivative();
    if (UniPoly::gcd(den, dden).degree() > 0) return std::nullopt;
    UniPoly unum(1L), uden(1L);
    for (const auto& pf : factor_over_qi(den)) {
        const UniPoly& p = pf.factor;
        UniPoly r = (num * UniPoly::inverse_mod(dden, p)) % p;
        auto res = detail::integer_residues(r, p);
        if (!res) return std::nullopt;
        for (const auto& [c, g] : *res) {
            if (c > 0) unum *= UniPoly::power(g, static_cast<std::size_t>(c));
            else if (c < 0) uden *= UniPoly::power(g, static_cast<std::size_t>(-c));
        }
    }
    RatFunc u(unum, uden);
    if (!(u.derivative() == f * u)) throw MathError("internal: logarithmic derivative check failed");
    return u;
}

}  // namespace redform
