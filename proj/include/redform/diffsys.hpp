#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "redform/error.hpp"
#include "redform/matrix.hpp"
#include "redform/ratfunc.hpp"
#include "redform/roots.hpp"

namespace redform {

using FieldMatrix = Matrix<RatFunc>;
using ConstMatrix = Matrix<GaussRational>;

/// Products over k through row and column common denominators, so each entry
/// is normalized once instead of once per term.
template <>
struct MatrixProduct<RatFunc> {
    static FieldMatrix run(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.cols() != b.rows()) throw MathError("matrix product shape mismatch");
        const std::size_t n = a.rows(), m = a.cols(), p = b.cols();
        std::vector<UniPoly> L(n, UniPoly(1L)), R(p, UniPoly(1L));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < m; ++k)
                if (a(i, k).den().degree() > 0) L[i] = UniPoly::lcm(L[i], a(i, k).den());
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < m; ++k)
                if (b(k, j).den().degree() > 0) R[j] = UniPoly::lcm(R[j], b(k, j).den());
        Matrix<UniPoly> A(n, m), B(m, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < m; ++k)
                if (!a(i, k).is_zero()) A(i, k) = a(i, k).num() * UniPoly::exact_div(L[i], a(i, k).den());
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < m; ++k)
                if (!b(k, j).is_zero()) B(k, j) = b(k, j).num() * UniPoly::exact_div(R[j], b(k, j).den());
        FieldMatrix r(n, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                UniPoly s;
                for (std::size_t k = 0; k < m; ++k)
                    if (!A(i, k).is_zero() && !B(k, j).is_zero()) s += A(i, k) * B(k, j);
                if (!s.is_zero()) r(i, j) = RatFunc(std::move(s), L[i] * R[j]);
            }
        return r;
    }
};

/// The system Y' = A Y over k = Q(i)(var).
struct LinearDiffSystem {
    FieldMatrix A;
    std::string var = "x";

    LinearDiffSystem() = default;
    LinearDiffSystem(FieldMatrix a, std::string v = "x") : A(std::move(a)), var(std::move(v)) {
        if (!A.is_square()) throw MathError("system matrix must be square");
    }

    std::size_t dim() const noexcept { return A.rows(); }
};

inline FieldMatrix derivative(const FieldMatrix& m) {
    return m.map([](const RatFunc& f) { return f.derivative(); });
}

inline ConstMatrix evaluate(const FieldMatrix& m, const GaussRational& at) {
    return m.map([&](const RatFunc& f) { return f.eval(at); });
}

inline FieldMatrix lift(const ConstMatrix& m) {
    return m.map([](const GaussRational& c) { return RatFunc(c); });
}

inline bool is_constant(const FieldMatrix& m) {
    for (const auto& f : m.data())
        if (!f.is_constant()) return false;
    return true;
}

inline ConstMatrix constant_part(const FieldMatrix& m) {
    return m.map([](const RatFunc& f) { return f.constant_value(); });
}

/// Monic lcm of all entry denominators.
inline UniPoly common_denominator(const FieldMatrix& m) {
    UniPoly l(1L);
    for (const auto& f : m.data())
        if (f.den().degree() > 0) l = UniPoly::lcm(l, f.den());
    return l;
}

/// P[A] = P^{-1} (A P - P'). Throws MathError (with the determinant) when P is singular.
inline LinearDiffSystem gauge_transform(const FieldMatrix& P, const LinearDiffSystem& sys) {
    if (!P.is_square() || P.rows() != sys.dim()) throw MathError("gauge matrix must be square of the system dimension");
    FieldMatrix Pinv;
    try {
        Pinv = inverse(P);
    } catch (const MathError&) {
        throw MathError("gauge matrix is singular (determinant " + determinant(P).str(sys.var) + ")");
    }
    return LinearDiffSystem(Pinv * (sys.A * P - derivative(P)), sys.var);
}

/// An irreducible (see factor_over_qi) factor of the denominators together
/// with its maximal pole order among the entries.
struct SingularFactor {
    UniPoly factor;
    std::size_t pole_order;
};

inline std::vector<SingularFactor> singular_points(const FieldMatrix& A) {
    std::vector<SingularFactor> out;
    for (auto& pf : factor_over_qi(common_denominator(A))) out.push_back({std::move(pf.factor), pf.multiplicity});
    return out;
}

inline std::vector<SingularFactor> singular_points(const LinearDiffSystem& sys) { return singular_points(sys.A); }

/// Smallest nonnegative integer that is not a root of any entry denominator.
inline GaussRational pick_ordinary_point(const FieldMatrix& A) {
    UniPoly l = common_denominator(A);
    for (long z = 0;; ++z)
        if (!l.eval(GaussRational(z)).is_zero()) return GaussRational(z);
}

inline GaussRational pick_ordinary_point(const LinearDiffSystem& sys) { return pick_ordinary_point(sys.A); }

/// Truncated canonical fundamental matrix sum_k U_k (x - z0)^k with U_0 = I.
struct SeriesFundamentalMatrix {
    GaussRational z0;
    std::size_t order = 0;
    std::vector<ConstMatrix> coeffs;
};

namespace detail {

/// A written as C(x)/L(x) around z0: L shifted to powers of (x - z0) and the
/// coefficient matrices C_j of the shifted polynomial matrix C.
struct ShiftedPolynomialForm {
    UniPoly den;
    std::vector<ConstMatrix> num;
};

inline ShiftedPolynomialForm shifted_polynomial_form(const FieldMatrix& A, const GaussRational& z0) {
    const std::size_t n = A.rows();
    UniPoly l = common_denominator(A);
    ShiftedPolynomialForm f;
    f.den = l.shift(z0);
    if (f.den.coeff(0).is_zero()) throw MathError("x = " + z0.str() + " is a singular point of the system");
    std::vector<UniPoly> entries(n * n);
    std::size_t deg = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const RatFunc& a = A(i, j);
            UniPoly p = (a.num() * UniPoly::exact_div(l, a.den())).shift(z0);
            deg = std::max<std::size_t>(deg, static_cast<std::size_t>(std::max(0L, p.degree())));
            entries[i * n + j] = std::move(p);
        }
    f.num.assign(deg + 1, ConstMatrix(n, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& c = entries[i * n + j].coeffs();
            for (std::size_t k = 0; k < c.size(); ++k) f.num[k](i, j) = c[k];
        }
    return f;
}

/// Extends U_0..U_{have-1} up to U_order using L U' = C U.
inline void extend_series(const ShiftedPolynomialForm& f, std::vector<ConstMatrix>& U, std::size_t order) {
    const GaussRational l0 = f.den.coeff(0);
    const std::size_t degL = static_cast<std::size_t>(std::max(0L, f.den.degree()));
    while (U.size() <= order) {
        const std::size_t k = U.size() - 1;  // computing U_{k+1}
        const std::size_t n = U[0].rows();
        ConstMatrix acc(n, n);
        for (std::size_t j = 0; j < f.num.size() && j <= k; ++j)
            if (!f.num[j].is_zero()) acc += f.num[j] * U[k - j];
        for (std::size_t j = 1; j <= degL && j <= k; ++j) {
            GaussRational c = f.den.coeff(j) * GaussRational(static_cast<long>(k - j + 1));
            if (!c.is_zero()) acc -= c * U[k - j + 1];
        }
        GaussRational inv = (l0 * GaussRational(static_cast<long>(k + 1))).inverse();
        U.push_back(inv * acc);
    }
}

}  // namespace detail

/// Canonical fundamental series matrix at an ordinary point z0, up to (x - z0)^order.
inline SeriesFundamentalMatrix series_solution(const LinearDiffSystem& sys, const GaussRational& z0,
                                               std::size_t order) {
    auto f = detail::shifted_polynomial_form(sys.A, z0);
    SeriesFundamentalMatrix s;
    s.z0 = z0;
    s.order = order;
    s.coeffs.push_back(ConstMatrix::identity(sys.dim()));
    detail::extend_series(f, s.coeffs, order);
    return s;
}

/// The system in t with x = t^k: A~(t) = k t^(k-1) A(t^k).
inline LinearDiffSystem substitute_power(const LinearDiffSystem& sys, std::size_t k, const std::string& new_var = "t") {
    if (k == 0) throw MathError("substitution exponent must be at least 1");
    if (k == 1) return sys;
    RatFunc factor(UniPoly::monomial(GaussRational(static_cast<long>(k)), k - 1));
    return LinearDiffSystem(sys.A.map([&](const RatFunc& f) { return factor * f.compose_power(k); }), new_var);
}

}  // namespace redform
