#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redform/constructions.hpp"
#include "redform/diffsys.hpp"
#include "redform/mpoly.hpp"
#include "redform/ratsols.hpp"
#include "redform/weinorman.hpp"

namespace redform {

using ConstVector = std::vector<GaussRational>;

/// A rational invariant of a construction together with its value at z0.
struct InvariantSolution {
    ConstructionExpr construction = ConstructionExpr::id();
    RatVector phi;
    ConstVector v;
    GaussRational z0;

    bool is_constant() const {
        for (const auto& f : phi)
            if (!f.is_constant()) return false;
        return true;
    }
};

inline InvariantSolution make_invariant(ConstructionExpr e, RatVector phi, const GaussRational& z0) {
    ConstVector v;
    for (const auto& f : phi) v.push_back(f.eval(z0));
    return {std::move(e), std::move(phi), std::move(v), z0};
}

/// const_k(M_i) v_k for Wei-Norman matrix i and invariant k.
struct Witness {
    std::size_t matrix = 0;
    std::size_t invariant = 0;
    ConstVector value;

    bool is_zero() const {
        for (const auto& c : value)
            if (!c.is_zero()) return false;
        return true;
    }
};

/// Evidence for (or against) reduced form, relative to the listed constructions.
struct ReductionCertificate {
    WeiNormanDecomposition decomposition;
    std::vector<ConstructionExpr> constructions;
    std::vector<InvariantSolution> invariants;
    std::vector<Witness> witnesses;
    std::vector<std::string> warnings;
    GaussRational z0;
    bool verdict = false;
};

inline void require_ordinary(const FieldMatrix& A, const GaussRational& z0) {
    if (common_denominator(A).eval(z0).is_zero()) throw MathError("x = " + z0.str() + " is a singular point of the system");
}

/// Invariants of every construction, their constancy, and the Lie-algebra
/// witnesses const(M_i) v for each Wei-Norman matrix M_i.
inline ReductionCertificate is_reduced(const LinearDiffSystem& sys, const std::vector<ConstructionExpr>& constructions,
                                       const BoundConfig& cfg = {}, std::optional<GaussRational> z0 = {}) {
    if (constructions.empty()) throw MathError("at least one construction is required");
    ReductionCertificate cert;
    cert.z0 = z0 ? *z0 : pick_ordinary_point(sys);
    require_ordinary(sys.A, cert.z0);
    cert.decomposition = decompose(sys);
    cert.constructions = constructions;
    for (const auto& e : constructions) {
        auto basis = rational_solutions(apply_algebra(e, sys.A), cfg);
        for (const auto& w : basis.warnings) cert.warnings.push_back(e.str() + ": " + w);
        for (auto& phi : basis.vectors) cert.invariants.push_back(make_invariant(e, std::move(phi), cert.z0));
    }
    bool ok = true;
    for (std::size_t k = 0; k < cert.invariants.size(); ++k) {
        const auto& inv = cert.invariants[k];
        ok = ok && inv.is_constant();
        for (std::size_t i = 0; i < cert.decomposition.size(); ++i) {
            Witness w{i, k, apply_algebra(inv.construction, cert.decomposition.mats[i]).apply(inv.v)};
            ok = ok && w.is_zero();
            cert.witnesses.push_back(std::move(w));
        }
    }
    cert.verdict = ok;
    return cert;
}

/// Outcome of making the trace zero by a diagonal gauge.
struct TraceNormalization {
    bool ok = false;
    FieldMatrix P;
    LinearDiffSystem system;
    std::string message;
};

/// P = diag(u, 1, ..., 1) with u'/u = Tr(A), so that P[A] is traceless.
inline TraceNormalization normalize_trace(const LinearDiffSystem& sys) {
    const std::size_t n = sys.dim();
    TraceNormalization out;
    RatFunc tr = sys.A.trace();
    if (tr.is_zero()) {
        out.ok = true;
        out.P = FieldMatrix::identity(n);
        out.system = sys;
        return out;
    }
    auto u = log_derivative_rational(tr);
    if (!u) {
        out.message = "no rational w with w' = Tr(A) w for Tr(A) = " + tr.str(sys.var);
        return out;
    }
    out.ok = true;
    out.P = FieldMatrix::identity(n);
    out.P(0, 0) = *u;
    out.system = gauge_transform(out.P, sys);
    return out;
}

/// Symmetric S with X^T S X equal to the quadratic form whose coefficients
/// phi are listed in graded-lex monomial order.
inline FieldMatrix quadform_from_invariant(const RatVector& phi, std::size_t n) {
    MonomialBasis basis(n, 2);
    if (phi.size() != basis.size())
        throw MathError("quadratic form in " + std::to_string(n) + " variables needs " + std::to_string(basis.size()) +
                        " coefficients, got " + std::to_string(phi.size()));
    FieldMatrix S(n, n);
    const RatFunc half = RatFunc(GaussRational::ratio(1, 2));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < basis[k][j]; ++r) idx.push_back(j);
        if (idx[0] == idx[1]) {
            S(idx[0], idx[0]) = phi[k];
        } else {
            S(idx[0], idx[1]) = half * phi[k];
            S(idx[1], idx[0]) = half * phi[k];
        }
    }
    return S;
}

template <typename T>
struct CongruenceDiagonalization {
    Matrix<T> Q;
    Matrix<T> D;
};

/// Gauss reduction of a symmetric form: Q^T S Q = D diagonal, Q invertible.
template <typename T>
CongruenceDiagonalization<T> gauss_diagonalize(const Matrix<T>& S) {
    if (!S.is_square()) throw MathError("quadratic form matrix must be square");
    if (!(S.transpose() == S)) throw MathError("quadratic form matrix must be symmetric");
    const std::size_t n = S.rows();
    Matrix<T> W = S;
    Matrix<T> Q = Matrix<T>::identity(n);
    // Applies e_b <- e_b + c e_a to both the basis and the form.
    auto combine = [&](std::size_t b, std::size_t a, const T& c) {
        for (std::size_t i = 0; i < n; ++i) Q(i, b) += c * Q(i, a);
        for (std::size_t i = 0; i < n; ++i) W(i, b) += c * W(i, a);
        for (std::size_t j = 0; j < n; ++j) W(b, j) += c * W(a, j);
    };
    auto swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n; ++i) std::swap(Q(i, a), Q(i, b));
        for (std::size_t i = 0; i < n; ++i) std::swap(W(i, a), W(i, b));
        for (std::size_t j = 0; j < n; ++j) std::swap(W(a, j), W(b, j));
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (W(k, k).is_zero()) {
            std::size_t j = k + 1;
            while (j < n && W(j, j).is_zero()) ++j;
            if (j < n) {
                swap(k, j);
            } else {
                j = k + 1;
                while (j < n && W(k, j).is_zero()) ++j;
                if (j == n) continue;
                combine(k, j, T(1L));
            }
        }
        for (std::size_t j = k + 1; j < n; ++j)
            if (!W(k, j).is_zero()) combine(j, k, -(W(k, j) / W(k, k)));
    }
    if (!(Q.transpose() * S * Q == W)) throw MathError("internal: congruence check failed");
    return {std::move(Q), std::move(W)};
}

/// Polynomial system for the reduction matrix: Const_i(P) v_i - phi_i = 0 for
/// every invariant, plus det(P) * dinv - 1 = 0.
struct PolySystemExport {
    std::vector<std::string> unknowns;
    std::vector<MPoly> equations;
    std::string var = "x";
    std::string base_field = "Q(i)(x)";

    std::string text() const {
        std::string out;
        for (const auto& e : equations) out += e.str(unknowns, var) + "\n";
        return out;
    }
};

namespace detail {

/// (Const(M), Const(M^-1)) built together so Dual never needs an inversion.
template <typename T>
std::pair<Matrix<T>, Matrix<T>> group_pair(const ConstructionExpr& e, const Matrix<T>& M, const Matrix<T>& Minv) {
    using K = ConstructionExpr::Kind;
    switch (e.kind()) {
        case K::Id: return {M, Minv};
        case K::Sym: {
            auto [a, b] = group_pair(e.arg(), M, Minv);
            return {sym_group(e.param(), a), sym_group(e.param(), b)};
        }
        case K::Ext: {
            auto [a, b] = group_pair(e.arg(), M, Minv);
            if (e.param() > a.rows()) throw MathError("ext degree exceeds operand dimension");
            return {ext_group(e.param(), a), ext_group(e.param(), b)};
        }
        case K::Tensor: {
            auto [a1, b1] = group_pair(e.arg(0), M, Minv);
            auto [a2, b2] = group_pair(e.arg(1), M, Minv);
            return {kronecker(a1, a2), kronecker(b1, b2)};
        }
        case K::Dual: {
            auto [a, b] = group_pair(e.arg(), M, Minv);
            return {b.transpose(), a.transpose()};
        }
        case K::DSum: {
            auto [a, b] = group_pair(e.arg(), M, Minv);
            return {repeat_blocks(a, e.param()), repeat_blocks(b, e.param())};
        }
    }
    throw MathError("unknown construction");
}

template <typename T>
Matrix<T> adjugate(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    Matrix<T> adj(n, n);
    if (n == 1) {
        adj(0, 0) = T(1L);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix<T> minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c)
                    if (c != j) minor(rr, cc++) = m(r, c);
                ++rr;
            }
            T cof = laplace_determinant(minor);
            adj(j, i) = (i + j) % 2 ? -cof : cof;
        }
    return adj;
}

}  // namespace detail

/// Names p_i_j (row-major, 1-based) followed by dinv.
inline std::vector<std::string> reduction_unknowns(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) names.push_back("p_" + std::to_string(i) + "_" + std::to_string(j));
    names.push_back("dinv");
    return names;
}

/// The generic matrix of unknowns p_i_j and its inverse dinv * adj(P).
inline std::pair<Matrix<MPoly>, Matrix<MPoly>> symbolic_reduction_matrix(std::size_t n) {
    const std::size_t nv = n * n + 1;
    Matrix<MPoly> P(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) P(i, j) = MPoly::variable(i * n + j, nv);
    MPoly dinv = MPoly::variable(n * n, nv);
    return {P, dinv * detail::adjugate(P)};
}

inline PolySystemExport build_system_S(const std::vector<InvariantSolution>& invariants, std::size_t n,
                                       const std::string& var = "x") {
    if (invariants.empty()) throw MathError("at least one invariant is required");
    PolySystemExport out;
    out.unknowns = reduction_unknowns(n);
    out.var = var;
    out.base_field = "Q(i)(" + var + ")";
    auto [P, Pinv] = symbolic_reduction_matrix(n);
    for (const auto& inv : invariants) {
        Matrix<MPoly> G = detail::group_pair(inv.construction, P, Pinv).first;
        if (G.cols() != inv.v.size()) throw MathError("invariant length does not match construction " + inv.construction.str());
        for (std::size_t r = 0; r < G.rows(); ++r) {
            MPoly eq = -MPoly(inv.phi[r]);
            for (std::size_t c = 0; c < G.cols(); ++c)
                if (!inv.v[c].is_zero()) eq += G(r, c) * MPoly(RatFunc(inv.v[c]));
            if (!eq.is_zero()) out.equations.push_back(std::move(eq));
        }
    }
    out.equations.push_back(detail::laplace_determinant(P) * MPoly::variable(n * n, n * n + 1) - MPoly(1L));
    return out;
}

/// Residual const(P' P^-1 - A) phi for one invariant of the original system.
struct InvariantTransport {
    InvariantSolution invariant;
    RatVector residual;
    bool ok = false;
};

struct VerificationReport {
    FieldMatrix P;
    LinearDiffSystem transformed;
    ReductionCertificate certificate;
    std::vector<InvariantTransport> transport;
    bool transport_ok = true;

    bool passed() const { return certificate.verdict && transport_ok; }
};

/// Gauges by P, certifies the result, and checks that P' P^-1 - A
/// annihilates every invariant of the original system.
inline VerificationReport verify_reduction(const LinearDiffSystem& sys, const FieldMatrix& P,
                                           const std::vector<ConstructionExpr>& constructions,
                                           const BoundConfig& cfg = {}) {
    VerificationReport rep;
    rep.P = P;
    rep.transformed = gauge_transform(P, sys);
    rep.certificate = is_reduced(rep.transformed, constructions, cfg);
    const FieldMatrix N = derivative(P) * inverse(P) - sys.A;
    const GaussRational z0 = pick_ordinary_point(sys);
    for (const auto& e : constructions) {
        auto basis = rational_solutions(apply_algebra(e, sys.A), cfg);
        const FieldMatrix cN = apply_algebra(e, N);
        for (auto& phi : basis.vectors) {
            InvariantTransport t;
            t.residual = cN.apply(phi);
            t.ok = std::all_of(t.residual.begin(), t.residual.end(), [](const RatFunc& f) { return f.is_zero(); });
            t.invariant = make_invariant(e, std::move(phi), z0);
            rep.transport_ok = rep.transport_ok && t.ok;
            rep.transport.push_back(std::move(t));
        }
    }
    return rep;
}

namespace detail {

/// Inverse modulo s^len of a polynomial matrix equal to the identity at s = 0.
struct TruncatedSeriesInverse {
    std::size_t len;

    Matrix<UniPoly> operator()(const Matrix<UniPoly>& m) const {
        const std::size_t n = m.rows();
        Matrix<UniPoly> X = Matrix<UniPoly>::identity(n) - m;
        Matrix<UniPoly> term = Matrix<UniPoly>::identity(n);
        Matrix<UniPoly> sum = term;
        for (std::size_t k = 1; k < len; ++k) {
            term = (term * X).map([&](const UniPoly& p) { return p.truncated(len); });
            sum += term;
        }
        return sum;
    }
};

}  // namespace detail

/// Const(U) for the truncated fundamental series, as polynomials in
/// s = x - z0 reduced modulo s^(order+1).
inline Matrix<UniPoly> construction_series(const ConstructionExpr& e, const SeriesFundamentalMatrix& U) {
    const std::size_t n = U.coeffs.at(0).rows();
    const std::size_t len = U.order + 1;
    Matrix<UniPoly> M(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<GaussRational> c;
            for (const auto& Uk : U.coeffs) c.push_back(Uk(i, j));
            M(i, j) = UniPoly(std::move(c)).truncated(len);
        }
    return apply_group(e, M, detail::TruncatedSeriesInverse{len}).map([&](const UniPoly& p) { return p.truncated(len); });
}

}  // namespace redform
