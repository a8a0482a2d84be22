#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "redform/diffsys.hpp"

namespace redform {

/// Incrementally built subspace of Q(i)^n kept in echelon form (pivot 1).
class EchelonSpan {
public:
    explicit EchelonSpan(std::size_t n) : n_(n) {}

    std::size_t dim() const noexcept { return rows_.size(); }

    /// Remainder of v after eliminating against the stored rows.
    std::vector<GaussRational> reduce(std::vector<GaussRational> v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const GaussRational f = v[pivots_[k]];
            if (f.is_zero()) continue;
            for (std::size_t j = pivots_[k]; j < n_; ++j)
                if (!rows_[k][j].is_zero()) v[j] -= f * rows_[k][j];
        }
        return v;
    }

    bool contains(const std::vector<GaussRational>& v) const {
        for (const auto& c : reduce(v))
            if (!c.is_zero()) return false;
        return true;
    }

    /// Adds v if independent; returns whether the span grew.
    bool insert(const std::vector<GaussRational>& v) {
        auto r = reduce(v);
        std::size_t p = 0;
        while (p < n_ && r[p].is_zero()) ++p;
        if (p == n_) return false;
        GaussRational inv = r[p].inverse();
        for (std::size_t j = p; j < n_; ++j) r[j] *= inv;
        // Keep earlier rows reduced in the new pivot column as well.
        for (auto& row : rows_) {
            const GaussRational f = row[p];
            if (f.is_zero()) continue;
            for (std::size_t j = p; j < n_; ++j)
                if (!r[j].is_zero()) row[j] -= f * r[j];
        }
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        return true;
    }

private:
    std::size_t n_;
    std::vector<std::vector<GaussRational>> rows_;
    std::vector<std::size_t> pivots_;
};

/// A = sum_i coeffs[i] * mats[i] with the coeffs linearly independent over Q(i).
struct WeiNormanDecomposition {
    std::vector<RatFunc> coeffs;
    std::vector<ConstMatrix> mats;

    std::size_t size() const noexcept { return coeffs.size(); }

    FieldMatrix reconstruct(std::size_t n) const {
        FieldMatrix a(n, n);
        for (std::size_t k = 0; k < coeffs.size(); ++k) a += coeffs[k] * lift(mats[k]);
        return a;
    }
};

namespace detail {

inline std::vector<GaussRational> coefficient_vector(const UniPoly& p, std::size_t len) {
    std::vector<GaussRational> v(len);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) v[k] = p.coeffs()[k];
    return v;
}

}  // namespace detail

/// Wei-Norman decomposition; the coefficient basis is chosen greedily among
/// the entries in row-major order.
inline WeiNormanDecomposition decompose(const FieldMatrix& A) {
    const std::size_t n = A.rows();
    UniPoly l = common_denominator(A);
    std::vector<UniPoly> nums(n * n);
    std::size_t len = 1;
    for (std::size_t k = 0; k < n * n; ++k) {
        const RatFunc& a = A.data()[k];
        nums[k] = a.num() * UniPoly::exact_div(l, a.den());
        len = std::max<std::size_t>(len, nums[k].coeffs().size());
    }
    EchelonSpan span(len);
    std::vector<std::size_t> picked;
    for (std::size_t k = 0; k < n * n; ++k)
        if (!nums[k].is_zero() && span.insert(detail::coefficient_vector(nums[k], len))) picked.push_back(k);

    WeiNormanDecomposition wn;
    const std::size_t r = picked.size();
    if (r == 0) return wn;
    // Solve [basis columns | entry columns] by one reduced echelon pass.
    ConstMatrix aug(len, r + n * n);
    for (std::size_t c = 0; c < r; ++c) {
        auto v = detail::coefficient_vector(nums[picked[c]], len);
        for (std::size_t i = 0; i < len; ++i) aug(i, c) = v[i];
    }
    for (std::size_t k = 0; k < n * n; ++k) {
        auto v = detail::coefficient_vector(nums[k], len);
        for (std::size_t i = 0; i < len; ++i) aug(i, r + k) = v[i];
    }
    auto pivots = rref_in_place(aug);
    for (std::size_t c = 0; c < r; ++c) {
        wn.coeffs.push_back(A.data()[picked[c]]);
        ConstMatrix m(n, n);
        for (std::size_t k = 0; k < n * n; ++k) m(k / n, k % n) = aug(c, r + k);
        wn.mats.push_back(std::move(m));
    }
    (void)pivots;
    return wn;
}

inline WeiNormanDecomposition decompose(const LinearDiffSystem& sys) { return decompose(sys.A); }

/// A span of constant matrices; closed means stable under the commutator.
struct MatrixLieSpan {
    std::vector<ConstMatrix> basis;
    bool closed = false;

    std::size_t dim() const noexcept { return basis.size(); }
};

namespace detail {

inline std::vector<GaussRational> flatten(const ConstMatrix& m) { return m.data(); }

}  // namespace detail

/// Lie algebra generated by gens: the span saturated under [X, Y] = XY - YX.
inline MatrixLieSpan bracket_closure(const std::vector<ConstMatrix>& gens) {
    MatrixLieSpan out;
    out.closed = true;
    if (gens.empty()) return out;
    const std::size_t n = gens[0].rows();
    EchelonSpan span(n * n);
    for (const auto& g : gens) {
        if (!g.is_square() || g.rows() != n) throw MathError("generators must be square of equal size");
        if (span.insert(detail::flatten(g))) out.basis.push_back(g);
    }
    // Pairs (i, j) with i < j are bracketed exactly once; new elements are
    // bracketed against everything before them.
    for (std::size_t j = 1; j < out.basis.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            ConstMatrix b = commutator(out.basis[i], out.basis[j]);
            if (span.insert(detail::flatten(b))) out.basis.push_back(std::move(b));
        }
    return out;
}

/// Whether M is a constant linear combination of the span's basis.
inline bool span_member(const MatrixLieSpan& s, const ConstMatrix& M) {
    if (M.is_zero()) return true;
    if (s.basis.empty()) return false;
    const std::size_t n = s.basis[0].rows();
    if (M.rows() != n || M.cols() != n) return false;
    EchelonSpan span(n * n);
    for (const auto& b : s.basis) span.insert(detail::flatten(b));
    return span.contains(detail::flatten(M));
}

}  // namespace redform
