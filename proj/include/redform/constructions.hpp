#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redform/error.hpp"
#include "redform/matrix.hpp"

namespace redform {

/// Tensor construction on the standard representation: Id, Sym^m, Lambda^r,
/// tensor product, dual, and direct sum of copies.
class ConstructionExpr {
public:
    enum class Kind { Id, Sym, Ext, Tensor, Dual, DSum };

    static ConstructionExpr id() { return ConstructionExpr(Kind::Id, 0, {}); }
    static ConstructionExpr sym(std::size_t m, ConstructionExpr e) {
        if (m < 1) throw MathError("sym degree must be at least 1");
        return ConstructionExpr(Kind::Sym, m, {std::move(e)});
    }
    static ConstructionExpr ext(std::size_t r, ConstructionExpr e) {
        if (r < 1) throw MathError("ext degree must be at least 1");
        return ConstructionExpr(Kind::Ext, r, {std::move(e)});
    }
    static ConstructionExpr tensor(ConstructionExpr a, ConstructionExpr b) {
        return ConstructionExpr(Kind::Tensor, 0, {std::move(a), std::move(b)});
    }
    static ConstructionExpr dual(ConstructionExpr e) { return ConstructionExpr(Kind::Dual, 0, {std::move(e)}); }
    static ConstructionExpr dsum(ConstructionExpr e, std::size_t copies) {
        if (copies < 1) throw MathError("dsum needs at least one copy");
        return ConstructionExpr(Kind::DSum, copies, {std::move(e)});
    }

    Kind kind() const noexcept { return kind_; }
    std::size_t param() const noexcept { return param_; }
    const ConstructionExpr& arg(std::size_t k = 0) const { return args_.at(k); }

    bool uses_dual() const {
        if (kind_ == Kind::Dual) return true;
        for (const auto& a : args_)
            if (a.uses_dual()) return true;
        return false;
    }

    /// Canonical DSL rendering, e.g. "sym(2,dsum(id,2))".
    std::string str() const {
        switch (kind_) {
            case Kind::Id: return "id";
            case Kind::Sym: return "sym(" + std::to_string(param_) + "," + args_[0].str() + ")";
            case Kind::Ext: return "ext(" + std::to_string(param_) + "," + args_[0].str() + ")";
            case Kind::Tensor: return "tensor(" + args_[0].str() + "," + args_[1].str() + ")";
            case Kind::Dual: return "dual(" + args_[0].str() + ")";
            case Kind::DSum: return "dsum(" + args_[0].str() + "," + std::to_string(param_) + ")";
        }
        return {};
    }

    friend bool operator==(const ConstructionExpr& a, const ConstructionExpr& b) {
        return a.kind_ == b.kind_ && a.param_ == b.param_ && a.args_ == b.args_;
    }

private:
    ConstructionExpr(Kind k, std::size_t p, std::vector<ConstructionExpr> args)
        : kind_(k), param_(p), args_(std::move(args)) {}

    Kind kind_;
    std::size_t param_;
    std::vector<ConstructionExpr> args_;
};

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Dimension of the constructed space over a base space of dimension n.
inline std::size_t dimension(const ConstructionExpr& e, std::size_t n) {
    using K = ConstructionExpr::Kind;
    switch (e.kind()) {
        case K::Id: return n;
        case K::Sym: return binomial(dimension(e.arg(), n) + e.param() - 1, e.param());
        case K::Ext: {
            std::size_t d = dimension(e.arg(), n);
            if (e.param() > d)
                throw MathError("ext(" + std::to_string(e.param()) + ", .) exceeds operand dimension " + std::to_string(d));
            return binomial(d, e.param());
        }
        case K::Tensor: return dimension(e.arg(0), n) * dimension(e.arg(1), n);
        case K::Dual: return dimension(e.arg(), n);
        case K::DSum: return e.param() * dimension(e.arg(), n);
    }
    return 0;
}

/// Parses the construction DSL: id | sym(m,e) | ext(r,e) | tensor(e,e) | dual(e) | dsum(e,n).
inline ConstructionExpr parse_construction(std::string_view text) {
    struct P {
        std::string_view s;
        std::size_t pos = 0;

        [[noreturn]] void fail(const std::string& what) const {
            throw ParseError("construction: " + what, 1, static_cast<int>(pos) + 1);
        }
        void ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        void expect(char c) {
            ws();
            if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
            ++pos;
        }
        std::string ident() {
            ws();
            std::size_t b = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            if (b == pos) fail("expected a constructor name");
            return std::string(s.substr(b, pos - b));
        }
        std::size_t number() {
            ws();
            std::size_t b = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (b == pos) fail("expected a positive integer");
            if (pos - b > 6) fail("integer too large");
            std::size_t v = std::stoul(std::string(s.substr(b, pos - b)));
            if (v == 0) {
                pos = b;
                fail("integer must be at least 1");
            }
            return v;
        }
        ConstructionExpr expr() {
            std::size_t at = pos;
            std::string name = ident();
            if (name == "id") return ConstructionExpr::id();
            if (name == "sym" || name == "ext") {
                expect('(');
                std::size_t m = number();
                expect(',');
                ConstructionExpr e = expr();
                expect(')');
                return name == "sym" ? ConstructionExpr::sym(m, std::move(e)) : ConstructionExpr::ext(m, std::move(e));
            }
            if (name == "tensor") {
                expect('(');
                ConstructionExpr a = expr();
                expect(',');
                ConstructionExpr b = expr();
                expect(')');
                return ConstructionExpr::tensor(std::move(a), std::move(b));
            }
            if (name == "dual") {
                expect('(');
                ConstructionExpr a = expr();
                expect(')');
                return ConstructionExpr::dual(std::move(a));
            }
            if (name == "dsum") {
                expect('(');
                ConstructionExpr a = expr();
                expect(',');
                std::size_t c = number();
                expect(')');
                return ConstructionExpr::dsum(std::move(a), c);
            }
            pos = at;
            fail("unknown constructor '" + name + "'");
        }
    } p{text};
    ConstructionExpr e = p.expr();
    p.ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

/// Exponent vectors of degree m in d variables, graded-lex with X_1 > ... > X_d
/// (index 0 is X_1^m), plus the reverse lookup.
class MonomialBasis {
public:
    MonomialBasis(std::size_t d, std::size_t m) : d_(d), m_(m) {
        std::vector<std::size_t> cur(d, 0);
        fill(cur, 0, m);
        for (std::size_t k = 0; k < mons_.size(); ++k) index_.emplace(mons_[k], k);
    }

    std::size_t size() const noexcept { return mons_.size(); }
    const std::vector<std::size_t>& operator[](std::size_t k) const { return mons_[k]; }
    std::size_t index(const std::vector<std::size_t>& alpha) const { return index_.at(alpha); }

private:
    void fill(std::vector<std::size_t>& cur, std::size_t var, std::size_t left) {
        if (d_ == 0) return;
        if (var + 1 == d_) {
            cur[var] = left;
            mons_.push_back(cur);
            cur[var] = 0;
            return;
        }
        for (std::size_t e = left + 1; e-- > 0;) {
            cur[var] = e;
            fill(cur, var + 1, left - e);
        }
        cur[var] = 0;
    }

    std::size_t d_, m_;
    std::vector<std::vector<std::size_t>> mons_;
    std::map<std::vector<std::size_t>, std::size_t> index_;
};

/// r-subsets of {0..d-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> wedge_basis(std::size_t d, std::size_t r) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == r) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < d; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

namespace detail {

template <typename T>
T laplace_determinant(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    if (n == 0) return T(1L);
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    T det(0L);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Matrix<T> minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        T term = m(0, j) * laplace_determinant(minor);
        if (j % 2) det -= term;
        else det += term;
    }
    return det;
}

template <typename T>
Matrix<T> sym_group(std::size_t m, const Matrix<T>& M) {
    const std::size_t d = M.rows();
    MonomialBasis target(d, m);
    Matrix<T> out(target.size(), target.size());
    // Column alpha: coefficients of prod_j (sum_i M(i,j) X_i)^{alpha_j}.
    std::vector<MonomialBasis> bases;
    for (std::size_t t = 0; t <= m; ++t) bases.emplace_back(d, t);
    for (std::size_t c = 0; c < target.size(); ++c) {
        const auto& alpha = target[c];
        std::vector<T> poly(1, T(1L));
        std::size_t deg = 0;
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t rep = 0; rep < alpha[j]; ++rep) {
                std::vector<T> next(bases[deg + 1].size(), T(0L));
                for (std::size_t b = 0; b < poly.size(); ++b) {
                    if (poly[b].is_zero()) continue;
                    for (std::size_t i = 0; i < d; ++i) {
                        if (M(i, j).is_zero()) continue;
                        auto beta = bases[deg][b];
                        ++beta[i];
                        next[bases[deg + 1].index(beta)] += poly[b] * M(i, j);
                    }
                }
                poly = std::move(next);
                ++deg;
            }
        for (std::size_t r = 0; r < poly.size(); ++r) out(r, c) = poly[r];
    }
    return out;
}

template <typename T>
Matrix<T> sym_algebra(std::size_t m, const Matrix<T>& N) {
    const std::size_t d = N.rows();
    MonomialBasis basis(d, m);
    Matrix<T> out(basis.size(), basis.size());
    // D_N(X^alpha) = sum_j alpha_j X^(alpha - e_j) sum_i N(i,j) X_i.
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto& alpha = basis[c];
        for (std::size_t j = 0; j < d; ++j) {
            if (alpha[j] == 0) continue;
            for (std::size_t i = 0; i < d; ++i) {
                if (N(i, j).is_zero()) continue;
                auto beta = alpha;
                --beta[j];
                ++beta[i];
                out(basis.index(beta), c) += T(static_cast<long>(alpha[j])) * N(i, j);
            }
        }
    }
    return out;
}

template <typename T>
Matrix<T> ext_group(std::size_t r, const Matrix<T>& M) {
    const std::size_t d = M.rows();
    if (r > d) throw MathError("ext degree exceeds operand dimension");
    auto basis = wedge_basis(d, r);
    Matrix<T> out(basis.size(), basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            Matrix<T> minor(r, r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) minor(i, j) = M(basis[a][i], basis[b][j]);
            out(a, b) = laplace_determinant(minor);
        }
    return out;
}

template <typename T>
Matrix<T> ext_algebra(std::size_t r, const Matrix<T>& N) {
    const std::size_t d = N.rows();
    if (r > d) throw MathError("ext degree exceeds operand dimension");
    auto basis = wedge_basis(d, r);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
    Matrix<T> out(basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto& J = basis[c];
        for (std::size_t pos = 0; pos < r; ++pos)
            for (std::size_t i = 0; i < d; ++i) {
                if (N(i, J[pos]).is_zero()) continue;
                bool repeated = false;
                for (std::size_t q = 0; q < r; ++q) repeated = repeated || (q != pos && J[q] == i);
                if (repeated) continue;
                auto K = J;
                K[pos] = i;
                bool negative = false;
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b + 1 < r - a; ++b)
                        if (K[b] > K[b + 1]) {
                            std::swap(K[b], K[b + 1]);
                            negative = !negative;
                        }
                if (negative) out(index.at(K), c) -= N(i, J[pos]);
                else out(index.at(K), c) += N(i, J[pos]);
            }
    }
    return out;
}

template <typename T>
Matrix<T> repeat_blocks(const Matrix<T>& M, std::size_t copies) {
    Matrix<T> out = M;
    for (std::size_t k = 1; k < copies; ++k) out = direct_sum(out, M);
    return out;
}

}  // namespace detail

/// Default inversion used by Dual in the group sense (Gauss-Jordan over a field).
struct FieldInverse {
    template <typename T>
    Matrix<T> operator()(const Matrix<T>& m) const {
        return inverse(m);
    }
};

/// Const(M): matrix of the induced action of M on the construction, in the
/// canonical basis, with the column convention sigma(X_j) = sum_i m_ij X_i.
template <typename T, typename Inverter = FieldInverse>
Matrix<T> apply_group(const ConstructionExpr& e, const Matrix<T>& M, const Inverter& inv = {}) {
    if (!M.is_square()) throw MathError("construction argument must be square");
    using K = ConstructionExpr::Kind;
    switch (e.kind()) {
        case K::Id: return M;
        case K::Sym: return detail::sym_group(e.param(), apply_group(e.arg(), M, inv));
        case K::Ext: {
            auto inner = apply_group(e.arg(), M, inv);
            if (e.param() > inner.rows())
                throw MathError("ext(" + std::to_string(e.param()) + ", .) exceeds operand dimension");
            return detail::ext_group(e.param(), inner);
        }
        case K::Tensor: return kronecker(apply_group(e.arg(0), M, inv), apply_group(e.arg(1), M, inv));
        case K::Dual: return inv(apply_group(e.arg(), M, inv)).transpose();
        case K::DSum: return detail::repeat_blocks(apply_group(e.arg(), M, inv), e.param());
    }
    throw MathError("unknown construction");
}

/// const(N): matrix of the derivation D_N on the construction; satisfies
/// Const(I + eps N) = I + eps const(N).
template <typename T>
Matrix<T> apply_algebra(const ConstructionExpr& e, const Matrix<T>& N) {
    if (!N.is_square()) throw MathError("construction argument must be square");
    using K = ConstructionExpr::Kind;
    switch (e.kind()) {
        case K::Id: return N;
        case K::Sym: return detail::sym_algebra(e.param(), apply_algebra(e.arg(), N));
        case K::Ext: {
            auto inner = apply_algebra(e.arg(), N);
            if (e.param() > inner.rows())
                throw MathError("ext(" + std::to_string(e.param()) + ", .) exceeds operand dimension");
            return detail::ext_algebra(e.param(), inner);
        }
        case K::Tensor: {
            auto a = apply_algebra(e.arg(0), N);
            auto b = apply_algebra(e.arg(1), N);
            return kronecker(a, Matrix<T>::identity(b.rows())) + kronecker(Matrix<T>::identity(a.rows()), b);
        }
        case K::Dual: return -apply_algebra(e.arg(), N).transpose();
        case K::DSum: return detail::repeat_blocks(apply_algebra(e.arg(), N), e.param());
    }
    throw MathError("unknown construction");
}

}  // namespace redform
