#include <gtest/gtest.h>

#include "support.hpp"

using namespace redform;
using namespace redform::testing;

namespace {

TEST(WeiNorman, ConstantMatrix) {
    FieldMatrix A = fm({{"1", "2"}, {"0", "-1"}});
    auto d = decompose(A);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d.coeffs[0], RatFunc(1L));
    EXPECT_EQ(d.mats[0], cm({{1, 2}, {0, -1}}));
}

TEST(WeiNorman, ZeroMatrixIsEmpty) { EXPECT_EQ(decompose(FieldMatrix(3, 3)).size(), 0u); }

TEST(WeiNorman, DihedralElementaryMatrices) {
    auto d = decompose(fm({{"0", "1"}, {"x", "1/(2*x)"}}));
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d.coeffs[0], rf("1"));
    EXPECT_EQ(d.coeffs[1], rf("x"));
    EXPECT_EQ(d.coeffs[2], rf("1/(2*x)"));
    EXPECT_EQ(d.mats[0], cm({{0, 1}, {0, 0}}));
    EXPECT_EQ(d.mats[1], cm({{0, 0}, {1, 0}}));
    EXPECT_EQ(d.mats[2], cm({{0, 0}, {0, 1}}));
}

TEST(WeiNorman, So3ReducedMatrixGivesRotations) {
    auto d = decompose(fm({{"0", "x", "1"}, {"-x", "0", "x^2"}, {"-1", "-x^2", "0"}}));
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d.coeffs[0], rf("x"));
    EXPECT_EQ(d.coeffs[1], rf("1"));
    EXPECT_EQ(d.coeffs[2], rf("x^2"));
    for (const auto& M : d.mats) {
        EXPECT_EQ(M.transpose(), -M);
        EXPECT_TRUE(M.trace().is_zero());
    }
}

TEST(WeiNorman, ReconstructsRandomMatrices) {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 2;
        // A few rational functions combined with constant matrices, so r < n^2.
        std::vector<RatFunc> f;
        for (int k = 0; k < 3; ++k) f.push_back(random_ratfunc(rng, 2));
        FieldMatrix A(n, n);
        for (int k = 0; k < 3; ++k) A += f[k] * lift(random_const_matrix(rng, n, -2, 2));
        auto d = decompose(A);
        EXPECT_EQ(d.reconstruct(n), A);
        EXPECT_LE(d.size(), 3u);
        // Independence of the coefficients over constants.
        std::vector<RatVector> coeffs;
        for (const auto& c : d.coeffs) coeffs.push_back({c});
        EXPECT_EQ(constant_rank(coeffs), d.size());
    }
}

TEST(WeiNorman, BasisChangeKeepsSpan) {
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        FieldMatrix A = random_field_matrix(rng, 2, 2);
        auto d = decompose(A);
        // Re-express A through an invertible constant recombination of the f_i.
        const std::size_t r = d.size();
        ConstMatrix C = random_invertible_const_matrix(rng, r);
        ConstMatrix Cinv = inverse(C);
        std::vector<RatFunc> g(r);
        std::vector<ConstMatrix> N(r, ConstMatrix(2, 2));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                g[i] += RatFunc(C(i, j)) * d.coeffs[j];
                N[i] += Cinv(j, i) * d.mats[j];
            }
        FieldMatrix back(2, 2);
        for (std::size_t i = 0; i < r; ++i) back += g[i] * lift(N[i]);
        EXPECT_EQ(back, A);
        auto s1 = bracket_closure(d.mats);
        for (const auto& M : N) EXPECT_TRUE(span_member(MatrixLieSpan{d.mats, false}, M));
        for (const auto& M : d.mats) EXPECT_TRUE(span_member(MatrixLieSpan{N, false}, M));
        EXPECT_EQ(bracket_closure(N).dim(), s1.dim());
    }
}

TEST(WeiNorman, SharedConstantEigenvector) {
    // A = sum f_i M_i with a common eigenvector w of all M_i; then A w = f w
    // and each Wei-Norman matrix maps w to a multiple of w.
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        ConstMatrix Pc = random_invertible_const_matrix(rng, 3, -2, 2);
        FieldMatrix A(3, 3);
        for (int k = 0; k < 3; ++k) {
            ConstMatrix T = random_const_matrix(rng, 3, -2, 2);
            T(1, 0) = T(2, 0) = GaussRational(0L);  // e_1 is an eigenvector of T
            A += random_ratfunc(rng, 2) * lift(Pc * T * inverse(Pc));
        }
        ConstVector w = Pc.col(0);
        auto d = decompose(A);
        for (const auto& M : d.mats) {
            ConstVector Mw = M.apply(w);
            ConstMatrix pair(3, 2);
            for (std::size_t i = 0; i < 3; ++i) {
                pair(i, 0) = w[i];
                pair(i, 1) = Mw[i];
            }
            EXPECT_EQ(rank(pair), 1u);
        }
    }
}

TEST(BracketClosure, Examples) {
    ConstMatrix M = cm({{1, 2}, {3, 4}});
    auto one = bracket_closure({M});
    EXPECT_EQ(one.dim(), 1u);
    EXPECT_TRUE(one.closed);

    auto sl2 = bracket_closure({cm({{0, 1}, {0, 0}}), cm({{0, 0}, {1, 0}})});
    EXPECT_EQ(sl2.dim(), 3u);
    EXPECT_TRUE(span_member(sl2, cm({{1, 0}, {0, -1}})));

    std::vector<ConstMatrix> rot = {cm({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}), cm({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}),
                                    cm({{0, 0, 0}, {0, 0, 1}, {0, -1, 0}})};
    auto so3 = bracket_closure(rot);
    EXPECT_EQ(so3.dim(), 3u);
    EXPECT_TRUE(so3.closed);
}

TEST(BracketClosure, IdempotentAndOrderIndependent) {
    Rng rng(44);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<ConstMatrix> gens = {random_const_matrix(rng, 3, -1, 1), random_const_matrix(rng, 3, -1, 1)};
        auto s = bracket_closure(gens);
        auto again = bracket_closure(s.basis);
        EXPECT_EQ(again.dim(), s.dim());
        auto rev = bracket_closure({gens[1], gens[0]});
        EXPECT_EQ(rev.dim(), s.dim());
        for (const auto& b : rev.basis) EXPECT_TRUE(span_member(s, b));
        for (const auto& a : s.basis)
            for (const auto& b : s.basis) EXPECT_TRUE(span_member(s, commutator(a, b)));
    }
}

TEST(SpanMember, Examples) {
    MatrixLieSpan upper{{cm({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), cm({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}),
                         cm({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}})},
                        true};
    EXPECT_TRUE(span_member(upper, ConstMatrix(3, 3)));
    EXPECT_TRUE(span_member(upper, upper.basis[0]));
    EXPECT_FALSE(span_member(upper, ConstMatrix::identity(3)));
}

}  // namespace
