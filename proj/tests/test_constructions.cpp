#include <gtest/gtest.h>

#include "support.hpp"

using namespace redform;
using namespace redform::testing;

namespace {

using CE = ConstructionExpr;

TEST(ConstructionDsl, ParseAndPrint) {
    for (const char* text : {"id", "sym(2,id)", "ext(2,sym(2,id))", "tensor(id,dual(id))", "sym(2,dsum(id,3))"})
        EXPECT_EQ(parse_construction(text).str(), text);
    EXPECT_EQ(parse_construction(" sym( 2 , ext(2, id) ) "), CE::sym(2, CE::ext(2, CE::id())));
}

TEST(ConstructionDsl, ErrorsCarryColumn) {
    try {
        parse_construction("sym(2,idd)");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 7);
    }
    EXPECT_THROW(parse_construction("sym(0,id)"), ParseError);
    EXPECT_THROW(parse_construction("dsum(id)"), ParseError);
    EXPECT_THROW(parse_construction("sym(2,id) extra"), ParseError);
}

TEST(Dimension, Examples) {
    EXPECT_EQ(dimension(CE::sym(2, CE::id()), 3), 6u);
    EXPECT_EQ(dimension(CE::sym(2, CE::dsum(CE::id(), 3)), 3), 45u);
    EXPECT_EQ(dimension(CE::ext(2, CE::id()), 2), 1u);
    EXPECT_EQ(dimension(CE::tensor(CE::id(), CE::dual(CE::id())), 3), 9u);
    EXPECT_THROW(dimension(CE::ext(3, CE::id()), 2), MathError);
}

TEST(Bases, CanonicalOrders) {
    MonomialBasis b(3, 2);
    ASSERT_EQ(b.size(), 6u);
    const std::vector<std::vector<std::size_t>> want = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(b[k], want[k]);
    auto w = wedge_basis(3, 2);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(w[0], (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(w[2], (std::vector<std::size_t>{1, 2}));
}

TEST(ApplyGroup, SymmetricSquareByHandExpansion) {
    // M = [[a,b],[c,d]] with a,b,c,d = 2,3,5,7; columns expand (aX1+cX2)^2,
    // (aX1+cX2)(bX1+dX2), (bX1+dX2)^2.
    ConstMatrix M = cm({{2, 3}, {5, 7}});
    EXPECT_EQ(apply_group(CE::sym(2, CE::id()), M), cm({{4, 6, 9}, {20, 29, 42}, {25, 35, 49}}));
    EXPECT_EQ(apply_group(CE::sym(2, CE::id()), ConstMatrix::identity(2)), ConstMatrix::identity(3));
}

TEST(ApplyGroup, TopExteriorPowerIsDeterminant) {
    Rng rng(31);
    for (std::size_t n = 1; n <= 4; ++n) {
        ConstMatrix M = random_const_matrix(rng, n);
        auto E = apply_group(CE::ext(n, CE::id()), M);
        ASSERT_EQ(E.rows(), 1u);
        EXPECT_EQ(E(0, 0), determinant(M));
    }
}

TEST(ApplyGroup, DualIsInverseTranspose) {
    ConstMatrix M = cm({{2, 1}, {1, 1}});
    EXPECT_EQ(apply_group(CE::dual(CE::id()), M), inverse(M).transpose());
    EXPECT_THROW(apply_group(CE::dual(CE::id()), cm({{1, 2}, {2, 4}})), MathError);
}

// Independent oracle for Sym^m: substitute X_j -> sum_i M_ij X_i into each
// basis monomial with multivariate polynomial arithmetic.
ConstMatrix sym_by_substitution(std::size_t m, const ConstMatrix& M) {
    const std::size_t n = M.rows();
    MonomialBasis basis(n, m);
    std::vector<MPoly> image(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) image[j] += MPoly(RatFunc(M(i, j))) * MPoly::variable(i, n);
    ConstMatrix out(basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        MPoly p(1L);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < basis[c][j]; ++r) p *= image[j];
        for (const auto& [e, coeff] : p.terms()) {
            std::vector<std::size_t> alpha(n, 0);
            for (std::size_t k = 0; k < e.size(); ++k) alpha[k] = e[k];
            out(basis.index(alpha), c) = coeff.constant_value();
        }
    }
    return out;
}

TEST(ApplyGroup, SymmetricPowersMatchSubstitutionOracle) {
    Rng rng(32);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + trial % 2, m = 2 + (trial / 2) % 3;
        ConstMatrix M = random_const_matrix(rng, n);
        EXPECT_EQ(apply_group(CE::sym(m, CE::id()), M), sym_by_substitution(m, M)) << "n=" << n << " m=" << m;
    }
}

TEST(ApplyAlgebra, SymmetricSquareByProductRule) {
    // N = [[a,b],[c,d]] -> [[2a,b,0],[2c,a+d,2b],[0,c,2d]].
    ConstMatrix N = cm({{2, 3}, {5, 7}});
    EXPECT_EQ(apply_algebra(CE::sym(2, CE::id()), N), cm({{4, 3, 0}, {10, 9, 6}, {0, 5, 14}}));
}

TEST(ApplyAlgebra, TopExteriorPowerIsTraceAndDualIsMinusTranspose) {
    Rng rng(33);
    for (std::size_t n = 1; n <= 4; ++n) {
        ConstMatrix N = random_const_matrix(rng, n);
        auto E = apply_algebra(CE::ext(n, CE::id()), N);
        EXPECT_EQ(E(0, 0), N.trace());
        EXPECT_EQ(apply_algebra(CE::dual(CE::id()), N), -N.transpose());
    }
}

TEST(ApplyAlgebra, DihedralConstructions) {
    FieldMatrix A = fm({{"0", "1"}, {"x", "1/(2*x)"}});
    EXPECT_EQ(apply_algebra(CE::sym(2, CE::id()), A), fm({{"0", "1", "0"}, {"2*x", "1/(2*x)", "2"}, {"0", "x", "1/x"}}));
    EXPECT_EQ(apply_algebra(CE::sym(2, CE::ext(2, CE::id())), A), fm({{"1/x"}}));
}

std::vector<CE> law_constructions() {
    return {CE::sym(2, CE::id()), CE::sym(3, CE::id()), CE::ext(2, CE::id()), CE::dual(CE::id()),
            CE::tensor(CE::id(), CE::id()), CE::sym(2, CE::dsum(CE::id(), 2)), CE::tensor(CE::id(), CE::dual(CE::id()))};
}

TEST(FunctorLaws, GroupMorphism) {
    Rng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 2;
        ConstMatrix M = random_invertible_const_matrix(rng, n), N = random_invertible_const_matrix(rng, n);
        for (const auto& e : law_constructions())
            EXPECT_EQ(apply_group(e, M * N), apply_group(e, M) * apply_group(e, N)) << e.str();
    }
}

TEST(FunctorLaws, EpsilonIdentity) {
    Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 2;
        ConstMatrix N = random_const_matrix(rng, n);
        DualNumberMatrix<GaussRational> arg{ConstMatrix::identity(n), N};
        for (const auto& e : law_constructions()) {
            auto res = DualNumberMatrix<GaussRational>::split(apply_group(e, arg.combined()));
            EXPECT_EQ(res.a, ConstMatrix::identity(res.a.rows())) << e.str();
            EXPECT_EQ(res.b, apply_algebra(e, N)) << e.str();
        }
    }
}

TEST(FunctorLaws, AlgebraLinearityAndBrackets) {
    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 2;
        ConstMatrix M = random_const_matrix(rng, n), N = random_const_matrix(rng, n);
        GaussRational a(uniform(rng, -3, 3)), b = GaussRational::i() * GaussRational(uniform(rng, -3, 3));
        for (const auto& e : law_constructions()) {
            EXPECT_EQ(apply_algebra(e, a * M + b * N), a * apply_algebra(e, M) + b * apply_algebra(e, N)) << e.str();
            EXPECT_EQ(apply_algebra(e, commutator(M, N)), commutator(apply_algebra(e, M), apply_algebra(e, N)))
                << e.str();
        }
    }
}

TEST(FunctorLaws, GaugeCompatibility) {
    Rng rng(37);
    const CE s2 = CE::sym(2, CE::id());
    for (int trial = 0; trial < 4; ++trial) {
        LinearDiffSystem sys(random_field_matrix(rng, 2, 2));
        FieldMatrix P = random_invertible_field_matrix(rng, 2, 1);
        auto lhs = apply_algebra(s2, gauge_transform(P, sys).A);
        auto rhs = gauge_transform(apply_group(s2, P), LinearDiffSystem(apply_algebra(s2, sys.A)));
        EXPECT_EQ(lhs, rhs.A);
    }
}

TEST(FunctorLaws, DirectSumCopiesAreBlockDiagonal) {
    ConstMatrix M = cm({{1, 2}, {3, 4}});
    auto D = apply_group(CE::dsum(CE::id(), 2), M);
    EXPECT_EQ(D, direct_sum(M, M));
    EXPECT_EQ(apply_algebra(CE::dsum(CE::sym(2, CE::id()), 3), M).rows(), 9u);
}

}  // namespace
