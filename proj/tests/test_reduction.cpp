#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace redform;
using namespace redform::testing;

namespace {

using CE = ConstructionExpr;
GaussRational q(long n, long d = 1) { return GaussRational::ratio(n, d); }
const CE kSym2 = CE::sym(2, CE::id());

LinearDiffSystem data_system(const std::string& name) {
    return read_system(std::string(REDFORM_TEST_DATA) + "/" + name);
}

TEST(IsReduced, ZeroMatrixIsReduced) {
    auto cert = is_reduced(LinearDiffSystem(FieldMatrix(2, 2)), {kSym2, CE::id(), CE::ext(2, CE::id())});
    EXPECT_TRUE(cert.verdict);
    EXPECT_EQ(cert.decomposition.size(), 0u);
    EXPECT_EQ(cert.invariants.size(), 3u + 2u + 1u);
}

TEST(IsReduced, RequiresConstructions) {
    EXPECT_THROW(is_reduced(LinearDiffSystem(FieldMatrix(2, 2)), {}), MathError);
}

TEST(IsReduced, So3OriginalIsNotReduced) {
    auto cert = is_reduced(data_system("so3.json"), {kSym2});
    EXPECT_FALSE(cert.verdict);
    ASSERT_EQ(cert.invariants.size(), 1u);
    EXPECT_FALSE(cert.invariants[0].is_constant());
    EXPECT_FALSE(cert.warnings.empty());
}

TEST(IsReduced, So3ReducedMatrix) {
    LinearDiffSystem red(fm({{"0", "x", "1"}, {"-x", "0", "x^2"}, {"-1", "-x^2", "0"}}));
    auto cert = is_reduced(red, {kSym2});
    EXPECT_TRUE(cert.verdict);
    ASSERT_EQ(cert.invariants.size(), 1u);
    EXPECT_EQ(cert.invariants[0].phi, rv({"1", "0", "0", "1", "0", "1"}));
    EXPECT_EQ(cert.witnesses.size(), 3u);
    for (const auto& w : cert.witnesses) EXPECT_TRUE(w.is_zero());
}

TEST(IsReduced, InvariantValueAtChosenPoint) {
    auto cert = is_reduced(LinearDiffSystem(fm({{"0", "1"}, {"x", "1/(2*x)"}})), {kSym2}, {}, q(3));
    ASSERT_EQ(cert.invariants.size(), 1u);
    EXPECT_EQ(cert.invariants[0].v, cv({1, 0, -3}));
    EXPECT_THROW(is_reduced(LinearDiffSystem(fm({{"1/x"}})), {CE::id()}, {}, q(0)), MathError);
}

TEST(NormalizeTrace, Examples) {
    LinearDiffSystem traceless(fm({{"x", "1"}, {"2", "-x"}}));
    auto a = normalize_trace(traceless);
    EXPECT_TRUE(a.ok);
    EXPECT_EQ(a.P, FieldMatrix::identity(2));
    EXPECT_EQ(a.system.A, traceless.A);

    auto b = normalize_trace(LinearDiffSystem(fm({{"1/x"}})));
    EXPECT_TRUE(b.ok);
    EXPECT_EQ(b.P, fm({{"x"}}));
    EXPECT_TRUE(b.system.A.trace().is_zero());

    LinearDiffSystem c(fm({{"2*x/(x^2+1)", "1"}, {"x", "0"}}));
    auto r = normalize_trace(c);
    ASSERT_TRUE(r.ok);
    EXPECT_EQ(r.P, fm({{"x^2+1", "0"}, {"0", "1"}}));
    EXPECT_TRUE(r.system.A.trace().is_zero());

    auto f = normalize_trace(LinearDiffSystem(fm({{"1/(2*x)"}})));
    EXPECT_FALSE(f.ok);
    EXPECT_FALSE(f.message.empty());
}

TEST(QuadForm, Examples) {
    EXPECT_EQ(quadform_from_invariant(rv({"1", "0", "0", "1", "0", "1"}), 3), FieldMatrix::identity(3));
    EXPECT_EQ(quadform_from_invariant(rv({"0", "1", "0"}), 2), fm({{"0", "1/2"}, {"1/2", "0"}}));
    EXPECT_THROW(quadform_from_invariant(rv({"1", "2"}), 2), MathError);
}

TEST(QuadForm, ReproducesTheForm) {
    // X^T S X equals sum_k phi_k X^alpha_k at random integer points.
    Rng rng(61);
    RatVector phi;
    for (int k = 0; k < 6; ++k) phi.push_back(random_ratfunc(rng, 1, false));
    FieldMatrix S = quadform_from_invariant(phi, 3);
    MonomialBasis basis(3, 2);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<RatFunc> X = {RatFunc(uniform(rng, -4, 4)), RatFunc(uniform(rng, -4, 4)), RatFunc(uniform(rng, -4, 4))};
        RatFunc lhs, rhs;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) lhs += X[i] * S(i, j) * X[j];
        for (std::size_t k = 0; k < basis.size(); ++k) {
            RatFunc mon(1L);
            for (std::size_t v = 0; v < 3; ++v)
                for (std::size_t e = 0; e < basis[k][v]; ++e) mon *= X[v];
            rhs += phi[k] * mon;
        }
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(GaussDiagonalize, Examples) {
    auto id = gauss_diagonalize(FieldMatrix::identity(3));
    EXPECT_EQ(id.Q, FieldMatrix::identity(3));
    EXPECT_EQ(id.D, FieldMatrix::identity(3));
    FieldMatrix S = fm({{"0", "1"}, {"1", "0"}});
    auto h = gauss_diagonalize(S);
    EXPECT_EQ(h.Q.transpose() * S * h.Q, h.D);
    EXPECT_EQ(h.D, fm({{"2", "0"}, {"0", "-1/2"}}));
    EXPECT_THROW(gauss_diagonalize(fm({{"0", "1"}, {"2", "0"}})), MathError);
}

TEST(GaussDiagonalize, RandomSymmetricForms) {
    Rng rng(62);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + trial % 3;
        FieldMatrix S(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                // Sparse diagonals exercise the swap and combine branches.
                RatFunc f = (i == j && uniform(rng, 0, 1)) ? RatFunc() : random_ratfunc(rng, 1);
                S(i, j) = S(j, i) = f;
            }
        auto r = gauss_diagonalize(S);
        EXPECT_EQ(r.Q.transpose() * S * r.Q, r.D);
        EXPECT_FALSE(determinant(r.Q).is_zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) {
                    EXPECT_TRUE(r.D(i, j).is_zero());
                }
    }
}

// Unknown order: p_1_1 p_1_2 p_2_1 p_2_2 dinv.
MPoly var(std::size_t k) { return MPoly::variable(k, 5); }

TEST(SystemS, DihedralEquations) {
    LinearDiffSystem sys(fm({{"0", "1"}, {"x", "1/(2*x)"}}));
    const GaussRational z0 = q(1);
    std::vector<InvariantSolution> invs;
    for (const auto& e : {kSym2, CE::sym(2, CE::ext(2, CE::id()))})
        for (auto& phi : rational_solutions(apply_algebra(e, sys.A)).vectors) invs.push_back(make_invariant(e, phi, z0));
    auto S = build_system_S(invs, 2);
    ASSERT_EQ(S.equations.size(), 5u);
    EXPECT_EQ(S.unknowns, (std::vector<std::string>{"p_1_1", "p_1_2", "p_2_1", "p_2_2", "dinv"}));
    const MPoly p11 = var(0), p12 = var(1), p21 = var(2), p22 = var(3), x = MPoly(RatFunc::x());
    const MPoly det = p11 * p22 - p12 * p21;
    std::vector<MPoly> printed = {x - det * det, MPoly(2L) * p11 * p21 - MPoly(2L) * p12 * p22,
                                  MPoly(-1L) + p11 * p11 - p12 * p12, x + p21 * p21 - p22 * p22, det * var(4) - MPoly(1L)};
    for (const auto& want : printed) {
        bool found = false;
        for (const auto& got : S.equations) found = found || got == want || got == -want;
        EXPECT_TRUE(found) << want.str(S.unknowns);
    }
}

TEST(SystemS, TopExteriorPowerGivesDeterminantEquation) {
    InvariantSolution inv = make_invariant(CE::ext(3, CE::id()), rv({"1"}), q(0));
    auto S = build_system_S({inv}, 3);
    ASSERT_EQ(S.equations.size(), 2u);
    auto [P, Pinv] = symbolic_reduction_matrix(3);
    EXPECT_EQ(S.equations[0], detail::laplace_determinant(P) - MPoly(1L));
}

TEST(SystemS, So3CountsAndSerialization) {
    LinearDiffSystem sys = data_system("so3.json");
    auto b = rational_solutions(apply_algebra(kSym2, sys.A));
    ASSERT_EQ(b.dim(), 1u);
    auto S = build_system_S({make_invariant(kSym2, b.vectors[0], pick_ordinary_point(sys))}, 3);
    EXPECT_EQ(S.equations.size(), 7u);
    EXPECT_EQ(S.unknowns.size(), 10u);
    // Each printed line parses back when unknowns are set to constants.
    std::string text = S.text();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
}

TEST(SystemS, DualConstructionUsesDeterminantReciprocal) {
    // Dual(Id) invariant of the zero system; Const(P) = (dinv adj P)^T.
    auto S = build_system_S({make_invariant(CE::dual(CE::id()), rv({"1", "0"}), q(0))}, 2);
    ASSERT_EQ(S.equations.size(), 3u);
    const MPoly d = var(4);
    EXPECT_EQ(S.equations[0], d * var(3) - MPoly(1L));
    EXPECT_EQ(S.equations[1], -(d * var(1)));
}

TEST(SystemS, StabilizerKeepsSolutions) {
    // Substituting P -> P M for constant M fixing every invariant value maps
    // each invariant equation to itself.
    LinearDiffSystem sys(fm({{"0", "1"}, {"x", "1/(2*x)"}}));
    const CE det2 = CE::sym(2, CE::ext(2, CE::id()));
    std::vector<InvariantSolution> invs;
    for (const auto& e : {kSym2, det2})
        for (auto& phi : rational_solutions(apply_algebra(e, sys.A)).vectors) invs.push_back(make_invariant(e, phi, q(1)));
    auto S = build_system_S(invs, 2);
    std::size_t stabilizers = 0;
    for (long a = -1; a <= 1; ++a)
        for (long b = -1; b <= 1; ++b)
            for (long c = -1; c <= 1; ++c)
                for (long d = -1; d <= 1; ++d) {
                    ConstMatrix M = cm({{a, b}, {c, d}});
                    if (determinant(M).is_zero()) continue;
                    bool fixes = true;
                    for (const auto& inv : invs) fixes = fixes && apply_group(inv.construction, M).apply(inv.v) == inv.v;
                    if (!fixes) continue;
                    ++stabilizers;
                    // (P M)_ij = sum_k p_ik M_kj; dinv -> dinv / det M.
                    std::vector<MPoly> values(5);
                    for (std::size_t i = 0; i < 2; ++i)
                        for (std::size_t j = 0; j < 2; ++j)
                            for (std::size_t k = 0; k < 2; ++k) values[i * 2 + j] += var(i * 2 + k) * MPoly(RatFunc(M(k, j)));
                    values[4] = var(4) * MPoly(RatFunc(determinant(M).inverse()));
                    for (const auto& eq : S.equations) EXPECT_EQ(eq.substitute(values), eq);
                }
    EXPECT_GE(stabilizers, 2u);
}

TEST(VerifyReduction, IdentityOnReducedSystem) {
    LinearDiffSystem red(fm({{"0", "x", "1"}, {"-x", "0", "x^2"}, {"-1", "-x^2", "0"}}));
    auto rep = verify_reduction(red, FieldMatrix::identity(3), {kSym2});
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.transformed.A, red.A);
}

TEST(VerifyReduction, DihedralInSquareRootCoordinates) {
    auto t = substitute_power(LinearDiffSystem(fm({{"0", "1"}, {"x", "1/(2*x)"}})), 2);
    auto rep = verify_reduction(t, fm({{"0", "i"}, {"i*t", "0"}}, "t"), {kSym2});
    // Chain rule: 2t * t [[0,1],[1,0]].
    EXPECT_EQ(rep.transformed.A, fm({{"0", "2*t^2"}, {"2*t^2", "0"}}, "t"));
    EXPECT_TRUE(rep.passed());
    ASSERT_EQ(rep.certificate.invariants.size(), 1u);
    EXPECT_EQ(rep.certificate.invariants[0].phi, rv({"1", "0", "-1"}));
    // Kernel of sym^2 of [[0,1],[1,0]].
    auto ker = nullspace(cm({{0, 1, 0}, {2, 0, 2}, {0, 1, 0}}));
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_EQ(ker[0][0], -ker[0][2]);
}

TEST(VerifyReduction, So3PrintedMatrix) {
    LinearDiffSystem sys = data_system("so3.json");
    auto rep = verify_reduction(sys, data_system("so3_gauge.json").A, {kSym2});
    EXPECT_EQ(rep.transformed.A, fm({{"0", "x", "1"}, {"-x", "0", "x^2"}, {"-1", "-x^2", "0"}}));
    EXPECT_TRUE(rep.certificate.verdict);
    EXPECT_TRUE(rep.transport_ok);
    ASSERT_EQ(rep.transport.size(), 1u);
}

TEST(VerifyReduction, WrongMatrixFailsTransport) {
    LinearDiffSystem sys = data_system("so3.json");
    auto rep = verify_reduction(sys, FieldMatrix::identity(3), {kSym2});
    EXPECT_FALSE(rep.passed());
    EXPECT_FALSE(rep.certificate.verdict);
    EXPECT_FALSE(rep.transport_ok);
}

TEST(VerifyReduction, SingularMatrixRejected) {
    LinearDiffSystem sys = data_system("so3.json");
    EXPECT_THROW(verify_reduction(sys, FieldMatrix(3, 3), {kSym2}), MathError);
}

TEST(GaugeAction, InvariantsTransportAlongGauge) {
    // phi solves const(A) => Const(P)^-1 phi solves const(P[A]).
    for (const char* name : {"so3.json", "dihedral.json"}) {
        LinearDiffSystem sys = data_system(name);
        FieldMatrix P = sys.dim() == 3 ? data_system("so3_gauge.json").A : fm({{"1", "x"}, {"0", "1"}});
        auto B = gauge_transform(P, sys);
        for (const auto& phi : rational_solutions(apply_algebra(kSym2, sys.A)).vectors) {
            RatVector psi = inverse(apply_group(kSym2, P)).apply(phi);
            EXPECT_TRUE(is_solution(apply_algebra(kSym2, B.A), psi)) << name;
        }
    }
}

TEST(Dictionary, SeriesMatchesInvariant) {
    LinearDiffSystem sys = data_system("dihedral.json");
    const GaussRational z0 = pick_ordinary_point(sys);
    auto U = series_solution(sys, z0, 8);
    for (const auto& e : {kSym2, CE::dual(kSym2)}) {
        auto series = construction_series(e, U);
        for (std::size_t i = 0; i < series.rows(); ++i)
            for (std::size_t j = 0; j < series.cols(); ++j)
                EXPECT_EQ(series(i, j).coeff(0), i == j ? q(1) : q(0));
        for (const auto& phi : rational_solutions(apply_algebra(e, sys.A)).vectors) {
            auto inv = make_invariant(e, phi, z0);
            for (std::size_t r = 0; r < phi.size(); ++r) {
                UniPoly acc;
                for (std::size_t c = 0; c < phi.size(); ++c) acc += series(r, c) * inv.v[c];
                auto want = series_expand(phi[r], z0, 7);
                for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(acc.coeff(k), want[k]) << e.str() << " r=" << r;
            }
        }
    }
}

}  // namespace
