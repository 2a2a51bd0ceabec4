#include <gtest/gtest.h>

#include "qsys/mathilb.hpp"
#include "qsys/random.hpp"

using namespace qsys;

namespace {

OneCell cell(int src, int tgt, std::vector<Grade> one_based) {
    for (auto &g : one_based) {
        --g.row;
        --g.col;
    }
    return OneCell(src, tgt, std::move(one_based));
}

// Dense reference for hcomp2: enumerate compatible pairs directly and take the
// corresponding entries of the full Kronecker product.
Mat reference_hcomp2(const TwoCell &g, const TwoCell &f) {
    auto pairs = [](const OneCell &Y, const OneCell &X) {
        std::vector<std::pair<int, int>> out;
        for (int p = 0; p < Y.dim(); ++p)
            for (int q = 0; q < X.dim(); ++q)
                if (Y.grade(p).col == X.grade(q).row) out.push_back({p, q});
        return out;
    };
    auto S  = pairs(g.source(), f.source());
    auto T  = pairs(g.target(), f.target());
    Mat  G = g.dense(), F = f.dense();
    Mat  H(static_cast<Eigen::Index>(T.size()), static_cast<Eigen::Index>(S.size()));
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j)
            H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = G(T[i].first, S[j].first) * F(T[i].second, S[j].second);
    return H;
}

} // namespace

TEST(Id1, Dimensions) {
    EXPECT_EQ(id1(1).dim(), 1);
    auto one = id1(3);
    EXPECT_EQ(one.dim(), 3);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(one.grade(k), (Grade{k, k}));
}

TEST(Id1, UnitPreservesDimension) {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        auto X = random_one_cell(rng, uniform_int(rng, 1, 3), uniform_int(rng, 1, 3), 3, false);
        EXPECT_EQ(hcomp1(id1(X.tgt()), X).dim(), X.dim());
        EXPECT_EQ(hcomp1(X, id1(X.src())).dim(), X.dim());
    }
}

TEST(Hcomp1, SingleObjectIsKroneckerOrder) {
    auto Y = cell(1, 1, {{1, 1}, {1, 1}});
    auto X = cell(1, 1, {{1, 1}, {1, 1}, {1, 1}});
    EXPECT_EQ(hcomp1(Y, X).dim(), 6);
}

TEST(Hcomp1, HandEnumeratedPairs) {
    auto Y  = cell(2, 1, {{1, 1}, {1, 2}});
    auto X  = cell(1, 2, {{1, 1}, {2, 1}});
    auto YX = hcomp1(Y, X);
    ASSERT_EQ(YX.dim(), 2);
    EXPECT_EQ(YX.src(), 1);
    EXPECT_EQ(YX.tgt(), 1);
    EXPECT_EQ(YX.grade(0), (Grade{0, 0}));
    EXPECT_EQ(YX.grade(1), (Grade{0, 0}));
}

TEST(Hcomp1, RejectsMismatch) { EXPECT_THROW(hcomp1(id1(2), id1(3)), CellMismatch); }

TEST(Hcomp1, StrictAssociativity) {
    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        int  a = uniform_int(rng, 1, 3), b = uniform_int(rng, 1, 3), c = uniform_int(rng, 1, 3), d = uniform_int(rng, 1, 3);
        auto X = random_one_cell(rng, a, b, 2, false);
        auto Y = random_one_cell(rng, b, c, 2, false);
        auto Z = random_one_cell(rng, c, d, 2, false);
        EXPECT_EQ(hcomp1(hcomp1(Z, Y), X), hcomp1(Z, hcomp1(Y, X)));
        auto f = random_two_cell(rng, X, X), g = random_two_cell(rng, Y, Y), h = random_two_cell(rng, Z, Z);
        EXPECT_LE(residual(hcomp2(hcomp2(h, g), f), hcomp2(h, hcomp2(g, f))), 1e-12);
    }
}

TEST(Hcomp2, IdentitiesGiveIdentity) {
    Rng  rng(13);
    auto X = random_one_cell(rng, 2, 3, 2, false);
    auto Y = random_one_cell(rng, 3, 2, 2, false);
    EXPECT_EQ(residual(hcomp2(id2(Y), id2(X)), id2(hcomp1(Y, X))), 0.0);
}

TEST(Hcomp2, SingleObjectEqualsKron) {
    Rng  rng(14);
    auto X = random_one_cell(rng, 1, 1, 3, true), Xp = random_one_cell(rng, 1, 1, 3, true);
    auto Y = random_one_cell(rng, 1, 1, 3, true), Yp = random_one_cell(rng, 1, 1, 3, true);
    auto f = random_two_cell(rng, X, Xp), g = random_two_cell(rng, Y, Yp);
    EXPECT_LE(fro(hcomp2(g, f).dense() - kron(g.dense(), f.dense())), 1e-12);
}

TEST(Hcomp2, MatchesDenseReference) {
    Rng rng(15);
    for (int t = 0; t < 30; ++t) {
        int  a = uniform_int(rng, 1, 3), b = uniform_int(rng, 1, 3), c = uniform_int(rng, 1, 3);
        auto X = random_one_cell(rng, a, b, 2, false), Xp = random_one_cell(rng, a, b, 2, false);
        auto Y = random_one_cell(rng, b, c, 2, false), Yp = random_one_cell(rng, b, c, 2, false);
        auto f = random_two_cell(rng, X, Xp), g = random_two_cell(rng, Y, Yp);
        EXPECT_LE(fro(hcomp2(g, f).dense() - reference_hcomp2(g, f)), 1e-12);
    }
}

TEST(Hcomp2, InterchangeLaw) {
    Rng rng(16);
    for (int t = 0; t < 30; ++t) {
        int  a = uniform_int(rng, 1, 3), b = uniform_int(rng, 1, 3), c = uniform_int(rng, 1, 3);
        auto X1 = random_one_cell(rng, a, b, 2, false), X2 = random_one_cell(rng, a, b, 2, false), X3 = random_one_cell(rng, a, b, 2, false);
        auto Y1 = random_one_cell(rng, b, c, 2, false), Y2 = random_one_cell(rng, b, c, 2, false), Y3 = random_one_cell(rng, b, c, 2, false);
        auto f = random_two_cell(rng, X1, X2), fp = random_two_cell(rng, X2, X3);
        auto g = random_two_cell(rng, Y1, Y2), gp = random_two_cell(rng, Y2, Y3);
        EXPECT_LE(residual(hcomp2(gp * g, fp * f), hcomp2(gp, fp) * hcomp2(g, f)), 1e-9);
    }
}

TEST(Vcomp, IdentityAndUnitary) {
    Rng  rng(17);
    auto X = random_one_cell(rng, 2, 2, 3, false);
    auto f = random_two_cell(rng, X, X);
    EXPECT_EQ(residual(vcomp(id2(X), f), f), 0.0);
    auto u = random_unitary_two_cell(rng, X);
    EXPECT_LE(residual(vcomp(dagger2(u), u), id2(X)), 1e-12);
}

TEST(Vcomp, AssociativeAndDaggerReverses) {
    Rng rng(18);
    for (int t = 0; t < 20; ++t) {
        auto X1 = random_one_cell(rng, 2, 3, 3, false), X2 = random_one_cell(rng, 2, 3, 3, false);
        auto X3 = random_one_cell(rng, 2, 3, 3, false), X4 = random_one_cell(rng, 2, 3, 3, false);
        auto f = random_two_cell(rng, X1, X2), g = random_two_cell(rng, X2, X3), h = random_two_cell(rng, X3, X4);
        EXPECT_LE(residual((h * g) * f, h * (g * f)), 1e-9);
        EXPECT_LE(residual(dagger2(g * f), dagger2(f) * dagger2(g)), 1e-12);
        EXPECT_EQ(residual(dagger2(dagger2(f)), f), 0.0);
        EXPECT_LE(fro(dagger2(f).dense() - dagger(f.dense())), 0.0);
    }
}

TEST(Vcomp, RejectsMismatch) {
    auto X = id1(2);
    auto Y = cell(2, 2, {{1, 2}});
    EXPECT_THROW(vcomp(id2(X), id2(Y)), CellMismatch);
}

TEST(FromDense, RejectsOffSectorMass) {
    auto X = cell(1, 2, {{1, 1}, {2, 1}});
    Mat  m = Mat::Identity(2, 2);
    m(0, 1) = 1;
    EXPECT_THROW(TwoCell::from_dense(X, X, m), CellMismatch);
    EXPECT_NO_THROW(TwoCell::from_dense(X, X, Mat::Identity(2, 2)));
}

TEST(Unitors, OnUnitCell) {
    auto one = id1(3);
    EXPECT_EQ(hcomp1(one, one), one);
    EXPECT_LE(fro(unitor_left(one).dense() - unitor_right(one).dense()), 0.0);
}

TEST(Unitors, TrivialOnSingleObject) {
    Rng  rng(19);
    auto X = random_one_cell(rng, 1, 1, 4, true);
    EXPECT_EQ(unitor_left(X).dense(), Mat::Identity(X.dim(), X.dim()));
    EXPECT_EQ(unitor_right(X).dense(), Mat::Identity(X.dim(), X.dim()));
}

TEST(Unitors, LeftUnitorSortsByRow) {
    auto X  = cell(1, 2, {{2, 1}, {1, 1}});
    Mat  L  = unitor_left(X).dense();
    // 1(x)X lists (u_1, x_2) before (u_2, x_1)
    Mat expect(2, 2);
    expect << 0, 1, 1, 0;
    EXPECT_EQ(L, expect);
    EXPECT_EQ(unitor_right(X).dense(), Mat::Identity(2, 2));
}

TEST(Unitors, Naturality) {
    Rng rng(20);
    for (int t = 0; t < 20; ++t) {
        auto X = random_one_cell(rng, 2, 3, 2, false), Xp = random_one_cell(rng, 2, 3, 2, false);
        auto f = random_two_cell(rng, X, Xp);
        EXPECT_LE(residual(unitor_left(Xp) * hcomp2(id2(id1(3)), f), f * unitor_left(X)), 1e-12);
        EXPECT_LE(residual(unitor_right(Xp) * hcomp2(f, id2(id1(2))), f * unitor_right(X)), 1e-12);
    }
}

TEST(Unitors, TriangleIdentity) {
    Rng rng(21);
    for (int t = 0; t < 30; ++t) {
        int  a = uniform_int(rng, 1, 3), b = uniform_int(rng, 1, 3), c = uniform_int(rng, 1, 3);
        auto X = random_one_cell(rng, a, b, 2, false);
        auto Y = random_one_cell(rng, b, c, 2, false);
        EXPECT_LE(residual(hcomp2(id2(Y), unitor_left(X)), hcomp2(unitor_right(Y), id2(X))), 1e-12);
    }
}

TEST(StandardDual, UnitCell) {
    auto d = standard_dual(id1(3));
    EXPECT_EQ(d.Xbar, id1(3));
    EXPECT_LE(fro(d.ev.dense() - Mat::Identity(3, 3)), 1e-15);
    EXPECT_LE(fro(d.coev.dense() - Mat::Identity(3, 3)), 1e-15);
}

TEST(StandardDual, SingleSector) {
    auto X = cell(1, 1, {{1, 1}, {1, 1}, {1, 1}});
    auto d = standard_dual(X);
    Mat  ev = d.ev.dense();
    ASSERT_EQ(ev.rows(), 1);
    ASSERT_EQ(ev.cols(), 9);
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) EXPECT_NEAR(std::abs(ev(0, p * 3 + q) - (p == q ? 1 / std::sqrt(3.0) : 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs((ev * ev.adjoint())(0, 0) - 1.0), 0.0, 1e-14);
}

TEST(StandardDual, TwoColumnsWeights) {
    auto X  = cell(2, 1, {{1, 1}, {1, 2}, {1, 1}, {1, 2}, {1, 2}});
    auto d  = standard_dual(X);
    auto r  = dual_residuals(d);
    EXPECT_LE(r.zigzag_X, 1e-12);
    EXPECT_LE(r.zigzag_Xbar, 1e-12);
    EXPECT_LE(r.separable, 1e-12);
    EXPECT_NEAR(std::abs(d.ev.block(0, 0).sum()), 2 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(std::abs(d.ev.block(1, 1).sum()), 3 / std::sqrt(3.0), 1e-14);
}

TEST(StandardDual, RandomZigZags) {
    Rng rng(22);
    for (int t = 0; t < 30; ++t) {
        auto X = random_one_cell(rng, uniform_int(rng, 1, 3), uniform_int(rng, 1, 3), 3, true);
        auto r = dual_residuals(standard_dual(X));
        EXPECT_LE(r.zigzag_X, 1e-9);
        EXPECT_LE(r.zigzag_Xbar, 1e-9);
        EXPECT_LE(r.separable, 1e-9);
    }
}

TEST(StandardDual, EmptyColumn) {
    auto X = cell(2, 1, {{1, 1}});
    try {
        standard_dual(X);
        FAIL();
    } catch (const EmptyColumn &e) {
        EXPECT_EQ(e.column, 2);
    }
}

TEST(Whisker, MatchesDenseWhiskering) {
    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
        int  a = uniform_int(rng, 1, 3), b = uniform_int(rng, 1, 3), c = uniform_int(rng, 1, 3);
        auto X  = random_one_cell(rng, a, b, 2, false), Xp = random_one_cell(rng, a, b, 2, false);
        auto Y  = random_one_cell(rng, b, c, 2, false), Yp = random_one_cell(rng, b, c, 2, false);
        auto Z  = random_one_cell(rng, a, c, 3, false);
        auto f  = random_two_cell(rng, X, Xp);
        auto g  = random_two_cell(rng, Y, Yp);
        auto h  = random_two_cell(rng, Z, hcomp1(Y, X));
        EXPECT_LE(residual(whisker_left_apply(Y, f, h), hcomp2(id2(Y), f) * h), 1e-12);
        EXPECT_LE(residual(whisker_right_apply(g, X, h), hcomp2(g, id2(X)) * h), 1e-12);
    }
}

TEST(Whisker, SnakesMatchDenseComposites) {
    Rng rng(78);
    for (int t = 0; t < 20; ++t) {
        int  n[5];
        for (auto &x : n) x = uniform_int(rng, 1, 3);
        // A: n1 -> n0, D: n2 -> n1, B: n3 -> n2, C: n2... chosen so that every composite types
        auto A  = random_one_cell(rng, n[1], n[0], 2, false);
        auto D  = random_one_cell(rng, n[2], n[1], 2, false);
        auto B  = random_one_cell(rng, n[3], n[2], 2, false);
        auto Cc = random_one_cell(rng, n[2], n[0], 2, false);
        auto E  = random_one_cell(rng, n[3], n[1], 2, false);
        auto g  = random_two_cell(rng, Cc, hcomp1(A, D));
        auto f  = random_two_cell(rng, hcomp1(D, B), E);
        EXPECT_LE(residual(snake_left(A, D, B, g, f), hcomp2(id2(A), f) * hcomp2(g, id2(B))), 1e-12);

        // B': n1 -> n0, D': n2 -> n1, A': n3 -> n2, g': C' -> D' A', f': B' D' -> E'
        auto B2 = random_one_cell(rng, n[1], n[0], 2, false);
        auto D2 = random_one_cell(rng, n[2], n[1], 2, false);
        auto A2 = random_one_cell(rng, n[3], n[2], 2, false);
        auto C2 = random_one_cell(rng, n[3], n[1], 2, false);
        auto E2 = random_one_cell(rng, n[2], n[0], 2, false);
        auto g2 = random_two_cell(rng, C2, hcomp1(D2, A2));
        auto f2 = random_two_cell(rng, hcomp1(B2, D2), E2);
        EXPECT_LE(residual(snake_right(B2, D2, A2, f2, g2), hcomp2(f2, id2(A2)) * hcomp2(id2(B2), g2)), 1e-12);
    }
}
