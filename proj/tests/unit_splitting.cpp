#include <algorithm>

#include <gtest/gtest.h>

#include "qsys/errors.hpp"
#include "qsys/random.hpp"
#include "qsys/splitting.hpp"

using namespace qsys;

namespace {

const Tolerance tol{};

OneCell cell(int src, int tgt, std::vector<Grade> one_based) {
    for (auto &g : one_based) {
        --g.row;
        --g.col;
    }
    return OneCell(src, tgt, std::move(one_based));
}

QSystem m2() { return qsystem_from_dual(standard_dual(cell(1, 1, {{1, 1}, {1, 1}}))); }

// Sector dimensions of column t, read top to bottom.
std::vector<int> column_signature(const OneCell &X, int t) {
    std::vector<int> s;
    for (int j = 0; j < X.tgt(); ++j) s.push_back(X.sector_dim(j, t));
    return s;
}

std::vector<std::vector<int>> signatures(const OneCell &X) {
    std::vector<std::vector<int>> out;
    for (int t = 0; t < X.src(); ++t) out.push_back(column_signature(X, t));
    std::sort(out.begin(), out.end());
    return out;
}

int rank_of(const std::vector<Mat> &ops) {
    if (ops.empty()) return 0;
    const Eigen::Index n = ops[0].size();
    Mat                 S(n, static_cast<Eigen::Index>(ops.size()));
    for (std::size_t k = 0; k < ops.size(); ++k) S.col(static_cast<Eigen::Index>(k)) = ops[k].reshaped();
    Eigen::BDCSVD<Mat> svd(S);
    auto               s = svd.singularValues();
    int                r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > 1e-8 * std::max(1.0, s(0))) ++r;
    return r;
}

// Index of basis pair (a, b) of Q (x) Q in lexicographic order, or -1 when incompatible.
int pair_index(const OneCell &Q, int a, int b) {
    int idx = 0;
    for (int p = 0; p < Q.dim(); ++p)
        for (int q = 0; q < Q.dim(); ++q) {
            if (Q.grade(p).col != Q.grade(q).row) continue;
            if (p == a && q == b) return idx;
            ++idx;
        }
    return -1;
}

Mat combine(const std::vector<Mat> &ops, const Vec &v) {
    Mat out = Mat::Zero(ops[0].rows(), ops[0].cols());
    for (std::size_t k = 0; k < ops.size(); ++k) out += v(static_cast<Eigen::Index>(k)) * ops[k];
    return out;
}

void expect_valid_split(const QSystem &q, const SplitResult &s) {
    EXPECT_TRUE(check_dual_pair(s.pair, tol).pass());
    auto back = qsystem_from_dual(s.pair);
    auto iso  = check_qsystem_iso(s.gamma, back, q, Tolerance{10 * tol.atol, tol.gap_tol});
    EXPECT_TRUE(iso.pass()) << iso.table();
    Mat G = s.gamma.dense();
    EXPECT_LE((G.adjoint() * G - Mat::Identity(G.cols(), G.cols())).norm(), 10 * tol.atol);
    EXPECT_LE((G * G.adjoint() - Mat::Identity(G.rows(), G.rows())).norm(), 10 * tol.atol);
    // Eq. (gamma o m_split = m_Q o (gamma x gamma)) and gamma o coev = i, stated directly
    EXPECT_LE(residual(s.gamma * back.m, q.m * hcomp2(s.gamma, s.gamma)), 10 * tol.atol);
    EXPECT_LE(residual(s.gamma * s.pair.coev, q.i), 10 * tol.atol);
    EXPECT_LE(residual(s.pair.ev * s.pair.ev.adjoint(), id2(id1(s.k))), 10 * tol.atol);
    ASSERT_EQ(static_cast<int>(s.block_dims.size()), s.k);
    for (int t = 0; t < s.k; ++t) {
        int d = 0;
        for (int j = 0; j < s.pair.X.tgt(); ++j) d += s.pair.X.sector_dim(j, t);
        EXPECT_EQ(d, s.block_dims[static_cast<std::size_t>(t)]);
    }
    EXPECT_TRUE(std::is_sorted(s.block_dims.begin(), s.block_dims.end()));
}

} // namespace

TEST(SplitProjection, IdentityGivesUnitary) {
    Rng  rng(201);
    auto X  = random_one_cell(rng, 2, 3, 2, true);
    auto sp = split_projection(X, id2(X), tol);
    EXPECT_EQ(sp.Y.dim(), X.dim());
    EXPECT_LE(residual(sp.u.adjoint() * sp.u, id2(sp.Y)), 10 * tol.atol);
    EXPECT_LE(residual(sp.u * sp.u.adjoint(), id2(X)), 10 * tol.atol);
}

TEST(SplitProjection, ZeroGivesEmpty) {
    Rng  rng(202);
    auto X  = random_one_cell(rng, 2, 2, 2, true);
    auto sp = split_projection(X, TwoCell(X, X), tol);
    EXPECT_EQ(sp.Y.dim(), 0);
}

TEST(SplitProjection, KnownSectorRanks) {
    Rng rng(203);
    for (int trial = 0; trial < 10; ++trial) {
        auto    X = random_one_cell(rng, 2, 3, 3, true);
        TwoCell p(X, X);
        std::vector<int> ranks;
        for (int r = 0; r < X.tgt(); ++r)
            for (int c = 0; c < X.src(); ++c) {
                int n = X.sector_dim(r, c);
                int k = uniform_int(rng, 0, n);
                ranks.push_back(k);
                if (n == 0) continue;
                Mat W         = random_isometry(rng, n, k);
                p.block(r, c) = W * W.adjoint();
            }
        auto sp = split_projection(X, p, tol);
        for (int r = 0, idx = 0; r < X.tgt(); ++r)
            for (int c = 0; c < X.src(); ++c, ++idx) EXPECT_EQ(sp.Y.sector_dim(r, c), ranks[static_cast<std::size_t>(idx)]);
        for (int q = 1; q < sp.Y.dim(); ++q) {
            auto a = sp.Y.grade(q - 1), b = sp.Y.grade(q);
            EXPECT_TRUE(a.row < b.row || (a.row == b.row && a.col <= b.col));
        }
        EXPECT_LE(residual(sp.u.adjoint() * sp.u, id2(sp.Y)), 10 * tol.atol);
        EXPECT_LE(residual(sp.u * sp.u.adjoint(), p), 10 * tol.atol);
    }
}

TEST(SplitProjection, RejectsNonProjection) {
    Rng  rng(204);
    auto X = random_one_cell(rng, 1, 2, 2, true);
    EXPECT_THROW(split_projection(X, random_two_cell(rng, X, X), tol), NotAProjection);
    EXPECT_THROW(split_projection(X, cplx(2.0) * id2(X), tol), NotAProjection);
}

TEST(RegularReps, TrivialAreMatrixUnits) {
    for (int n = 1; n <= 3; ++n) {
        auto rr = regular_reps(trivial_qsystem(n), tol);
        ASSERT_EQ(rr.left_ops.size(), static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            Mat E    = Mat::Zero(n, n);
            E(j, j)  = 1.0;
            EXPECT_LE((rr.left_ops[static_cast<std::size_t>(j)] - E).norm(), tol.atol);
            EXPECT_LE((rr.right_ops[static_cast<std::size_t>(j)] - E).norm(), tol.atol);
        }
    }
}

TEST(RegularReps, M2LeftSpanHasDimensionFour) {
    auto rr = regular_reps(m2(), tol);
    EXPECT_EQ(rank_of(rr.left_ops), 4);
    EXPECT_EQ(rank_of(rr.right_ops), 4);
}

TEST(RegularReps, HomomorphismAndUnit) {
    Rng rng(205);
    for (int trial = 0; trial < 5; ++trial) {
        auto q  = random_qsystem(rng, uniform_int(rng, 1, 3), 2);
        auto rr = regular_reps(q, tol);
        Mat  m  = q.m.dense();
        const int n = q.Q.dim();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int idx = pair_index(q.Q, a, b);
                Mat lhs = idx < 0 ? Mat::Zero(n, n) : combine(rr.left_ops, m.col(idx));
                Mat rhs = rr.left_ops[static_cast<std::size_t>(a)] * rr.left_ops[static_cast<std::size_t>(b)];
                EXPECT_LE((lhs - rhs).norm(), tol.atol);
            }
        Vec unit = q.i.dense().rowwise().sum();
        EXPECT_LE((combine(rr.left_ops, unit) - Mat::Identity(n, n)).norm(), tol.atol);
        EXPECT_LE((combine(rr.right_ops, unit) - Mat::Identity(n, n)).norm(), tol.atol);
    }
}

TEST(RegularReps, LeftCommutesWithRight) {
    Rng  rng(206);
    auto q  = random_qsystem(rng, 2, 2);
    auto rr = regular_reps(q, tol);
    for (auto &L : rr.left_ops)
        for (auto &R : rr.right_ops) EXPECT_LE((L * R - R * L).norm(), tol.atol);
}

TEST(RegularReps, SpansClosedUnderDagger) {
    Rng  rng(207);
    auto q  = random_qsystem(rng, 2, 2);
    auto rr = regular_reps(q, tol);
    for (const auto *ops : {&rr.left_ops, &rr.right_ops}) {
        int r = rank_of(*ops);
        for (auto &A : *ops) {
            auto with = *ops;
            with.push_back(A.adjoint());
            EXPECT_EQ(rank_of(with), r);
        }
    }
}

TEST(RegularReps, RejectsInvalid) {
    auto q = m2();
    q.m *= cplx(1.1);
    EXPECT_THROW(regular_reps(q, tol), InvalidQSystem);
}

TEST(CentralDecomposition, CountsBlocks) {
    EXPECT_EQ(central_decomposition(trivial_qsystem(3), tol, 1).size(), 3u);
    EXPECT_EQ(central_decomposition(m2(), tol, 1).size(), 1u);
    // two columns: a 2-dimensional and a 1-dimensional block
    auto q = qsystem_from_dual(standard_dual(cell(2, 1, {{1, 1}, {1, 1}, {1, 2}})));
    EXPECT_EQ(central_decomposition(q, tol, 1).size(), 2u);
}

TEST(CentralDecomposition, ProjectionsAreCentral) {
    Rng rng(208);
    for (int trial = 0; trial < 5; ++trial) {
        auto q  = random_qsystem(rng, uniform_int(rng, 1, 3), 2);
        auto rr = regular_reps(q, tol);
        auto zs = central_decomposition(q, tol, 7);
        const int n = q.Q.dim();
        Mat sum = Mat::Zero(n, n);
        for (std::size_t s = 0; s < zs.size(); ++s) {
            const Mat &z = zs[s];
            sum += z;
            EXPECT_LE((z - z.adjoint()).norm(), 10 * tol.atol);
            for (std::size_t t = 0; t < zs.size(); ++t) {
                Mat expect = s == t ? z : Mat::Zero(n, n);
                EXPECT_LE((z * zs[t] - expect).norm(), 10 * tol.atol);
            }
            for (auto &L : rr.left_ops) EXPECT_LE((z * L - L * z).norm(), 10 * tol.atol);
            for (auto &R : rr.right_ops) EXPECT_LE((z * R - R * z).norm(), 10 * tol.atol);
        }
        EXPECT_LE((sum - Mat::Identity(n, n)).norm(), 10 * tol.atol);
    }
}

TEST(SplitQSystem, Trivial) {
    for (int n = 1; n <= 4; ++n) {
        auto q = trivial_qsystem(n);
        auto s = split_qsystem(q, tol, 3);
        EXPECT_EQ(s.k, n);
        EXPECT_TRUE(s.standard);
        for (int d : s.block_dims) EXPECT_EQ(d, 1);
        expect_valid_split(q, s);
        // permutation with phases
        Mat G = s.gamma.dense();
        for (Eigen::Index r = 0; r < G.rows(); ++r) {
            int nonzero = 0;
            for (Eigen::Index c = 0; c < G.cols(); ++c)
                if (std::abs(G(r, c)) > 1e-9) {
                    ++nonzero;
                    EXPECT_NEAR(std::abs(G(r, c)), 1.0, 1e-9);
                }
            EXPECT_EQ(nonzero, 1);
        }
    }
}

TEST(SplitQSystem, M2) {
    auto q = m2();
    auto s = split_qsystem(q, tol, 4);
    EXPECT_EQ(s.k, 1);
    EXPECT_EQ(s.pair.X.src(), 1);
    EXPECT_EQ(s.pair.X.tgt(), 1);
    EXPECT_EQ(s.pair.X.dim(), 2);
    EXPECT_EQ(s.gamma.dense().rows(), 4);
    expect_valid_split(q, s);
}

TEST(SplitQSystem, RoundTripRandom) {
    Rng rng(209);
    int done = 0;
    while (done < 12) {
        auto X = random_one_cell(rng, uniform_int(rng, 1, 3), uniform_int(rng, 1, 3), 2, true);
        if (X.dim() > 24) continue;
        ++done;
        auto q = transport(qsystem_from_dual(standard_dual(X)), random_unitary_two_cell(rng, hcomp1(X, standard_dual(X).Xbar)));
        auto s = split_qsystem(q, tol, 11);
        EXPECT_EQ(s.k, X.src());
        EXPECT_EQ(signatures(s.pair.X), signatures(X));
        EXPECT_TRUE(s.standard);
        expect_valid_split(q, s);
    }
}

TEST(SplitQSystem, TwoToThree) {
    Rng  rng(210);
    auto X = random_one_cell(rng, 2, 3, 2, true);
    auto q = qsystem_from_dual(standard_dual(X));
    auto s = split_qsystem(q, tol, 5);
    EXPECT_EQ(s.k, 2);
    expect_valid_split(q, s);
}

TEST(SplitQSystem, TwistedPairing) {
    Rng rng(211);
    for (int trial = 0; trial < 6; ++trial) {
        auto X = random_one_cell(rng, uniform_int(rng, 1, 2), uniform_int(rng, 1, 3), 2, true);
        auto q = qsystem_from_dual(random_twisted_dual(rng, X));
        auto s = split_qsystem(q, tol, 13);
        EXPECT_EQ(s.k, X.src());
        EXPECT_EQ(signatures(s.pair.X), signatures(X));
        expect_valid_split(q, s);
    }
}

TEST(SplitQSystem, DeterministicForSeed) {
    Rng  rng(212);
    auto q = random_qsystem(rng, 2, 2);
    auto a = split_qsystem(q, tol, 99);
    auto b = split_qsystem(q, tol, 99);
    EXPECT_EQ(a.k, b.k);
    EXPECT_EQ(a.block_dims, b.block_dims);
    EXPECT_EQ(a.pair.X, b.pair.X);
    EXPECT_EQ(a.gamma.dense(), b.gamma.dense());
    auto c = split_qsystem(q, tol, 100);
    EXPECT_EQ(c.block_dims, a.block_dims);
    expect_valid_split(q, c);
}

TEST(SplitQSystem, RejectsInvalid) {
    auto q = m2();
    q.i *= cplx(0.5);
    EXPECT_THROW(split_qsystem(q, tol, 1), InvalidQSystem);
}
