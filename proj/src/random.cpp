#include "qsys/random.hpp"

#include <algorithm>

namespace qsys {

int uniform_int(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Mat random_matrix(Rng &rng, int rows, int cols) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat                              m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            double re = nd(rng);
            double im = nd(rng);
            m(i, j)   = cplx(re, im);
        }
    return m;
}

Mat random_unitary(Rng &rng, int n) {
    if (n == 0) return Mat(0, 0);
    Eigen::HouseholderQR<Mat> qr(random_matrix(rng, n, n));
    Mat                       Q = qr.householderQ();
    Mat                       R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        double a = std::abs(R(k, k));
        if (a > 0) Q.col(k) *= R(k, k) / a;
    }
    return Q;
}

Mat random_isometry(Rng &rng, int n, int k) { return random_unitary(rng, n).leftCols(k); }

Mat random_hermitian(Rng &rng, int n) {
    Mat a = random_matrix(rng, n, n);
    return (a + a.adjoint()) / 2.0;
}

OneCell random_one_cell(Rng &rng, int src, int tgt, int max_sector_dim, bool full_support) {
    std::vector<Grade> g;
    for (int c = 0; c < src; ++c) {
        int total = 0;
        for (int r = 0; r < tgt; ++r) {
            int n = uniform_int(rng, 0, max_sector_dim);
            total += n;
            for (int k = 0; k < n; ++k) g.push_back({r, c});
        }
        if (full_support && total == 0) g.push_back({uniform_int(rng, 0, tgt - 1), c});
    }
    std::shuffle(g.begin(), g.end(), rng);
    return OneCell(src, tgt, std::move(g));
}

TwoCell random_two_cell(Rng &rng, const OneCell &source, const OneCell &target) {
    TwoCell f(source, target);
    for (int r = 0; r < source.tgt(); ++r)
        for (int c = 0; c < source.src(); ++c) f.block(r, c) = random_matrix(rng, target.sector_dim(r, c), source.sector_dim(r, c));
    return f;
}

TwoCell random_unitary_two_cell(Rng &rng, const OneCell &X) {
    TwoCell f(X, X);
    for (int r = 0; r < X.tgt(); ++r)
        for (int c = 0; c < X.src(); ++c) f.block(r, c) = random_unitary(rng, X.sector_dim(r, c));
    return f;
}

TwoCell random_projection(Rng &rng, const OneCell &X) {
    TwoCell p(X, X);
    for (int r = 0; r < X.tgt(); ++r)
        for (int c = 0; c < X.src(); ++c) {
            int n = X.sector_dim(r, c);
            if (n == 0) continue;
            Mat W        = random_isometry(rng, n, uniform_int(rng, 0, n));
            p.block(r, c) = W * W.adjoint();
        }
    return p;
}

} // namespace qsys

namespace qsys {

DualPair random_twisted_dual(Rng &rng, const OneCell &X) {
    DualPair d = standard_dual(X);
    const int n = X.tgt(), k = X.src();
    // K[t][i]: positive pairing between Xbar[t][i] and X[i][t]
    std::vector<std::vector<Mat>> K(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) {
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            int             dn = X.sector_dim(i, t);
            Mat             U  = random_unitary(rng, dn);
            Eigen::VectorXd ev(dn);
            for (int a = 0; a < dn; ++a) ev(a) = 0.5 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            Mat P = U * ev.cast<cplx>().asDiagonal() * U.adjoint();
            norm2 += P.squaredNorm();
            K[static_cast<std::size_t>(t)].push_back(P);
        }
        for (auto &P : K[static_cast<std::size_t>(t)]) P /= std::sqrt(norm2);
    }
    auto EL = detail::product_layout(d.Xbar, X);
    d.ev    = TwoCell(EL.cell, id1(k));
    for (int t = 0; t < k; ++t)
        for (int i = 0; i < n; ++i) {
            const Mat  &P   = K[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
            const auto &pos = EL.pos[static_cast<std::size_t>(t * k + t)][static_cast<std::size_t>(i)];
            for (Eigen::Index b = 0; b < P.rows(); ++b)
                for (Eigen::Index a = 0; a < P.cols(); ++a) d.ev.block(t, t)(0, pos[static_cast<std::size_t>(b * P.cols() + a)]) = P(b, a);
        }
    auto CL = detail::product_layout(X, d.Xbar);
    d.coev  = TwoCell(id1(n), CL.cell);
    for (int j = 0; j < n; ++j)
        for (int t = 0; t < k; ++t) {
            const Mat &P = K[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
            if (P.size() == 0) continue;
            Mat         C   = P.inverse();
            const auto &pos = CL.pos[static_cast<std::size_t>(j * n + j)][static_cast<std::size_t>(t)];
            for (Eigen::Index a = 0; a < C.rows(); ++a)
                for (Eigen::Index b = 0; b < C.cols(); ++b) d.coev.block(j, j)(pos[static_cast<std::size_t>(a * C.cols() + b)], 0) = C(a, b);
        }
    return d;
}

QSystem random_qsystem(Rng &rng, int n, int max_sector_dim) {
    auto X = random_one_cell(rng, uniform_int(rng, 1, 3), n, max_sector_dim, true);
    auto q = qsystem_from_dual(standard_dual(X));
    return transport(q, random_unitary_two_cell(rng, q.Q));
}

} // namespace qsys
