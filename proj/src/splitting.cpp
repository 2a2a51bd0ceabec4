#include "qsys/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsys/random.hpp"

namespace qsys {

namespace {

// Q viewed as a graded algebra: an element has one component per sector (j, k) and
// a_jl * b_lk lands in sector (j, k).
class Algebra {
public:
    using Elem = std::vector<Vec>;

    explicit Algebra(const QSystem &q) : Q_(q.Q), n_(q.Q.src()) {
        auto L = detail::product_layout(Q_, Q_);
        M_.resize(static_cast<std::size_t>(n_ * n_ * n_));
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) {
                const Mat &B = q.m.block(j, k);
                for (int l = 0; l < n_; ++l) {
                    const auto &pos = L.pos[static_cast<std::size_t>(j * n_ + k)][static_cast<std::size_t>(l)];
                    Mat         S(B.rows(), static_cast<Eigen::Index>(pos.size()));
                    for (std::size_t c = 0; c < pos.size(); ++c) S.col(static_cast<Eigen::Index>(c)) = B.col(pos[c]);
                    mc(j, l, k) = std::move(S);
                }
            }
        for (int j = 0; j < n_; ++j) unit_.push_back(q.i.block(j, j).col(0));
    }

    int         n() const { return n_; }
    int         dim(int j, int k) const { return Q_.sector_dim(j, k); }
    // Unit, supported on the diagonal sectors.
    const Elem &unit() const { return unit_; }

    Mat       &mc(int j, int l, int k) { return M_[static_cast<std::size_t>((j * n_ + l) * n_ + k)]; }
    const Mat &mc(int j, int l, int k) const { return M_[static_cast<std::size_t>((j * n_ + l) * n_ + k)]; }

    Vec mult(const Vec &a, const Vec &b, int j, int l, int k) const { return mc(j, l, k) * kron(a, b); }

    // x -> a x on sector (l, k), for a in sector (j, l)
    Mat left_op(const Vec &a, int j, int l, int k) const { return mc(j, l, k) * kron(a, Mat::Identity(dim(l, k), dim(l, k))); }
    // x -> x b on sector (j, l), for b in sector (l, k)
    Mat right_op(const Vec &b, int j, int l, int k) const { return mc(j, l, k) * kron(Mat::Identity(dim(j, l), dim(j, l)), b); }

    // Product of elements supported on diagonal sectors.
    Elem mult_diag(const Elem &a, const Elem &b) const {
        Elem c(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) c[static_cast<std::size_t>(j)] = mult(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(j)], j, j, j);
        return c;
    }

private:
    OneCell          Q_;
    int              n_;
    std::vector<Mat> M_;
    Elem             unit_;
};

using Elem = Algebra::Elem;

Vec stack(const Elem &e) {
    Eigen::Index len = 0;
    for (const auto &v : e) len += v.size();
    Vec          s(len);
    Eigen::Index off = 0;
    for (const auto &v : e) {
        s.segment(off, v.size()) = v;
        off += v.size();
    }
    return s;
}

Elem unstack(const Vec &s, const Algebra &A) {
    Elem         e(static_cast<std::size_t>(A.n()));
    Eigen::Index off = 0;
    for (int j = 0; j < A.n(); ++j) {
        e[static_cast<std::size_t>(j)] = s.segment(off, A.dim(j, j));
        off += A.dim(j, j);
    }
    return e;
}

// Center of the algebra, as an orthonormal basis of vectors over the diagonal sectors.
Mat center_basis(const Algebra &A, const Tolerance &tol) {
    const int         n = A.n();
    std::vector<int>  offset(static_cast<std::size_t>(n + 1), 0);
    for (int j = 0; j < n; ++j) offset[static_cast<std::size_t>(j + 1)] = offset[static_cast<std::size_t>(j)] + A.dim(j, j);
    Eigen::Index rows = 0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) rows += static_cast<Eigen::Index>(A.dim(j, k)) * A.dim(j, k);
    Mat          E = Mat::Zero(rows, offset[static_cast<std::size_t>(n)]);
    Eigen::Index r = 0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            int d = A.dim(j, k);
            for (int b = 0; b < d; ++b) {
                Vec e = Vec::Zero(d);
                e(b)  = 1;
                // z_j e - e z_k
                E.block(r, offset[static_cast<std::size_t>(j)], d, A.dim(j, j)) += A.right_op(e, j, j, k);
                E.block(r, offset[static_cast<std::size_t>(k)], d, A.dim(k, k)) -= A.left_op(e, j, k, k);
                r += d;
            }
        }
    double scale = std::max(1.0, fro(E) / std::sqrt(static_cast<double>(std::max<Eigen::Index>(1, E.cols()))));
    return null_space(E, tol.gap_tol * scale);
}

struct Block {
    Elem             e;     // minimal central idempotent
    std::vector<int> dims;  // dim V_t[j] for each row index j
    int              total; // sum of dims
    int              first; // first basis position (over diagonal sectors) where e is nonzero
};

std::vector<Block> central_blocks(const Algebra &A, const Tolerance &tol, Rng &rng) {
    Mat N = center_basis(A, tol);
    if (N.cols() == 0) throw InvalidQSystem("algebra has trivial center");
    const Eigen::Index kc = N.cols();
    for (int attempt = 0; attempt < 5; ++attempt) {
        Elem z = unstack(N * random_matrix(rng, static_cast<int>(kc), 1), A);
        Mat  Mz(kc, kc);
        for (Eigen::Index b = 0; b < kc; ++b) Mz.col(b) = N.adjoint() * stack(A.mult_diag(z, unstack(N.col(b), A)));
        Eigen::ComplexEigenSolver<Mat> es(Mz);
        const auto                    &lam   = es.eigenvalues();
        double                         scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
        bool                           ok    = true;
        for (Eigen::Index a = 0; a < kc && ok; ++a)
            for (Eigen::Index b = a + 1; b < kc; ++b)
                if (std::abs(lam(a) - lam(b)) < tol.gap_tol * scale) ok = false;
        if (!ok) continue;
        std::vector<Block> blocks;
        Vec                sum = Vec::Zero(N.rows());
        for (Eigen::Index t = 0; t < kc && ok; ++t) {
            Elem   y  = unstack(N * es.eigenvectors().col(t), A);
            Elem   y2 = A.mult_diag(y, y);
            Vec    ys = stack(y), y2s = stack(y2);
            cplx   mu = ys.dot(y2s) / ys.squaredNorm();
            if (std::abs(mu) < tol.gap_tol) {
                ok = false;
                break;
            }
            Block B;
            B.e = unstack(ys / mu, A);
            if (fro(stack(A.mult_diag(B.e, B.e)) - stack(B.e)) > tol.gap_tol * std::max(1.0, stack(B.e).norm())) {
                ok = false;
                break;
            }
            sum += stack(B.e);
            B.total = 0;
            for (int j = 0; j < A.n(); ++j) {
                // L_e on the corner (j, j) is an idempotent of rank dim(V_t[j])^2
                double tr = A.left_op(B.e[static_cast<std::size_t>(j)], j, j, j).trace().real();
                int    d  = static_cast<int>(std::lround(std::sqrt(std::max(0.0, tr))));
                if (std::abs(static_cast<double>(d * d) - tr) > 1e-3) ok = false;
                B.dims.push_back(d);
                B.total += d;
            }
            Vec    es_ = stack(B.e);
            double thr = tol.gap_tol * std::max(1.0, es_.norm());
            B.first    = 0;
            while (B.first < es_.size() && std::abs(es_(B.first)) <= thr) ++B.first;
            if (B.total == 0) ok = false;
            blocks.push_back(std::move(B));
        }
        if (!ok) continue;
        if (fro(sum - stack(A.unit())) > tol.gap_tol * std::max(1.0, sum.norm())) continue;
        std::stable_sort(blocks.begin(), blocks.end(), [](const Block &a, const Block &b) {
            return a.total != b.total ? a.total < b.total : a.first < b.first;
        });
        return blocks;
    }
    throw DegenerateRandomElement("no random central element with separated spectrum after 5 attempts");
}

Algebra checked_algebra(const QSystem &q, const Tolerance &tol) {
    tol.validate();
    require_qsystem(q, tol);
    return Algebra(q);
}

// Frame of one block: V[j] spans X[j][t] inside Q[j][jt], W[i] spans Xbar[t][i] inside Q[jt][i].
struct Frame {
    int              jt;
    Vec              f;
    std::vector<Mat> V, W;
};

Frame block_frame(const Algebra &A, const Block &B, const Tolerance &tol, Rng &rng) {
    const int n  = A.n();
    Tolerance loose{tol.gap_tol, tol.gap_tol};
    Frame     F;
    F.jt = 0;
    while (F.jt < n && B.dims[static_cast<std::size_t>(F.jt)] == 0) ++F.jt;
    const int  jt = F.jt;
    const Vec &u  = B.e[static_cast<std::size_t>(jt)];
    const int  d  = B.dims[static_cast<std::size_t>(jt)];

    // ranges of right multiplication by u on the columns-jt sectors
    std::vector<Mat> Vu(static_cast<std::size_t>(n));
    Eigen::Index     total = 0;
    for (int j = 0; j < n; ++j) {
        Vu[static_cast<std::size_t>(j)] = range_isometry(A.right_op(u, j, jt, jt), loose);
        total += Vu[static_cast<std::size_t>(j)].cols();
    }
    // the corner u A[jt][jt] u
    Mat corner = column_space(A.left_op(u, jt, jt, jt) * A.right_op(u, jt, jt, jt), 0.5);
    if (corner.cols() != static_cast<Eigen::Index>(d) * d) throw NormalizationFailure("corner dimension mismatch");

    for (int attempt = 0; attempt < 5; ++attempt) {
        Vec          h = corner * random_matrix(rng, static_cast<int>(corner.cols()), 1);
        Mat          H = Mat::Zero(total, total);
        Eigen::Index off = 0;
        for (int j = 0; j < n; ++j) {
            const Mat &Vj = Vu[static_cast<std::size_t>(j)];
            if (Vj.cols() == 0) continue;
            Mat T                                   = Vj.adjoint() * A.right_op(h, j, jt, jt) * Vj;
            H.block(off, off, Vj.cols(), Vj.cols()) = (T + T.adjoint()) / 2.0;
            off += Vj.cols();
        }
        auto spec = spectral_projections(H, loose);
        if (static_cast<int>(spec.size()) != d) continue;
        bool even = true;
        for (const auto &s : spec)
            if (std::abs(s.projection.trace().real() - static_cast<double>(B.total)) > 1e-3) even = false;
        if (!even) continue;
        // restrict the first spectral projection to the (jt, jt) corner and apply it to u
        off = 0;
        for (int j = 0; j < jt; ++j) off += Vu[static_cast<std::size_t>(j)].cols();
        const Mat &Vt = Vu[static_cast<std::size_t>(jt)];
        Mat        Pi = Vt * spec.front().projection.block(off, off, Vt.cols(), Vt.cols()) * Vt.adjoint();
        F.f           = Pi * u;
        if (fro(A.mult(F.f, F.f, jt, jt, jt) - F.f) > tol.gap_tol * std::max(1.0, F.f.norm())) continue;
        for (int j = 0; j < n; ++j) {
            F.V.push_back(range_isometry(A.right_op(F.f, j, jt, jt), loose));
            F.W.push_back(column_space(A.left_op(F.f, jt, jt, j), 0.5));
            if (F.V.back().cols() != B.dims[static_cast<std::size_t>(j)] || F.W.back().cols() != B.dims[static_cast<std::size_t>(j)])
                throw NormalizationFailure("ideal dimensions disagree with the central decomposition");
        }
        return F;
    }
    throw DegenerateRandomElement("no random corner element with simple spectrum after 5 attempts");
}

} // namespace

void require_qsystem(const QSystem &q, const Tolerance &tol) {
    auto r = check_qsystem(q, Tolerance{tol.gap_tol, tol.gap_tol});
    if (!r.pass()) throw InvalidQSystem("Q-system residuals exceed gap_tol (max " + std::to_string(r.max_residual()) + ")");
}

ProjectionSplit split_projection(const OneCell &X, const TwoCell &p, const Tolerance &tol) {
    if (p.source() != X || p.target() != X) throw CellMismatch("p must be an endomorphism of X");
    if (residual(p, p.adjoint()) > tol.atol) throw NotAProjection("p is not hermitian");
    if (residual(p * p, p) > tol.atol) throw NotAProjection("p is not idempotent");
    std::vector<Mat>   V(static_cast<std::size_t>(X.num_sectors()));
    std::vector<Grade> g;
    for (int r = 0; r < X.tgt(); ++r)
        for (int c = 0; c < X.src(); ++c) {
            Mat &Vs = V[static_cast<std::size_t>(X.sector_index(r, c))];
            Vs      = range_isometry(p.block(r, c), Tolerance{1.0, 1.0});
            for (Eigen::Index a = 0; a < Vs.cols(); ++a) g.push_back({r, c});
        }
    ProjectionSplit s;
    s.Y = OneCell(X.src(), X.tgt(), std::move(g));
    s.u = TwoCell(s.Y, X);
    for (int r = 0; r < X.tgt(); ++r)
        for (int c = 0; c < X.src(); ++c) s.u.block(r, c) = V[static_cast<std::size_t>(X.sector_index(r, c))];
    return s;
}

RegularRep regular_reps(const QSystem &q, const Tolerance &tol) {
    Algebra        A = checked_algebra(q, tol);
    const OneCell &Q = q.Q;
    const int      n = A.n();
    RegularRep     R;
    for (int g = 0; g < Q.dim(); ++g) {
        auto [j, l] = Q.grade(g);
        Vec e       = Vec::Zero(A.dim(j, l));
        e(Q.local(g)) = 1;
        Mat L = Mat::Zero(Q.dim(), Q.dim()), Rm = Mat::Zero(Q.dim(), Q.dim());
        for (int k = 0; k < n; ++k) {
            // L_e: Q[l][k] -> Q[j][k]
            Mat         op = A.left_op(e, j, l, k);
            const auto &to = Q.sector(j, k), &from = Q.sector(l, k);
            for (std::size_t a = 0; a < to.size(); ++a)
                for (std::size_t b = 0; b < from.size(); ++b) L(to[a], from[b]) = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        }
        for (int i = 0; i < n; ++i) {
            // R_e: Q[i][j] -> Q[i][l]
            Mat         op = A.right_op(e, i, j, l);
            const auto &to = Q.sector(i, l), &from = Q.sector(i, j);
            for (std::size_t a = 0; a < to.size(); ++a)
                for (std::size_t b = 0; b < from.size(); ++b) Rm(to[a], from[b]) = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        }
        R.left_ops.push_back(std::move(L));
        R.right_ops.push_back(std::move(Rm));
    }
    return R;
}

std::vector<Mat> central_decomposition(const QSystem &q, const Tolerance &tol, std::uint64_t seed) {
    Algebra          A = checked_algebra(q, tol);
    Rng              rng(seed);
    const OneCell   &Q = q.Q;
    std::vector<Mat> out;
    for (const auto &B : central_blocks(A, tol, rng)) {
        Mat z = Mat::Zero(Q.dim(), Q.dim());
        for (int j = 0; j < A.n(); ++j)
            for (int k = 0; k < A.n(); ++k) {
                Mat         op = A.left_op(B.e[static_cast<std::size_t>(j)], j, j, k);
                const auto &s  = Q.sector(j, k);
                for (std::size_t a = 0; a < s.size(); ++a)
                    for (std::size_t b = 0; b < s.size(); ++b) z(s[a], s[b]) = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            }
        out.push_back(std::move(z));
    }
    return out;
}

SplitResult split_qsystem(const QSystem &q, const Tolerance &tol, std::uint64_t seed) {
    Algebra   A = checked_algebra(q, tol);
    Rng       rng(seed);
    const int n = A.n();
    auto      blocks = central_blocks(A, tol, rng);
    const int k      = static_cast<int>(blocks.size());

    std::vector<Frame>               frames;
    std::vector<double>              scale(static_cast<std::size_t>(k));
    std::vector<std::vector<Mat>>    pairing(static_cast<std::size_t>(k)); // [t][i], W[i]-rows by V[i]-cols
    for (int t = 0; t < k; ++t) {
        Frame F = block_frame(A, blocks[static_cast<std::size_t>(t)], tol, rng);
        // the product v (x) w -> v w is a multiple of an isometry on each block
        double num = 0.0, den = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Mat P = A.mc(j, F.jt, i) * kron(F.V[static_cast<std::size_t>(j)], F.W[static_cast<std::size_t>(i)]);
                num += P.squaredNorm();
                den += static_cast<double>(P.cols());
            }
        double c = std::sqrt(num / den);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Mat P = A.mc(j, F.jt, i) * kron(F.V[static_cast<std::size_t>(j)], F.W[static_cast<std::size_t>(i)]) / c;
                if (fro(P.adjoint() * P - Mat::Identity(P.cols(), P.cols())) > tol.gap_tol)
                    throw NormalizationFailure("block " + std::to_string(t + 1) + " admits no isometric scaling");
            }
        // pairing w_b v_a = s_ba f, rotated so that it becomes positive
        double ff = F.f.squaredNorm();
        for (int i = 0; i < n; ++i) {
            Mat &Vi = F.V[static_cast<std::size_t>(i)];
            Mat &Wi = F.W[static_cast<std::size_t>(i)];
            Mat  S  = (F.f.adjoint() * A.mc(F.jt, i, F.jt) * kron(Wi, Vi)).reshaped(Vi.cols(), Wi.cols()).transpose() / (ff * c);
            if (S.size() == 0) {
                pairing[static_cast<std::size_t>(t)].push_back(S);
                continue;
            }
            Eigen::JacobiSVD<Mat> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
            Mat                   U = svd.matrixU() * svd.matrixV().adjoint();
            Wi                      = Wi * U.conjugate();
            pairing[static_cast<std::size_t>(t)].push_back(svd.matrixV() * svd.singularValues().asDiagonal() * svd.matrixV().adjoint());
        }
        scale[static_cast<std::size_t>(t)] = c;
        frames.push_back(std::move(F));
    }

    SplitResult res;
    res.k = k;
    std::vector<Grade> gx, gb;
    for (int j = 0; j < n; ++j)
        for (int t = 0; t < k; ++t)
            for (int a = 0; a < blocks[static_cast<std::size_t>(t)].dims[static_cast<std::size_t>(j)]; ++a) {
                gx.push_back({j, t});
                gb.push_back({t, j});
            }
    for (const auto &B : blocks) res.block_dims.push_back(B.total);
    OneCell X(k, n, std::move(gx)), Xb(n, k, std::move(gb));

    auto LX = detail::product_layout(X, Xb);
    res.gamma = TwoCell(LX.cell, q.Q);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < k; ++t) {
                const Frame &F   = frames[static_cast<std::size_t>(t)];
                const auto  &pos = LX.pos[static_cast<std::size_t>(j * n + i)][static_cast<std::size_t>(t)];
                if (pos.empty()) continue;
                Mat P = A.mc(j, F.jt, i) * kron(F.V[static_cast<std::size_t>(j)], F.W[static_cast<std::size_t>(i)]) / scale[static_cast<std::size_t>(t)];
                for (std::size_t c = 0; c < pos.size(); ++c) res.gamma.block(j, i).col(pos[c]) = P.col(static_cast<Eigen::Index>(c));
            }

    bool standard = true;
    for (int t = 0; t < k; ++t) {
        double w = 1.0 / std::sqrt(static_cast<double>(blocks[static_cast<std::size_t>(t)].total));
        for (const auto &P : pairing[static_cast<std::size_t>(t)])
            if (P.size() > 0 && fro(P - w * Mat::Identity(P.rows(), P.cols())) > 10 * tol.atol) standard = false;
    }
    res.standard = standard;
    if (standard) {
        res.pair = standard_dual(X);
        return res;
    }

    DualPair &d = res.pair;
    d.X         = X;
    d.Xbar      = Xb;
    auto EL     = detail::product_layout(Xb, X);
    d.ev        = TwoCell(EL.cell, id1(k));
    for (int t = 0; t < k; ++t)
        for (int i = 0; i < n; ++i) {
            const Mat  &P   = pairing[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
            const auto &pos = EL.pos[static_cast<std::size_t>(t * k + t)][static_cast<std::size_t>(i)];
            for (Eigen::Index b = 0; b < P.rows(); ++b)
                for (Eigen::Index a = 0; a < P.cols(); ++a) d.ev.block(t, t)(0, pos[static_cast<std::size_t>(b * P.cols() + a)]) = P(b, a);
        }
    auto CL = detail::product_layout(X, Xb);
    d.coev  = TwoCell(id1(n), CL.cell);
    for (int j = 0; j < n; ++j)
        for (int t = 0; t < k; ++t) {
            const Mat &P = pairing[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
            if (P.size() == 0) continue;
            Mat         C   = P.inverse();
            const auto &pos = CL.pos[static_cast<std::size_t>(j * n + j)][static_cast<std::size_t>(t)];
            for (Eigen::Index a = 0; a < C.rows(); ++a)
                for (Eigen::Index b = 0; b < C.cols(); ++b) d.coev.block(j, j)(pos[static_cast<std::size_t>(a * C.cols() + b)], 0) = C(a, b);
        }
    return res;
}

} // namespace qsys
