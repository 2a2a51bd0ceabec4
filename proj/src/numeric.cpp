#include "qsys/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace qsys {

namespace {

// Rotate each column so its first entry of largest modulus is real positive.
void fix_phases(Mat &V) {
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        Eigen::Index best = 0;
        double       mag  = -1.0;
        for (Eigen::Index r = 0; r < V.rows(); ++r) {
            double a = std::abs(V(r, c));
            if (a > mag + 1e-12) {
                mag  = a;
                best = r;
            }
        }
        if (mag > 0) V.col(c) *= std::conj(V(best, c)) / mag;
    }
}

} // namespace

void Tolerance::validate() const {
    if (!(atol > 0) || !(gap_tol > 0) || gap_tol < atol)
        throw InvalidTolerance("need atol > 0, gap_tol > 0, gap_tol >= atol");
}

Mat kron(const Mat &A, const Mat &B) {
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

Mat dsum(const std::vector<Mat> &blocks) {
    Eigen::Index r = 0, c = 0;
    for (const auto &b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Mat D = Mat::Zero(r, c);
    r = c = 0;
    for (const auto &b : blocks) {
        D.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return D;
}

Mat dagger(const Mat &A) { return A.adjoint(); }

double fro(const Mat &A) { return A.size() == 0 ? 0.0 : A.norm(); }

Mat range_isometry(const Mat &P, const Tolerance &tol) {
    if (P.rows() != P.cols()) throw NotAProjection("matrix is not square");
    if (P.rows() == 0) return Mat(0, 0);
    if (fro(P - P.adjoint()) > tol.atol) throw NotAProjection("matrix is not hermitian");
    if (fro(P * P - P) > tol.atol) throw NotAProjection("matrix is not idempotent");
    Mat                                      H = (P + P.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat>       es(H);
    const auto                              &ev = es.eigenvalues();
    std::vector<Eigen::Index>                keep;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev(k) > 0.5) keep.push_back(k);
    Mat V(P.rows(), static_cast<Eigen::Index>(keep.size()));
    // eigenvalues come ascending; list the range in descending order of eigenvalue
    for (std::size_t c = 0; c < keep.size(); ++c) V.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[keep.size() - 1 - c]);
    fix_phases(V);
    return V;
}

std::vector<SpectralPair> spectral_projections(const Mat &H, const Tolerance &tol) {
    if (H.rows() != H.cols()) throw NotHermitian("matrix is not square");
    if (fro(H - H.adjoint()) > tol.atol) throw NotHermitian("residual exceeds atol");
    std::vector<SpectralPair> out;
    if (H.rows() == 0) return out;
    Eigen::SelfAdjointEigenSolver<Mat> es((H + H.adjoint()) / 2.0);
    const auto                        &ev = es.eigenvalues();
    const auto                        &U  = es.eigenvectors();
    Eigen::Index                       start = 0;
    for (Eigen::Index k = 1; k <= ev.size(); ++k) {
        if (k == ev.size() || ev(k) - ev(k - 1) >= tol.gap_tol) {
            Mat    B    = U.middleCols(start, k - start);
            double mean = ev.segment(start, k - start).mean();
            out.push_back({mean, B * B.adjoint()});
            start = k;
        }
    }
    return out;
}

Mat null_space(const Mat &A, double thr) {
    const Eigen::Index n = A.cols();
    if (n == 0) return Mat(0, 0);
    if (A.rows() == 0) return Mat::Identity(n, n);
    Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeFullV);
    const auto        &s    = svd.singularValues();
    Eigen::Index       rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > thr) ++rank;
    Mat N = svd.matrixV().rightCols(n - rank);
    fix_phases(N);
    return N;
}

Mat column_space(const Mat &A, double thr) {
    if (A.rows() == 0 || A.cols() == 0) return Mat(A.rows(), 0);
    Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeThinU);
    const auto        &s    = svd.singularValues();
    Eigen::Index       rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > thr) ++rank;
    Mat U = svd.matrixU().leftCols(rank);
    fix_phases(U);
    return U;
}

std::vector<Mat> commutant_basis(const std::vector<Mat> &generators, const Tolerance &tol) {
    if (generators.empty()) throw DimensionMismatch("no generators given");
    const Eigen::Index n = generators.front().rows();
    for (const auto &g : generators)
        if (g.rows() != n || g.cols() != n) throw DimensionMismatch("generators must be square of equal size");
    // vec(Tg - gT) = (g^T (x) I - I (x) g) vec(T), column-major vec
    const Eigen::Index nn = n * n;
    Mat                M(static_cast<Eigen::Index>(generators.size()) * nn, nn);
    Mat                I = Mat::Identity(n, n);
    for (std::size_t k = 0; k < generators.size(); ++k)
        M.middleRows(static_cast<Eigen::Index>(k) * nn, nn) = kron(generators[k].transpose(), I) - kron(I, generators[k]);
    double scale = 1.0;
    for (const auto &g : generators) scale = std::max(scale, fro(g));
    Mat              N = null_space(M, tol.gap_tol * scale);
    std::vector<Mat> basis;
    for (Eigen::Index c = 0; c < N.cols(); ++c) basis.push_back(N.col(c).reshaped(n, n));
    return basis;
}

} // namespace qsys
