#include "qsys/mathilb.hpp"

#include <cmath>
#include <string>

namespace qsys {

OneCell::OneCell() : OneCell(1, 1, {}) {}

OneCell::OneCell(int src, int tgt, std::vector<Grade> grading) {
    if (src < 1 || tgt < 1) throw CellMismatch("0-cells must be positive");
    auto d     = std::make_shared<Data>();
    d->src     = src;
    d->tgt     = tgt;
    d->grading = std::move(grading);
    d->sectors.resize(static_cast<std::size_t>(src * tgt));
    d->rows.resize(static_cast<std::size_t>(tgt));
    d->cols.resize(static_cast<std::size_t>(src));
    d->local.resize(d->grading.size());
    for (std::size_t q = 0; q < d->grading.size(); ++q) {
        auto [r, c] = d->grading[q];
        if (r < 0 || r >= tgt || c < 0 || c >= src)
            throw CellMismatch("grade (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") out of range");
        auto &sec   = d->sectors[static_cast<std::size_t>(r * src + c)];
        d->local[q] = static_cast<int>(sec.size());
        sec.push_back(static_cast<int>(q));
        d->rows[static_cast<std::size_t>(r)].push_back(static_cast<int>(q));
        d->cols[static_cast<std::size_t>(c)].push_back(static_cast<int>(q));
    }
    d_ = std::move(d);
}

bool OneCell::operator==(const OneCell &o) const {
    return d_ == o.d_ || (d_->src == o.d_->src && d_->tgt == o.d_->tgt && d_->grading == o.d_->grading);
}

TwoCell::TwoCell(OneCell source, OneCell target) : source_(std::move(source)), target_(std::move(target)) {
    if (source_.src() != target_.src() || source_.tgt() != target_.tgt())
        throw CellMismatch("source and target of a 2-cell must share endpoints");
    blocks_.resize(static_cast<std::size_t>(source_.num_sectors()));
    for (int r = 0; r < source_.tgt(); ++r)
        for (int c = 0; c < source_.src(); ++c) block(r, c) = Mat::Zero(target_.sector_dim(r, c), source_.sector_dim(r, c));
}

TwoCell TwoCell::from_dense(const OneCell &source, const OneCell &target, const Mat &m, double atol) {
    if (m.rows() != target.dim() || m.cols() != source.dim()) throw CellMismatch("matrix shape does not match cells");
    TwoCell f(source, target);
    double  off = 0.0;
    for (int p = 0; p < target.dim(); ++p)
        for (int q = 0; q < source.dim(); ++q) {
            if (target.grade(p) == source.grade(q)) {
                auto g                                   = target.grade(p);
                f.block(g.row, g.col)(target.local(p), source.local(q)) = m(p, q);
            } else {
                off += std::norm(m(p, q));
            }
        }
    if (std::sqrt(off) > atol) throw CellMismatch("matrix has entries outside the grading sectors");
    return f;
}

Mat TwoCell::dense() const {
    Mat m = Mat::Zero(target_.dim(), source_.dim());
    for (int r = 0; r < source_.tgt(); ++r)
        for (int c = 0; c < source_.src(); ++c) {
            const auto &ts = target_.sector(r, c);
            const auto &ss = source_.sector(r, c);
            const Mat  &b  = block(r, c);
            for (std::size_t i = 0; i < ts.size(); ++i)
                for (std::size_t j = 0; j < ss.size(); ++j) m(ts[i], ss[j]) = b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    return m;
}

double TwoCell::norm() const {
    double s = 0.0;
    for (const auto &b : blocks_) s += b.squaredNorm();
    return std::sqrt(s);
}

TwoCell TwoCell::adjoint() const {
    TwoCell a(target_, source_);
    for (std::size_t k = 0; k < blocks_.size(); ++k) a.blocks_[k] = blocks_[k].adjoint();
    return a;
}

TwoCell &TwoCell::operator+=(const TwoCell &o) {
    if (source_ != o.source_ || target_ != o.target_) throw CellMismatch("sum of 2-cells with different boundaries");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
    return *this;
}

TwoCell &TwoCell::operator-=(const TwoCell &o) {
    if (source_ != o.source_ || target_ != o.target_) throw CellMismatch("difference of 2-cells with different boundaries");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
    return *this;
}

TwoCell &TwoCell::operator*=(cplx s) {
    for (auto &b : blocks_) b *= s;
    return *this;
}

TwoCell operator+(TwoCell a, const TwoCell &b) { return a += b; }
TwoCell operator-(TwoCell a, const TwoCell &b) { return a -= b; }
TwoCell operator*(cplx s, TwoCell a) { return a *= s; }
TwoCell operator*(const TwoCell &g, const TwoCell &f) { return vcomp(g, f); }

double residual(const TwoCell &a, const TwoCell &b) { return (a - b).norm(); }

OneCell id1(int n) {
    if (n < 1) throw CellMismatch("0-cells must be positive");
    std::vector<Grade> g;
    for (int k = 0; k < n; ++k) g.push_back({k, k});
    return OneCell(n, n, std::move(g));
}

namespace detail {

ProductLayout product_layout(const OneCell &Y, const OneCell &X) {
    if (X.tgt() != Y.src()) throw CellMismatch("hcomp1: X.tgt != Y.src");
    const int          mid = X.tgt();
    std::vector<Grade> g;
    ProductLayout      L;
    L.pos.assign(static_cast<std::size_t>(Y.tgt() * X.src()), std::vector<std::vector<int>>(static_cast<std::size_t>(mid)));
    std::vector<int> fill(static_cast<std::size_t>(Y.tgt() * X.src()), 0);
    for (int p = 0; p < Y.dim(); ++p) {
        auto gp = Y.grade(p);
        for (int q : X.with_row(gp.col)) {
            auto        gq = X.grade(q);
            std::size_t s  = static_cast<std::size_t>(gp.row * X.src() + gq.col);
            L.pos[s][static_cast<std::size_t>(gp.col)].push_back(fill[s]++);
            g.push_back({gp.row, gq.col});
        }
    }
    L.cell = OneCell(X.src(), Y.tgt(), std::move(g));
    return L;
}

} // namespace detail

OneCell hcomp1(const OneCell &Y, const OneCell &X) { return detail::product_layout(Y, X).cell; }

OneCell hcomp1(const std::vector<OneCell> &cells) {
    if (cells.empty()) throw CellMismatch("hcomp1 of an empty list");
    OneCell acc = cells.back();
    for (std::size_t k = cells.size() - 1; k-- > 0;) acc = hcomp1(cells[k], acc);
    return acc;
}

TwoCell id2(const OneCell &X) {
    TwoCell f(X, X);
    for (int r = 0; r < X.tgt(); ++r)
        for (int c = 0; c < X.src(); ++c) f.block(r, c).setIdentity();
    return f;
}

TwoCell hcomp2(const TwoCell &g, const TwoCell &f) {
    const OneCell &Y = g.source(), &Yp = g.target(), &X = f.source(), &Xp = f.target();
    if (X.tgt() != Y.src()) throw CellMismatch("hcomp2: cells are not composable");
    auto    S = detail::product_layout(Y, X);
    auto    T = detail::product_layout(Yp, Xp);
    TwoCell h(S.cell, T.cell);
    for (int r = 0; r < Y.tgt(); ++r)
        for (int c = 0; c < X.src(); ++c) {
            std::size_t s = static_cast<std::size_t>(r * X.src() + c);
            Mat        &B = h.block(r, c);
            for (int k = 0; k < Y.src(); ++k) {
                const auto &sp = S.pos[s][static_cast<std::size_t>(k)];
                const auto &tp = T.pos[s][static_cast<std::size_t>(k)];
                if (sp.empty() || tp.empty()) continue;
                // entry (i1 i2, j1 j2) of the Kronecker product is G(i1, j1) F(i2, j2)
                const Mat &G = g.block(r, k), &F = f.block(k, c);
                const auto fr = F.rows(), fc = F.cols();
                for (Eigen::Index j1 = 0; j1 < G.cols(); ++j1)
                    for (Eigen::Index j2 = 0; j2 < fc; ++j2) {
                        auto col = B.col(sp[static_cast<std::size_t>(j1 * fc + j2)]);
                        for (Eigen::Index i1 = 0; i1 < G.rows(); ++i1) {
                            const cplx x = G(i1, j1);
                            if (x == cplx(0.0, 0.0)) continue;
                            for (Eigen::Index i2 = 0; i2 < fr; ++i2) col(tp[static_cast<std::size_t>(i1 * fr + i2)]) = x * F(i2, j2);
                        }
                    }
            }
        }
    return h;
}

namespace {
using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
} // namespace

TwoCell whisker_left_apply(const OneCell &Y, const TwoCell &f, const TwoCell &h) {
    const OneCell &X = f.source(), &Xp = f.target();
    auto           S = detail::product_layout(Y, X);
    if (h.target() != S.cell) throw CellMismatch("whisker: h does not land in Y (x) X");
    auto    T = detail::product_layout(Y, Xp);
    TwoCell out(h.source(), T.cell);
    for (int r = 0; r < Y.tgt(); ++r)
        for (int c = 0; c < X.src(); ++c) {
            std::size_t s  = static_cast<std::size_t>(r * X.src() + c);
            if (h.block(r, c).cols() == 0) continue;
            const RowMat H = h.block(r, c);
            RowMat       B = RowMat::Zero(out.block(r, c).rows(), H.cols());
            for (int k = 0; k < Y.src(); ++k) {
                const auto &sp = S.pos[s][static_cast<std::size_t>(k)];
                const auto &tp = T.pos[s][static_cast<std::size_t>(k)];
                const Mat  &fb = f.block(k, c);
                const int   nx = static_cast<int>(fb.cols()), ny = nx ? static_cast<int>(sp.size()) / nx : 0;
                const int   nt = static_cast<int>(fb.rows());
                if (nx == 0 || nt == 0 || ny == 0) continue;
                RowMat in(nx, H.cols());
                for (int i = 0; i < ny; ++i) {
                    for (int j = 0; j < nx; ++j) in.row(j) = H.row(sp[static_cast<std::size_t>(i * nx + j)]);
                    RowMat o = fb * in;
                    for (int j = 0; j < nt; ++j) B.row(tp[static_cast<std::size_t>(i * nt + j)]) = o.row(j);
                }
            }
            out.block(r, c) = B;
        }
    return out;
}

TwoCell whisker_right_apply(const TwoCell &g, const OneCell &X, const TwoCell &h) {
    const OneCell &Y = g.source(), &Yp = g.target();
    auto           S = detail::product_layout(Y, X);
    if (h.target() != S.cell) throw CellMismatch("whisker: h does not land in Y (x) X");
    auto    T = detail::product_layout(Yp, X);
    TwoCell out(h.source(), T.cell);
    for (int r = 0; r < Y.tgt(); ++r)
        for (int c = 0; c < X.src(); ++c) {
            std::size_t s = static_cast<std::size_t>(r * X.src() + c);
            if (h.block(r, c).cols() == 0) continue;
            const RowMat H = h.block(r, c);
            RowMat       B = RowMat::Zero(out.block(r, c).rows(), H.cols());
            for (int k = 0; k < Y.src(); ++k) {
                const auto &sp = S.pos[s][static_cast<std::size_t>(k)];
                const auto &tp = T.pos[s][static_cast<std::size_t>(k)];
                const Mat  &gb = g.block(r, k);
                const int   ny = static_cast<int>(gb.cols()), nt = static_cast<int>(gb.rows());
                const int   nx = ny ? static_cast<int>(sp.size()) / ny : 0;
                if (nx == 0 || ny == 0 || nt == 0) continue;
                RowMat in(ny, H.cols());
                for (int j = 0; j < nx; ++j) {
                    for (int i = 0; i < ny; ++i) in.row(i) = H.row(sp[static_cast<std::size_t>(i * nx + j)]);
                    RowMat o = gb * in;
                    for (int i = 0; i < nt; ++i) B.row(tp[static_cast<std::size_t>(i * nx + j)]) = o.row(i);
                }
            }
            out.block(r, c) = B;
        }
    return out;
}

namespace {

// Global position of the basis pair (p, q) in Y (x) X, or -1 when incompatible.
std::vector<std::vector<int>> pair_index(const OneCell &Y, const OneCell &X) {
    std::vector<std::vector<int>> pos(static_cast<std::size_t>(Y.dim()), std::vector<int>(static_cast<std::size_t>(X.dim()), -1));
    int                           n = 0;
    for (int p = 0; p < Y.dim(); ++p)
        for (int q : X.with_row(Y.grade(p).col)) pos[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = n++;
    return pos;
}

// Entry (row, col) of f in global basis indices.
cplx entry(const TwoCell &f, int row, int col) {
    Grade gr = f.target().grade(row), gc = f.source().grade(col);
    if (gr.row != gc.row || gr.col != gc.col) return cplx(0.0, 0.0);
    return f.block(gc.row, gc.col)(f.target().local(row), f.source().local(col));
}

void add_entry(TwoCell &f, int row, int col, cplx v) {
    Grade g = f.source().grade(col);
    f.block(g.row, g.col)(f.target().local(row), f.source().local(col)) += v;
}

} // namespace

TwoCell snake_left(const OneCell &A, const OneCell &D, const OneCell &B, const TwoCell &g, const TwoCell &f) {
    if (g.target() != hcomp1(A, D) || f.source() != hcomp1(D, B)) throw CellMismatch("snake_left: boundaries do not match");
    const OneCell &Cc = g.source(), &E = f.target();
    TwoCell        out(hcomp1(Cc, B), hcomp1(A, E));
    auto           AD = pair_index(A, D), DB = pair_index(D, B), AE = pair_index(A, E), CB = pair_index(Cc, B);
    for (int c = 0; c < Cc.dim(); ++c)
        for (int b : B.with_row(Cc.grade(c).col)) {
            int col = CB[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
            for (int d : D.with_col(B.grade(b).row))
                for (int a : A.with_col(D.grade(d).row)) {
                    cplx gv = entry(g, AD[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)], c);
                    if (gv == cplx(0.0, 0.0)) continue;
                    int fcol = DB[static_cast<std::size_t>(d)][static_cast<std::size_t>(b)];
                    for (int e : E.with_row(A.grade(a).col)) {
                        cplx fv = entry(f, e, fcol);
                        if (fv != cplx(0.0, 0.0)) add_entry(out, AE[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)], col, gv * fv);
                    }
                }
        }
    return out;
}

TwoCell snake_right(const OneCell &B, const OneCell &D, const OneCell &A, const TwoCell &f, const TwoCell &g) {
    if (g.target() != hcomp1(D, A) || f.source() != hcomp1(B, D)) throw CellMismatch("snake_right: boundaries do not match");
    const OneCell &Cc = g.source(), &E = f.target();
    TwoCell        out(hcomp1(B, Cc), hcomp1(E, A));
    auto           DA = pair_index(D, A), BD = pair_index(B, D), EA = pair_index(E, A), BC = pair_index(B, Cc);
    for (int b = 0; b < B.dim(); ++b)
        for (int c : Cc.with_row(B.grade(b).col)) {
            int col = BC[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
            for (int d : D.with_row(B.grade(b).col))
                for (int a : A.with_row(D.grade(d).col)) {
                    cplx gv = entry(g, DA[static_cast<std::size_t>(d)][static_cast<std::size_t>(a)], c);
                    if (gv == cplx(0.0, 0.0)) continue;
                    int fcol = BD[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)];
                    for (int e : E.with_col(A.grade(a).row)) {
                        cplx fv = entry(f, e, fcol);
                        if (fv != cplx(0.0, 0.0)) add_entry(out, EA[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)], col, gv * fv);
                    }
                }
        }
    return out;
}

TwoCell hcomp2(const std::vector<TwoCell> &cells) {
    if (cells.empty()) throw CellMismatch("hcomp2 of an empty list");
    TwoCell acc = cells.back();
    for (std::size_t k = cells.size() - 1; k-- > 0;) acc = hcomp2(cells[k], acc);
    return acc;
}

TwoCell vcomp(const TwoCell &g, const TwoCell &f) {
    if (f.target() != g.source()) throw CellMismatch("vcomp: f.target != g.source");
    TwoCell h(f.source(), g.target());
    for (int r = 0; r < h.source().tgt(); ++r)
        for (int c = 0; c < h.source().src(); ++c) h.block(r, c).noalias() = g.block(r, c) * f.block(r, c);
    return h;
}

TwoCell dagger2(const TwoCell &f) { return f.adjoint(); }

bool same_sectors(const OneCell &a, const OneCell &b) {
    if (a.src() != b.src() || a.tgt() != b.tgt()) return false;
    for (int r = 0; r < a.tgt(); ++r)
        for (int c = 0; c < a.src(); ++c)
            if (a.sector_dim(r, c) != b.sector_dim(r, c)) return false;
    return true;
}

TwoCell relabel(const TwoCell &f, const OneCell &source, const OneCell &target) {
    if (!same_sectors(f.source(), source) || !same_sectors(f.target(), target))
        throw CellMismatch("relabel: sector dimensions differ");
    TwoCell h(source, target);
    for (int r = 0; r < source.tgt(); ++r)
        for (int c = 0; c < source.src(); ++c) h.block(r, c) = f.block(r, c);
    return h;
}

TwoCell canonical_iso(const OneCell &from, const OneCell &to) { return relabel(id2(from), from, to); }

// Within a sector the unit strand contributes a single basis vector, so both unitors are
// identities block by block; globally they permute the basis.
TwoCell unitor_left(const OneCell &X) { return canonical_iso(hcomp1(id1(X.tgt()), X), X); }
TwoCell unitor_right(const OneCell &X) { return canonical_iso(hcomp1(X, id1(X.src())), X); }

DualPair standard_dual(const OneCell &X) {
    for (int c = 0; c < X.src(); ++c)
        if (X.with_col(c).empty()) throw EmptyColumn(c + 1);
    std::vector<Grade> gb;
    for (auto g : X.grading()) gb.push_back({g.col, g.row});
    DualPair d;
    d.X    = X;
    d.Xbar = OneCell(X.tgt(), X.src(), std::move(gb));

    auto  EL = detail::product_layout(d.Xbar, X);
    auto  one_s = id1(X.src());
    d.ev     = TwoCell(EL.cell, one_s);
    for (int i = 0; i < X.src(); ++i) {
        double      w = 1.0 / std::sqrt(static_cast<double>(X.with_col(i).size()));
        std::size_t s = static_cast<std::size_t>(i * X.src() + i);
        for (int k = 0; k < X.tgt(); ++k) {
            int n = X.sector_dim(k, i);
            for (int l = 0; l < n; ++l) d.ev.block(i, i)(0, EL.pos[s][static_cast<std::size_t>(k)][static_cast<std::size_t>(l * n + l)]) = w;
        }
    }

    auto CL  = detail::product_layout(X, d.Xbar);
    auto one_t = id1(X.tgt());
    d.coev   = TwoCell(one_t, CL.cell);
    for (int j = 0; j < X.tgt(); ++j) {
        std::size_t s = static_cast<std::size_t>(j * X.tgt() + j);
        for (int k = 0; k < X.src(); ++k) {
            double winv = std::sqrt(static_cast<double>(X.with_col(k).size()));
            int    n    = X.sector_dim(j, k);
            for (int l = 0; l < n; ++l) d.coev.block(j, j)(CL.pos[s][static_cast<std::size_t>(k)][static_cast<std::size_t>(l * n + l)], 0) = winv;
        }
    }
    return d;
}

DualResiduals dual_residuals(const DualPair &d) {
    const OneCell &X = d.X, &Xb = d.Xbar;
    // X -> 1(x)X -> X(x)Xb(x)X -> X(x)1 -> X
    TwoCell z1 = unitor_right(X) * hcomp2(id2(X), d.ev) * hcomp2(d.coev, id2(X)) * unitor_left(X).adjoint();
    // Xb -> Xb(x)1 -> Xb(x)X(x)Xb -> 1(x)Xb -> Xb
    TwoCell z2 = unitor_left(Xb) * hcomp2(d.ev, id2(Xb)) * hcomp2(id2(Xb), d.coev) * unitor_right(Xb).adjoint();
    return {residual(z1, id2(X)), residual(z2, id2(Xb)), residual(d.ev * d.ev.adjoint(), id2(d.ev.target()))};
}

} // namespace qsys
