#pragma once

#include <memory>
#include <vector>

#include "qsys/numeric.hpp"

// The concrete 2-category Mat(Hilb).
//
// 0-cells are positive integers n. A 1-cell X: s -> t is an ordered basis in which each vector
// carries a grade (row in [0, t), col in [0, s)). Indices are 0-based in C++ and 1-based in files.
// 2-cells preserve grades, so they are stored as one dense block per sector (row, col).
namespace qsys {

struct Grade {
    int  row;
    int  col;
    bool operator==(const Grade &) const = default;
};

class OneCell {
public:
    OneCell();
    OneCell(int src, int tgt, std::vector<Grade> grading);

    int src() const { return d_->src; }
    int tgt() const { return d_->tgt; }
    int dim() const { return static_cast<int>(d_->grading.size()); }

    const std::vector<Grade> &grading() const { return d_->grading; }
    Grade                     grade(int q) const { return d_->grading[static_cast<std::size_t>(q)]; }

    int sector_index(int r, int c) const { return r * d_->src + c; }
    int num_sectors() const { return d_->src * d_->tgt; }
    // Global basis positions lying in sector (r, c), increasing.
    const std::vector<int> &sector(int r, int c) const { return d_->sectors[static_cast<std::size_t>(sector_index(r, c))]; }
    int                     sector_dim(int r, int c) const { return static_cast<int>(sector(r, c).size()); }
    // Position of basis vector q inside its own sector.
    int local(int q) const { return d_->local[static_cast<std::size_t>(q)]; }
    // Basis positions with the given row (resp. col), increasing.
    const std::vector<int> &with_row(int r) const { return d_->rows[static_cast<std::size_t>(r)]; }
    const std::vector<int> &with_col(int c) const { return d_->cols[static_cast<std::size_t>(c)]; }

    bool same_as(const OneCell &o) const { return d_ == o.d_; }
    bool operator==(const OneCell &o) const;
    bool operator!=(const OneCell &o) const { return !(*this == o); }

private:
    struct Data {
        int                           src = 1, tgt = 1;
        std::vector<Grade>            grading;
        std::vector<std::vector<int>> sectors, rows, cols;
        std::vector<int>              local;
    };
    std::shared_ptr<const Data> d_;
};

class TwoCell {
public:
    TwoCell() = default;
    // Zero 2-cell.
    TwoCell(OneCell source, OneCell target);

    // Throws CellMismatch if shapes disagree or mass outside the sectors exceeds atol.
    static TwoCell from_dense(const OneCell &source, const OneCell &target, const Mat &m, double atol = 1e-9);

    const OneCell &source() const { return source_; }
    const OneCell &target() const { return target_; }

    Mat        &block(int r, int c) { return blocks_[static_cast<std::size_t>(source_.sector_index(r, c))]; }
    const Mat  &block(int r, int c) const { return blocks_[static_cast<std::size_t>(source_.sector_index(r, c))]; }
    Mat         dense() const;
    double      norm() const;
    TwoCell     adjoint() const;

    TwoCell &operator+=(const TwoCell &o);
    TwoCell &operator-=(const TwoCell &o);
    TwoCell &operator*=(cplx s);

private:
    OneCell          source_, target_;
    std::vector<Mat> blocks_;
};

TwoCell operator+(TwoCell a, const TwoCell &b);
TwoCell operator-(TwoCell a, const TwoCell &b);
TwoCell operator*(cplx s, TwoCell a);
// Vertical composition g . f (apply f first).
TwoCell operator*(const TwoCell &g, const TwoCell &f);

// Frobenius norm of a - b; throws CellMismatch on differing shapes.
double residual(const TwoCell &a, const TwoCell &b);

OneCell id1(int n);
OneCell hcomp1(const OneCell &Y, const OneCell &X);
// Right-to-left product of a list: hcomp1({Z, Y, X}) = Z (x) Y (x) X.
OneCell hcomp1(const std::vector<OneCell> &cells);

TwoCell id2(const OneCell &X);
TwoCell hcomp2(const TwoCell &g, const TwoCell &f);
TwoCell hcomp2(const std::vector<TwoCell> &cells);
TwoCell vcomp(const TwoCell &g, const TwoCell &f);
// (id_Y (x) f) . h and (g (x) id_X) . h without forming the whiskered cell.
TwoCell whisker_left_apply(const OneCell &Y, const TwoCell &f, const TwoCell &h);
TwoCell whisker_right_apply(const TwoCell &g, const OneCell &X, const TwoCell &h);
// (id_A (x) f) . (g (x) id_B) for g: C -> A (x) D and f: D (x) B -> E.
TwoCell snake_left(const OneCell &A, const OneCell &D, const OneCell &B, const TwoCell &g, const TwoCell &f);
// (f (x) id_A) . (id_B (x) g) for g: C -> D (x) A and f: B (x) D -> E.
TwoCell snake_right(const OneCell &B, const OneCell &D, const OneCell &A, const TwoCell &f, const TwoCell &g);
TwoCell dagger2(const TwoCell &f);

// 1_tgt (x) X -> X and X (x) 1_src -> X.
TwoCell unitor_left(const OneCell &X);
TwoCell unitor_right(const OneCell &X);

// Grade-wise reinterpretation of f between cells with identical sector dimensions.
// Unitors are the special case of the identity.
TwoCell relabel(const TwoCell &f, const OneCell &source, const OneCell &target);
bool    same_sectors(const OneCell &a, const OneCell &b);
TwoCell canonical_iso(const OneCell &from, const OneCell &to);

struct DualPair {
    OneCell X;
    OneCell Xbar;
    TwoCell ev;   // Xbar (x) X -> 1_src
    TwoCell coev; // 1_tgt -> X (x) Xbar
};

// Throws EmptyColumn if some source index has no basis vector.
DualPair standard_dual(const OneCell &X);

// Residuals of both zig-zag identities and of ev ev^dagger = id.
struct DualResiduals {
    double zigzag_X;
    double zigzag_Xbar;
    double separable;
};
DualResiduals dual_residuals(const DualPair &d);

namespace detail {

// For the product Y (x) X: positions inside each product sector (r, c), grouped by the
// intermediate index k, listed in Kronecker order of (Y-sector (r,k), X-sector (k,c)).
struct ProductLayout {
    OneCell                                    cell;
    std::vector<std::vector<std::vector<int>>> pos; // [sector][k]
};
ProductLayout product_layout(const OneCell &Y, const OneCell &X);

} // namespace detail

} // namespace qsys
