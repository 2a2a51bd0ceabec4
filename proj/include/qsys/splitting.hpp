#pragma once

#include <cstdint>

#include "qsys/qsystem.hpp"

namespace qsys {

struct ProjectionSplit {
    OneCell Y;
    TwoCell u; // Y -> X, u^dagger u = id, u u^dagger = p
};

// Y is graded in (row, col) order, one basis vector per unit of sector rank.
ProjectionSplit split_projection(const OneCell &X, const TwoCell &p, const Tolerance &tol);

struct SplitResult {
    int      k;     // new 0-cell
    DualPair pair;  // X: k -> b, Xbar: b -> k
    TwoCell  gamma; // X (x) Xbar -> Q, unitary algebra isomorphism
    // Per block t: column t of X. Blocks are ordered by (dimension, first occurrence).
    std::vector<int> block_dims;
    // True when the recovered pair equals standard_dual(X).
    bool standard = false;
};

struct RegularRep {
    std::vector<Mat> left_ops;  // L_xi = m(xi (x) -), one per basis vector of Q
    std::vector<Mat> right_ops; // R_xi = m(- (x) xi)
};

RegularRep regular_reps(const QSystem &q, const Tolerance &tol);

// Minimal central projections as operators on the total space of Q.
std::vector<Mat> central_decomposition(const QSystem &q, const Tolerance &tol, std::uint64_t seed);

SplitResult split_qsystem(const QSystem &q, const Tolerance &tol, std::uint64_t seed);

// Q-system check used at algorithm boundaries: residuals must stay below gap_tol.
void require_qsystem(const QSystem &q, const Tolerance &tol);

} // namespace qsys
