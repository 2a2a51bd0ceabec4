#pragma once

#include <cstdint>
#include <random>

#include "qsys/qsystem.hpp"

namespace qsys {

using Rng = std::mt19937_64;

// Entries with independent standard complex gaussian parts.
Mat random_matrix(Rng &rng, int rows, int cols);
Mat random_unitary(Rng &rng, int n);
Mat random_isometry(Rng &rng, int n, int k);
Mat random_hermitian(Rng &rng, int n);

// Sector dims drawn from [0, max_sector_dim]; with full_support every source index
// receives at least one basis vector. Basis order is shuffled so that tests see
// interleaved grades.
OneCell random_one_cell(Rng &rng, int src, int tgt, int max_sector_dim, bool full_support);

TwoCell random_two_cell(Rng &rng, const OneCell &source, const OneCell &target);
TwoCell random_unitary_two_cell(Rng &rng, const OneCell &X);
// Hermitian idempotent with a random rank in every sector.
TwoCell random_projection(Rng &rng, const OneCell &X);

int uniform_int(Rng &rng, int lo, int hi);

// Dual pair whose pairing on each block is a random positive matrix instead of a multiple
// of the identity. Its Q-system is not isomorphic to the standard one.
DualPair random_twisted_dual(Rng &rng, const OneCell &X);

// Standard Q-system X (x) Xbar transported along a random unitary.
QSystem random_qsystem(Rng &rng, int n, int max_sector_dim);

} // namespace qsys
