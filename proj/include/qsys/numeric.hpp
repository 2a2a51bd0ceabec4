#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsys/errors.hpp"

namespace qsys {

using cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;

struct Tolerance {
    double atol    = 1e-9;
    double gap_tol = 1e-6;

    // Throws InvalidTolerance unless atol > 0, gap_tol > 0 and gap_tol >= atol.
    void validate() const;
};

Mat kron(const Mat &A, const Mat &B);
Mat dsum(const std::vector<Mat> &blocks);
Mat dagger(const Mat &A);

// Frobenius norm; all residuals in the library use it.
double fro(const Mat &A);

// Isometry V with V V^dagger = P. Rank counts eigenvalues above 1/2.
Mat range_isometry(const Mat &P, const Tolerance &tol);

struct SpectralPair {
    double eigenvalue;
    Mat    projection;
};

// Eigenvalues are clustered when consecutive sorted values differ by less than gap_tol.
std::vector<SpectralPair> spectral_projections(const Mat &H, const Tolerance &tol);

// Hilbert-Schmidt orthonormal basis of {T : Tg = gT for all generators g}.
std::vector<Mat> commutant_basis(const std::vector<Mat> &generators, const Tolerance &tol);

// Orthonormal basis of the null space of A (columns), singular values below thr count as zero.
Mat null_space(const Mat &A, double thr);

// Orthonormal basis of the column space of A, singular values above thr.
Mat column_space(const Mat &A, double thr);

} // namespace qsys
