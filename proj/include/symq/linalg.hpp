#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "symq/errors.hpp"

namespace symq {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kDefaultClusterTol = 1e-7;
inline constexpr int kMaxEigenDim = 64;

// Eigenvalues with algebraic multiplicity, in Schur order.
// Dense complex Schur underneath (Hessenberg reduction + shifted QR with
// deflation). Throws InvalidInput for non-square or dim > 64,
// NonConvergence if the QR sweeps give up.
std::vector<cdouble> eigenvalues(const CMatrix& m);

// Orthonormal basis of {v : |Mv| <= tol * |M|_2 * |v|}, via SVD.
// Empty when M has full column rank at this tolerance.
std::vector<CVector> nullspace(const CMatrix& m, double tol = kDefaultTol);

// Number of singular values above tol * sigma_max. rank + |nullspace| = cols.
int rank(const CMatrix& m, double tol = kDefaultTol);

// Throws SingularMatrix when sigma_min <= tol * sigma_max.
CMatrix inverse(const CMatrix& m, double tol = kDefaultTol);

// 2-norm condition number (sigma_max / sigma_min; inf when singular).
double cond2(const CMatrix& m);

double unitarity_defect(const CMatrix& m);  // |M^dag M - I|_F
bool is_unitary(const CMatrix& m, double tol = kDefaultTol);

}  // namespace symq
