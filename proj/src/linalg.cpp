#include "symq/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <limits>

namespace symq {

namespace {

void require_square(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidInput("expected a non-empty square matrix, got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

std::vector<cdouble> eigenvalues(const CMatrix& m) {
    require_square(m);
    if (m.rows() > kMaxEigenDim) {
        throw InvalidInput("eigenvalues: dimension " + std::to_string(m.rows()) +
                           " exceeds the supported cap of 64");
    }
    if (!m.allFinite()) throw InvalidInput("eigenvalues: non-finite entries");
    Eigen::ComplexSchur<CMatrix> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success) {
        throw NonConvergence("eigenvalues: QR iteration did not converge");
    }
    const auto& t = schur.matrixT();
    std::vector<cdouble> eigs(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) eigs[static_cast<std::size_t>(i)] = t(i, i);
    return eigs;
}

std::vector<CVector> nullspace(const CMatrix& m, double tol) {
    if (tol < 0) throw InvalidInput("nullspace: tol must be >= 0");
    if (m.size() == 0) throw InvalidInput("nullspace: empty matrix");
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++r;
    }
    std::vector<CVector> basis;
    for (Eigen::Index i = r; i < m.cols(); ++i) {
        basis.push_back(svd.matrixV().col(i));
    }
    return basis;
}

int rank(const CMatrix& m, double tol) {
    if (tol < 0) throw InvalidInput("rank: tol must be >= 0");
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++r;
    }
    return r;
}

CMatrix inverse(const CMatrix& m, double tol) {
    require_square(m);
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= tol * sv(0)) {
        throw SingularMatrix("inverse: matrix is singular at tolerance " + std::to_string(tol));
    }
    return m.partialPivLu().inverse();
}

double cond2(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

double unitarity_defect(const CMatrix& m) {
    return (m.adjoint() * m - CMatrix::Identity(m.cols(), m.cols())).norm();
}

bool is_unitary(const CMatrix& m, double tol) {
    return m.rows() == m.cols() && unitarity_defect(m) <= tol;
}

}  // namespace symq
