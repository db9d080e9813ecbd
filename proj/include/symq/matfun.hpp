#pragma once

#include <vector>

#include "symq/linalg.hpp"

namespace symq {

struct SpectralCluster {
    cdouble eigenvalue;    // cluster representative (mean)
    int multiplicity = 0;  // algebraic
    int max_block = 1;     // largest Jordan block in the cluster
};

struct SpectralData {
    std::vector<SpectralCluster> clusters;
    int dim() const;
};

SpectralData spectral_data(const CMatrix& x, double cluster_tol = kDefaultClusterTol,
                           double tol = kDefaultTol);

// Function data for one cluster: value = f(lambda), derivatives[k-1] = f^(k)(lambda).
struct ClusterValues {
    cdouble value;
    std::vector<cdouble> derivatives;
};

// Aligned with SpectralData::clusters of the same matrix.
struct FunctionSpec {
    std::vector<ClusterValues> clusters;
};

// Newton-form interpolant on the confluent node sequence (each cluster
// representative repeated max_block times). Evaluation at a matrix is
// Horner, so the result is by construction a polynomial in the argument.
struct HermitePoly {
    std::vector<cdouble> nodes;
    std::vector<cdouble> coeffs;
    cdouble eval(cdouble z) const;
    CMatrix eval(const CMatrix& x) const;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

HermitePoly hermite_interpolant(const SpectralData& sd, const FunctionSpec& fs);

// p(x) for the Hermite interpolant through fs on the spectrum of x.
CMatrix matrix_function(const CMatrix& x, const SpectralData& sd, const FunctionSpec& fs);

struct NthRootResult {
    CMatrix root;
    HermitePoly witness;  // root == witness.eval(x)
    SpectralData spectrum;
};

// Branch-consistent order-th root S with S^order = x, S a polynomial in x.
// branches picks the root branch per cluster (empty = principal: argument
// in (-pi, pi], root = |z|^(1/r) exp(i arg/r)). Throws SingularRoot when a
// cluster sits numerically at zero.
NthRootResult nth_root(const CMatrix& x, int order, const std::vector<int>& branches = {},
                       double cluster_tol = kDefaultClusterTol, double tol = kDefaultTol);

CMatrix nth_root_matrix(const CMatrix& x, int order, const std::vector<int>& branches = {},
                        double cluster_tol = kDefaultClusterTol, double tol = kDefaultTol);

}  // namespace symq
