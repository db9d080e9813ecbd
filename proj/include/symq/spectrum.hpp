#pragma once

#include <vector>

#include "symq/linalg.hpp"

namespace symq {

// Eigenvalue-cluster analysis shared by the matrix-function and Jordan
// structure code, so both always agree at the same tolerances.
struct ClusterAnalysis {
    cdouble mean;                    // cluster representative
    int multiplicity = 0;            // members, counted with multiplicity
    std::vector<int> block_sizes;    // descending
    std::vector<int> rank_sequence;  // r_0 = d, r_k = rank((X - mean)^k)
    bool repaired = false;           // staircase needed monotonicity repair
};

// Groups eigenvalues by single-linkage clustering at cluster_tol * |X|_F,
// then accepts coarser dendrogram merges only when the nullity sequence of
// (X - mean)^k at scale-fixed thresholds is a consistent Jordan staircase
// for the merged multiplicity. That keeps the eps^(1/k) eigenvalue scatter
// of defective matrices in one cluster without gluing genuinely distinct
// eigenvalues together. Per-cluster block sizes come from the (repaired)
// staircase. Clusters are sorted by (Re, Im) of the representative.
std::vector<ClusterAnalysis> analyze_spectrum(const CMatrix& x,
                                              double cluster_tol = kDefaultClusterTol,
                                              double tol = kDefaultTol);

}  // namespace symq
