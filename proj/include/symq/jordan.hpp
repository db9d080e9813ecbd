#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "symq/linalg.hpp"

namespace symq {

// Eigenvalue-agnostic Jordan block structure: outer groups separate
// distinct eigenvalues, inner lists hold the block sizes of one group.
// Canonical form: inner lists sorted descending, groups sorted descending
// lexicographically, so structural equality is plain equality.
struct JordanSignature {
    std::vector<std::vector<int>> groups;

    void canonicalize();
    int dimension() const;
    int group_count() const { return static_cast<int>(groups.size()); }
    int block_count() const;
    bool all_blocks_distinct_eigenvalues() const;  // every group holds one block

    friend bool operator==(const JordanSignature&, const JordanSignature&) = default;
    friend auto operator<=>(const JordanSignature&, const JordanSignature&) = default;
};

// The paper-style bracket text, e.g. "{ { 2 }, { 1 } }".
std::string signature_to_string(const JordanSignature& sig);
JordanSignature parse_signature(const std::string& text);

struct JordanGroupReport {
    cdouble eigenvalue;
    std::vector<int> block_sizes;    // descending
    std::vector<int> rank_sequence;  // r_0 = d, r_k = rank((B - lambda)^k)
};

struct JordanStructureReport {
    JordanSignature signature;
    std::vector<JordanGroupReport> groups;  // ordered like signature.groups
    bool repaired = false;                  // a rank sequence needed repair
};

JordanStructureReport jordan_signature(const CMatrix& b, double tol = kDefaultTol,
                                       double cluster_tol = kDefaultClusterTol);

// All signatures of dimension d (multisets of integer partitions), d <= 12.
std::vector<JordanSignature> enumerate_signatures(int d);

// Number of multisets of integer partitions summing to d (d <= 40).
std::uint64_t count_signatures(int d);

// Number of integer partitions of d = number of structures whose blocks
// can all carry distinct eigenvalues (d <= 40).
std::uint64_t count_unique_classes(int d);

}  // namespace symq
