#pragma once

#include <vector>

#include "symq/symspace.hpp"

namespace symq {

// Partition of the one-particle space into Jordan blocks: sizes descending,
// block b occupying levels [offsets[b], offsets[b] + sizes[b]).
struct BlockLayout {
    std::vector<int> sizes;
    std::vector<int> offsets;

    explicit BlockLayout(std::vector<int> sizes_in);
    int dim() const { return offsets.empty() ? 0 : offsets.back() + sizes.back(); }
    int block_count() const { return static_cast<int>(sizes.size()); }
    int block_of_level(int level) const;
};

// alpha_0 |0>^n + ... + alpha_{d-1} |d-1>^n. Default alpha: all 1/sqrt(d).
SymState ghz(int n, int d, const std::vector<cdouble>& alpha = {});

// E_j: sum over all product basis states whose indices add up to j, with
// coefficient 1 per arrangement (the unnormalized convention).
SymState excitation(int n, int d, int j);

// Direct sum over blocks of the block's top excitation state E_{k_b - 1};
// reproduces the unique class representatives (GHZ for all sizes 1, E_{d-1}
// for a single block of size d).
SymState unique_representative(int n, const BlockLayout& layout);

// Excitation j distributed over the blocks, with weights[b] particles
// carrying block label b; excitation tuples that exceed a block's top level
// are omitted.
SymState multi_block_excitation(int n, const BlockLayout& layout, int j,
                                const std::vector<int>& weights);

// Nilpotent lowering operator: within every block, sum_i |i-1><i|.
CMatrix block_shift(const BlockLayout& layout);

// Jordan matrix with the given per-block eigenvalues.
CMatrix jordan_matrix(const BlockLayout& layout, const std::vector<cdouble>& eigenvalues);

// sum_j alpha[k-1-j] K^j on a single k-block; maps E_{k-1} to
// sum_j alpha[j] E_j and has determinant alpha[k-1]^k.
CMatrix ladder_polynomial(int k, const std::vector<cdouble>& alpha);

}  // namespace symq
