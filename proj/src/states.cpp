#include "symq/states.hpp"

#include <cmath>

namespace symq {

BlockLayout::BlockLayout(std::vector<int> sizes_in) : sizes(std::move(sizes_in)) {
    if (sizes.empty()) throw InvalidInput("BlockLayout: need at least one block");
    int off = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        if (sizes[b] < 1) throw InvalidInput("BlockLayout: block sizes must be >= 1");
        if (b > 0 && sizes[b] > sizes[b - 1]) {
            throw InvalidInput("BlockLayout: block sizes must be descending");
        }
        offsets.push_back(off);
        off += sizes[b];
    }
    if (off > kMaxEigenDim) throw InvalidInput("BlockLayout: total dimension exceeds 64");
}

int BlockLayout::block_of_level(int level) const {
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        if (level < offsets[b] + sizes[b]) return static_cast<int>(b);
    }
    throw InvalidInput("block_of_level: level out of range");
}

SymState ghz(int n, int d, const std::vector<cdouble>& alpha) {
    std::vector<cdouble> a = alpha;
    if (a.empty()) a.assign(static_cast<std::size_t>(d), 1.0 / std::sqrt(static_cast<double>(d)));
    if (static_cast<int>(a.size()) != d) {
        throw InvalidInput("ghz: need exactly d amplitudes, got " + std::to_string(a.size()));
    }
    SymState s = sym_zero(n, d);
    OccBasis basis(n, d);
    std::vector<int> occ(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        std::fill(occ.begin(), occ.end(), 0);
        occ[static_cast<std::size_t>(i)] = n;
        s.amps(basis.index_of(occ)) = a[static_cast<std::size_t>(i)];
    }
    return s;
}

SymState excitation(int n, int d, int j) {
    if (j < 0 || j > n * (d - 1)) {
        throw InvalidInput("excitation: j must lie in [0, n*(d-1)], got " + std::to_string(j));
    }
    SymState s = sym_zero(n, d);
    OccBasis basis(n, d);
    for (std::int64_t idx = 0; idx < basis.size(); ++idx) {
        auto occ = basis.occ(idx);
        long total = 0;
        for (int i = 0; i < d; ++i) total += static_cast<long>(i) * occ[static_cast<std::size_t>(i)];
        if (total == j) s.amps(idx) = std::sqrt(basis.arrangements(idx));
    }
    return s;
}

SymState unique_representative(int n, const BlockLayout& layout) {
    const int d = layout.dim();
    SymState s = sym_zero(n, d);
    OccBasis basis(n, d);
    std::vector<int> occ(static_cast<std::size_t>(d), 0);
    for (int b = 0; b < layout.block_count(); ++b) {
        const int k = layout.sizes[static_cast<std::size_t>(b)];
        const int off = layout.offsets[static_cast<std::size_t>(b)];
        if (k == 1) {
            // E_0 of a one-level block: the product state on that level
            std::fill(occ.begin(), occ.end(), 0);
            occ[static_cast<std::size_t>(off)] = n;
            s.amps(basis.index_of(occ)) += 1.0;
            continue;
        }
        // top excitation E_{k-1} within the block's own levels
        OccBasis small(n, k);
        for (std::int64_t idx = 0; idx < small.size(); ++idx) {
            auto so = small.occ(idx);
            long total = 0;
            for (int i = 0; i < k; ++i) total += static_cast<long>(i) * so[static_cast<std::size_t>(i)];
            if (total != k - 1) continue;
            std::fill(occ.begin(), occ.end(), 0);
            for (int i = 0; i < k; ++i) occ[static_cast<std::size_t>(off + i)] = so[static_cast<std::size_t>(i)];
            s.amps(basis.index_of(occ)) += std::sqrt(small.arrangements(idx));
        }
    }
    return s;
}

SymState multi_block_excitation(int n, const BlockLayout& layout, int j,
                                const std::vector<int>& weights) {
    if (static_cast<int>(weights.size()) != layout.block_count()) {
        throw InvalidInput("multi_block_excitation: one weight per block required");
    }
    int wsum = 0;
    for (int w : weights) {
        if (w < 0) throw InvalidInput("multi_block_excitation: weights must be >= 0");
        wsum += w;
    }
    if (wsum != n) throw InvalidInput("multi_block_excitation: weights must add up to n");
    if (j < 0) throw InvalidInput("multi_block_excitation: j must be >= 0");

    const int d = layout.dim();
    SymState s = sym_zero(n, d);
    OccBasis basis(n, d);
    std::vector<int> per_block(static_cast<std::size_t>(layout.block_count()));
    for (std::int64_t idx = 0; idx < basis.size(); ++idx) {
        auto occ = basis.occ(idx);
        std::fill(per_block.begin(), per_block.end(), 0);
        long exc = 0;
        for (int level = 0; level < d; ++level) {
            const int m = occ[static_cast<std::size_t>(level)];
            if (m == 0) continue;
            const int b = layout.block_of_level(level);
            per_block[static_cast<std::size_t>(b)] += m;
            exc += static_cast<long>(m) * (level - layout.offsets[static_cast<std::size_t>(b)]);
        }
        if (exc != j) continue;
        bool match = true;
        for (std::size_t b = 0; b < per_block.size(); ++b) {
            if (per_block[b] != weights[b]) {
                match = false;
                break;
            }
        }
        if (match) s.amps(idx) = std::sqrt(basis.arrangements(idx));
    }
    return s;
}

CMatrix block_shift(const BlockLayout& layout) {
    const int d = layout.dim();
    CMatrix k = CMatrix::Zero(d, d);
    for (int b = 0; b < layout.block_count(); ++b) {
        const int off = layout.offsets[static_cast<std::size_t>(b)];
        for (int i = 1; i < layout.sizes[static_cast<std::size_t>(b)]; ++i) {
            k(off + i - 1, off + i) = 1.0;
        }
    }
    return k;
}

CMatrix jordan_matrix(const BlockLayout& layout, const std::vector<cdouble>& eigenvalues) {
    if (static_cast<int>(eigenvalues.size()) != layout.block_count()) {
        throw InvalidInput("jordan_matrix: one eigenvalue per block required");
    }
    CMatrix j = block_shift(layout);
    for (int b = 0; b < layout.block_count(); ++b) {
        const int off = layout.offsets[static_cast<std::size_t>(b)];
        for (int i = 0; i < layout.sizes[static_cast<std::size_t>(b)]; ++i) {
            j(off + i, off + i) = eigenvalues[static_cast<std::size_t>(b)];
        }
    }
    return j;
}

CMatrix ladder_polynomial(int k, const std::vector<cdouble>& alpha) {
    if (static_cast<int>(alpha.size()) != k) {
        throw InvalidInput("ladder_polynomial: need k coefficients");
    }
    BlockLayout layout({k});
    const CMatrix shift = block_shift(layout);
    CMatrix power = CMatrix::Identity(k, k);
    CMatrix out = CMatrix::Zero(k, k);
    for (int j = 0; j < k; ++j) {
        out += alpha[static_cast<std::size_t>(k - 1 - j)] * power;
        power = power * shift;
    }
    return out;
}

}  // namespace symq
