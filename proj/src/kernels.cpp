#include "symq/kernels.hpp"

#include <cmath>

namespace symq::kernels {

namespace {

using std::int64_t;

int64_t pow_i64(int64_t base, int exp) {
    int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Decodes idx into digits (site 1 first) and counts occupations.
inline void occ_of_index(int64_t idx, int n, int d, int* occ) {
    for (int i = 0; i < d; ++i) occ[i] = 0;
    for (int k = 0; k < n; ++k) {
        occ[idx % d] += 1;
        idx /= d;
    }
}

}  // namespace

void apply_site_serial(int n, int d, int site, const CMatrix& m, const CVector& in, CVector& out) {
    const int64_t total = in.size();
    const int64_t stride = pow_i64(d, n - site);
    out.resize(total);
    for (int64_t idx = 0; idx < total; ++idx) {
        const int dig = static_cast<int>((idx / stride) % d);
        const int64_t base = idx - dig * stride;
        cdouble acc = 0.0;
        for (int j = 0; j < d; ++j) acc += m(dig, j) * in(base + j * stride);
        out(idx) = acc;
    }
}

void apply_site_omp(int n, int d, int site, const CMatrix& m, const CVector& in, CVector& out) {
    const int64_t total = in.size();
    const int64_t stride = pow_i64(d, n - site);
    out.resize(total);
    const cdouble* src = in.data();
    cdouble* dst = out.data();
#pragma omp parallel for schedule(static)
    for (int64_t idx = 0; idx < total; ++idx) {
        const int dig = static_cast<int>((idx / stride) % d);
        const int64_t base = idx - dig * stride;
        cdouble acc = 0.0;
        for (int j = 0; j < d; ++j) acc += m(dig, j) * src[base + j * stride];
        dst[idx] = acc;
    }
}

void permute_serial(int n, int d, const std::vector<int>& inv, const CVector& in, CVector& out) {
    const int64_t total = in.size();
    out.resize(total);
    std::vector<int> digits(n);
    for (int64_t j = 0; j < total; ++j) {
        int64_t rest = j;
        for (int k = n - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rest % d);
            rest /= d;
        }
        int64_t i = 0;
        for (int m = 0; m < n; ++m) i = i * d + digits[inv[m]];
        out(j) = in(i);
    }
}

void permute_omp(int n, int d, const std::vector<int>& inv, const CVector& in, CVector& out) {
    const int64_t total = in.size();
    out.resize(total);
    const cdouble* src = in.data();
    cdouble* dst = out.data();
#pragma omp parallel for schedule(static)
    for (int64_t j = 0; j < total; ++j) {
        int digits[64];
        int64_t rest = j;
        for (int k = n - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rest % d);
            rest /= d;
        }
        int64_t i = 0;
        for (int m = 0; m < n; ++m) i = i * d + digits[inv[m]];
        dst[j] = src[i];
    }
}

void sym_to_full_serial(const OccBasis& basis, const CVector& amps, CVector& out) {
    const int n = basis.n(), d = basis.d();
    const int64_t total = pow_i64(d, n);
    out.resize(total);
    std::vector<int> occ(d);
    for (int64_t idx = 0; idx < total; ++idx) {
        occ_of_index(idx, n, d, occ.data());
        const int64_t s = basis.index_of(occ);
        out(idx) = amps(s) / std::sqrt(basis.arrangements(s));
    }
}

void sym_to_full_omp(const OccBasis& basis, const CVector& amps, CVector& out) {
    const int n = basis.n(), d = basis.d();
    const int64_t total = pow_i64(d, n);
    out.resize(total);
    cdouble* dst = out.data();
#pragma omp parallel for schedule(static)
    for (int64_t idx = 0; idx < total; ++idx) {
        int occ[64];
        occ_of_index(idx, n, d, occ);
        const int64_t s = basis.index_of({occ, static_cast<std::size_t>(d)});
        dst[idx] = amps(s) / std::sqrt(basis.arrangements(s));
    }
}

void site_split_serial(const OccBasis& full, const OccBasis& rest, const CVector& amps, CMatrix& grid) {
    const int n = full.n(), d = full.d();
    grid.resize(d, rest.size());
    std::vector<int> occ(d);
    for (int64_t r = 0; r < rest.size(); ++r) {
        auto ro = rest.occ(r);
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) occ[k] = ro[k];
            occ[i] += 1;
            const int64_t s = full.index_of(occ);
            grid(i, r) = std::sqrt(static_cast<double>(ro[i] + 1) / n) * amps(s);
        }
    }
}

void site_split_omp(const OccBasis& full, const OccBasis& rest, const CVector& amps, CMatrix& grid) {
    const int n = full.n(), d = full.d();
    grid.resize(d, rest.size());
#pragma omp parallel for schedule(static)
    for (int64_t r = 0; r < rest.size(); ++r) {
        int occ[64];
        auto ro = rest.occ(r);
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) occ[k] = ro[k];
            occ[i] += 1;
            const int64_t s = full.index_of({occ, static_cast<std::size_t>(d)});
            grid(i, r) = std::sqrt(static_cast<double>(ro[i] + 1) / n) * amps(s);
        }
    }
}

void recombine_serial(const OccBasis& full, const OccBasis& rest, const CMatrix& grid, CVector& amps) {
    const int n = full.n(), d = full.d();
    amps.resize(full.size());
    std::vector<int> occ(d);
    for (int64_t s = 0; s < full.size(); ++s) {
        auto fo = full.occ(s);
        cdouble acc = 0.0;
        for (int i = 0; i < d; ++i) {
            if (fo[i] == 0) continue;
            for (int k = 0; k < d; ++k) occ[k] = fo[k];
            occ[i] -= 1;
            const int64_t r = rest.index_of(occ);
            acc += std::sqrt(static_cast<double>(fo[i]) / n) * grid(i, r);
        }
        amps(s) = acc;
    }
}

void recombine_omp(const OccBasis& full, const OccBasis& rest, const CMatrix& grid, CVector& amps) {
    const int n = full.n(), d = full.d();
    amps.resize(full.size());
#pragma omp parallel for schedule(static)
    for (int64_t s = 0; s < full.size(); ++s) {
        int occ[64];
        auto fo = full.occ(s);
        cdouble acc = 0.0;
        for (int i = 0; i < d; ++i) {
            if (fo[i] == 0) continue;
            for (int k = 0; k < d; ++k) occ[k] = fo[k];
            occ[i] -= 1;
            const int64_t r = rest.index_of({occ, static_cast<std::size_t>(d)});
            acc += std::sqrt(static_cast<double>(fo[i]) / n) * grid(i, r);
        }
        amps(s) = acc;
    }
}

namespace {

// Shared index/coefficient tables for one homogeneous sweep step.
struct StepTables {
    std::vector<int64_t> right_plus;   // right1.size x d: index in `right` of R'+e_i
    std::vector<double> right_coeff;   // sqrt((R'_i + 1) / (n - k))
};

StepTables build_step_tables(const OccBasis& right1, const OccBasis& right, int nk) {
    StepTables t;
    const int d = right1.d();
    t.right_plus.resize(right1.size() * d);
    t.right_coeff.resize(right1.size() * d);
    std::vector<int> occ(d);
    for (int64_t r = 0; r < right1.size(); ++r) {
        auto ro = right1.occ(r);
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) occ[k] = ro[k];
            occ[i] += 1;
            t.right_plus[r * d + i] = right.index_of(occ);
            t.right_coeff[r * d + i] = std::sqrt(static_cast<double>(ro[i] + 1) / nk);
        }
    }
    return t;
}

template <bool Parallel>
void homogeneous_step_impl(const OccBasis& left1, const OccBasis& right1,
                           const OccBasis& left, const OccBasis& right,
                           const CMatrix& a, const CMatrix& w, CMatrix& out) {
    const int d = left1.d();
    const int k1 = left1.n();              // k + 1
    const int nk = right.n();              // n - k
    const StepTables tables = build_step_tables(right1, right, nk);
    out.resize(left1.size(), right1.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (int64_t lp = 0; lp < left1.size(); ++lp) {
        int occ[64];
        int64_t lidx[64];
        double lcoef[64];
        auto lo = left1.occ(lp);
        for (int l = 0; l < d; ++l) {
            if (lo[l] == 0) {
                lidx[l] = -1;
                continue;
            }
            for (int q = 0; q < d; ++q) occ[q] = lo[q];
            occ[l] -= 1;
            lidx[l] = left.index_of({occ, static_cast<std::size_t>(d)});
            lcoef[l] = std::sqrt(static_cast<double>(lo[l]) / k1);
        }
        for (int64_t rp = 0; rp < right1.size(); ++rp) {
            cdouble acc = 0.0;
            for (int l = 0; l < d; ++l) {
                if (lidx[l] < 0) continue;
                cdouble inner = 0.0;
                for (int i = 0; i < d; ++i) {
                    inner += a(l, i) * tables.right_coeff[rp * d + i] *
                             w(lidx[l], tables.right_plus[rp * d + i]);
                }
                acc += lcoef[l] * inner;
            }
            out(lp, rp) = acc;
        }
    }
}

}  // namespace

void homogeneous_step_serial(const OccBasis& left1, const OccBasis& right1,
                             const OccBasis& left, const OccBasis& right,
                             const CMatrix& a, const CMatrix& w, CMatrix& out) {
    homogeneous_step_impl<false>(left1, right1, left, right, a, w, out);
}

void homogeneous_step_omp(const OccBasis& left1, const OccBasis& right1,
                          const OccBasis& left, const OccBasis& right,
                          const CMatrix& a, const CMatrix& w, CMatrix& out) {
    homogeneous_step_impl<true>(left1, right1, left, right, a, w, out);
}

}  // namespace symq::kernels
