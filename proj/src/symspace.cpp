#include "symq/symspace.hpp"

#include <algorithm>
#include <cmath>

#include "symq/kernels.hpp"

namespace symq {

namespace {

using std::int64_t;

int64_t pow_checked(int d, int n, int64_t cap) {
    int64_t r = 1;
    for (int i = 0; i < n; ++i) {
        r *= d;
        if (r > cap) {
            throw ScaleExceeded("d^n = " + std::to_string(d) + "^" + std::to_string(n) +
                                " exceeds the full-state cap 2^20");
        }
    }
    return r;
}

void check_state_dims(int n, int d) {
    if (n < 1 || d < 2 || d > kMaxEigenDim) {
        throw InvalidInput("state dimensions out of range (need n >= 1, 2 <= d <= 64), got n=" +
                           std::to_string(n) + " d=" + std::to_string(d));
    }
}

void check_operator(const CMatrix& m, int d) {
    if (m.rows() != d || m.cols() != d) {
        throw InvalidInput("operator must be " + std::to_string(d) + "x" + std::to_string(d) +
                           ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

int64_t binom_i64(int64_t a, int64_t b, int64_t cap) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    int64_t r = 1;
    for (int64_t i = 1; i <= b; ++i) {
        double est = static_cast<double>(r) * static_cast<double>(a - b + i) / static_cast<double>(i);
        if (est > static_cast<double>(cap) * 2.0) {
            throw ScaleExceeded("binomial coefficient exceeds the occupation-basis cap");
        }
        r = r * (a - b + i) / i;  // exact: r * (a-b+i) is divisible by i stepwise
    }
    return r;
}

}  // namespace

int64_t sym_dim(int n, int d) {
    if (n < 0 || d < 1) throw InvalidInput("sym_dim: need n >= 0, d >= 1");
    int64_t r = binom_i64(static_cast<int64_t>(n) + d - 1, d - 1, kOccBasisCap);
    if (r > kOccBasisCap) throw ScaleExceeded("occupation basis larger than 2^31");
    return r;
}

OccBasis::OccBasis(int n, int d) : n_(n), d_(d) {
    if (n < 0 || d < 1 || d > kMaxEigenDim) {
        throw InvalidInput("OccBasis: need n >= 0 and 1 <= d <= 64");
    }
    size_ = sym_dim(n, d);
    occs_.reserve(static_cast<std::size_t>(size_) * d);
    std::vector<int> m(static_cast<std::size_t>(d), 0);
    m[0] = n;
    // Decreasing lexicographic enumeration.
    while (true) {
        occs_.insert(occs_.end(), m.begin(), m.end());
        int i = d - 2;
        while (i >= 0 && m[static_cast<std::size_t>(i)] == 0) --i;
        if (i < 0) break;
        const int t = m[static_cast<std::size_t>(d) - 1];
        m[static_cast<std::size_t>(i)] -= 1;
        m[static_cast<std::size_t>(i) + 1] = t + 1;
        for (int k = i + 2; k < d; ++k) m[static_cast<std::size_t>(k)] = 0;
    }

    // log-factorial prefix table in long double keeps the multinomials
    // accurate (~1e-15 relative) even when they overflow exact integers.
    std::vector<long double> lfact(static_cast<std::size_t>(n) + 1, 0.0L);
    for (int k = 1; k <= n; ++k) lfact[static_cast<std::size_t>(k)] = lfact[static_cast<std::size_t>(k) - 1] + std::log(static_cast<long double>(k));
    arrangements_.resize(static_cast<std::size_t>(size_));
    for (int64_t s = 0; s < size_; ++s) {
        long double acc = lfact[static_cast<std::size_t>(n)];
        for (int i = 0; i < d; ++i) acc -= lfact[static_cast<std::size_t>(occs_[static_cast<std::size_t>(s * d + i)])];
        arrangements_[static_cast<std::size_t>(s)] = static_cast<double>(std::roundl(std::exp(acc)));
    }
}

int64_t OccBasis::index_of(std::span<const int> occ) const {
    int64_t idx = 0;
    int64_t rem = n_;
    for (int i = 0; i < d_ - 1; ++i) {
        const int64_t gap = rem - occ[static_cast<std::size_t>(i)];
        if (gap > 0) {
            // vectors whose i-th coordinate exceeds occ[i] come first
            idx += binom_i64(gap - 1 + (d_ - 1 - i), d_ - 1 - i, kOccBasisCap);
        }
        rem -= occ[static_cast<std::size_t>(i)];
    }
    return idx;
}

std::vector<std::vector<int>> occ_basis(int n, int d) {
    if (n < 1 || d < 2) throw InvalidInput("occ_basis: need n >= 1, d >= 2");
    OccBasis basis(n, d);
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(basis.size()));
    for (int64_t s = 0; s < basis.size(); ++s) {
        auto o = basis.occ(s);
        out.emplace_back(o.begin(), o.end());
    }
    return out;
}

SymState sym_zero(int n, int d) {
    check_state_dims(n, d);
    return {n, d, CVector::Zero(sym_dim(n, d))};
}

FullState full_zero(int n, int d) {
    check_state_dims(n, d);
    return {n, d, CVector::Zero(pow_checked(d, n, kFullStateCap))};
}

double norm(const SymState& s) { return s.amps.norm(); }
double norm(const FullState& f) { return f.amps.norm(); }

FullState sym_to_full(const SymState& s) {
    check_state_dims(s.n, s.d);
    pow_checked(s.d, s.n, kFullStateCap);
    OccBasis basis(s.n, s.d);
    if (s.amps.size() != basis.size()) throw InvalidInput("sym_to_full: amplitude count mismatch");
    FullState f{s.n, s.d, {}};
    kernels::sym_to_full_omp(basis, s.amps, f.amps);
    return f;
}

SymState full_to_sym(const FullState& f, double tol) {
    const double res = symmetry_residual(f);
    if (res > tol) throw NotSymmetric(res);
    OccBasis basis(f.n, f.d);
    SymState s{f.n, f.d, CVector::Zero(basis.size())};
    std::vector<int> occ(static_cast<std::size_t>(f.d));
    // accumulate the projection <occ|f> arrangement by arrangement
    for (int64_t idx = 0; idx < f.amps.size(); ++idx) {
        int64_t rest = idx;
        std::fill(occ.begin(), occ.end(), 0);
        for (int k = 0; k < f.n; ++k) {
            occ[static_cast<std::size_t>(rest % f.d)] += 1;
            rest /= f.d;
        }
        s.amps(basis.index_of(occ)) += f.amps(idx);
    }
    for (int64_t si = 0; si < basis.size(); ++si) {
        s.amps(si) /= std::sqrt(basis.arrangements(si));
    }
    return s;
}

double symmetry_residual(const FullState& f) {
    const double nrm = f.amps.norm();
    if (nrm == 0.0 || f.n == 1) return 0.0;
    const int64_t total = f.amps.size();
    double worst = 0.0;
    int64_t stride_next = 1;
    // adjacent transpositions generate S_n
    for (int k = f.n - 2; k >= 0; --k) {
        const int64_t s_hi = stride_next * f.d;  // stride of site k+1 (0-based k)
        const int64_t s_lo = stride_next;
        double acc = 0.0;
        for (int64_t idx = 0; idx < total; ++idx) {
            const int hi = static_cast<int>((idx / s_hi) % f.d);
            const int lo = static_cast<int>((idx / s_lo) % f.d);
            const int64_t swapped = idx + static_cast<int64_t>(lo - hi) * s_hi +
                                    static_cast<int64_t>(hi - lo) * s_lo;
            acc += std::norm(f.amps(idx) - f.amps(swapped));
        }
        worst = std::max(worst, std::sqrt(acc));
        stride_next = s_hi;
    }
    return worst / nrm;
}

bool is_symmetric(const FullState& f, double tol) { return symmetry_residual(f) <= tol; }

FullState permute(const FullState& f, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != f.n) throw InvalidInput("permute: wrong permutation size");
    std::vector<int> seen(sigma.size(), 0);
    for (int v : sigma) {
        if (v < 0 || v >= f.n || seen[static_cast<std::size_t>(v)]++) {
            throw InvalidInput("permute: not a permutation");
        }
    }
    std::vector<int> inv(sigma.size());
    for (int k = 0; k < f.n; ++k) inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])] = k;
    FullState out{f.n, f.d, {}};
    kernels::permute_omp(f.n, f.d, inv, f.amps, out.amps);
    return out;
}

FullState apply_site(const FullState& f, const CMatrix& m, int site) {
    check_operator(m, f.d);
    if (site < 1 || site > f.n) throw InvalidInput("apply_site: site out of range");
    FullState out{f.n, f.d, {}};
    kernels::apply_site_omp(f.n, f.d, site, m, f.amps, out.amps);
    return out;
}

FirstSiteState site_split(const SymState& s) {
    check_state_dims(s.n, s.d);
    OccBasis full(s.n, s.d), rest(s.n - 1, s.d);
    if (s.amps.size() != full.size()) throw InvalidInput("site_split: amplitude count mismatch");
    FirstSiteState g{s.n, s.d, {}};
    kernels::site_split_omp(full, rest, s.amps, g.grid);
    return g;
}

FirstSiteState apply_site1_sym(const SymState& s, const CMatrix& m) {
    check_operator(m, s.d);
    FirstSiteState g = site_split(s);
    g.grid = m * g.grid;
    return g;
}

SymState recombine(const FirstSiteState& g) {
    check_state_dims(g.n, g.d);
    OccBasis full(g.n, g.d), rest(g.n - 1, g.d);
    if (g.grid.rows() != g.d || g.grid.cols() != rest.size()) {
        throw InvalidInput("recombine: grid shape mismatch");
    }
    SymState s{g.n, g.d, {}};
    kernels::recombine_omp(full, rest, g.grid, s.amps);
    return s;
}

double first_site_residual(const FirstSiteState& g) {
    const double nrm = g.grid.norm();
    if (nrm == 0.0) return 0.0;
    SymState r = recombine(g);
    FirstSiteState back = site_split(r);
    return (g.grid - back.grid).norm() / nrm;
}

bool first_site_symmetric(const FirstSiteState& g, double tol) {
    return first_site_residual(g) <= tol;
}

SymState apply_homogeneous(const SymState& s, const CMatrix& a) {
    check_state_dims(s.n, s.d);
    check_operator(a, s.d);
    const int n = s.n;
    std::vector<OccBasis> bases;
    bases.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) bases.emplace_back(k, s.d);
    int64_t worst = 0;
    for (int k = 1; k <= n; ++k) {
        worst = std::max(worst, bases[static_cast<std::size_t>(k)].size() *
                                    bases[static_cast<std::size_t>(n - k)].size());
    }
    if (worst > (int64_t{1} << 24)) {
        throw ScaleExceeded("apply_homogeneous: intermediate Sym^k x Sym^{n-k} too large");
    }
    CMatrix w = s.amps.transpose();  // 1 x D_n
    CMatrix next;
    for (int k = 0; k < n; ++k) {
        kernels::homogeneous_step_omp(bases[static_cast<std::size_t>(k) + 1],
                                      bases[static_cast<std::size_t>(n - k) - 1],
                                      bases[static_cast<std::size_t>(k)],
                                      bases[static_cast<std::size_t>(n - k)], a, w, next);
        w.swap(next);
    }
    SymState out{s.n, s.d, w.col(0)};
    return out;
}

}  // namespace symq
