#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "symq/linalg.hpp"

namespace symq {

// d^n amplitudes above this are refused; the full tensor representation is
// an oracle for cross-checks, not the production engine.
inline constexpr std::int64_t kFullStateCap = std::int64_t{1} << 20;
inline constexpr std::int64_t kOccBasisCap = std::int64_t{1} << 31;

// C(n+d-1, d-1) with an overflow guard (throws ScaleExceeded past 2^31).
std::int64_t sym_dim(int n, int d);

// Occupation-number basis of Sym^n(C^d): vectors (m_0 .. m_{d-1}) with
// sum m_i = n, enumerated in decreasing lexicographic order, so e.g.
// (n,d)=(2,2) gives (2,0), (1,1), (0,2).
class OccBasis {
public:
    OccBasis(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    std::int64_t size() const { return size_; }

    std::span<const int> occ(std::int64_t index) const {
        return {occs_.data() + index * d_, static_cast<std::size_t>(d_)};
    }
    std::int64_t index_of(std::span<const int> occ) const;

    // n! / prod m_i!  (exact below 2^53, correctly rounded above)
    double arrangements(std::int64_t index) const { return arrangements_[index]; }
    const std::vector<double>& arrangements_table() const { return arrangements_; }

private:
    int n_, d_;
    std::int64_t size_;
    std::vector<int> occs_;           // flattened, size_ * d_
    std::vector<double> arrangements_;
};

// Spec-facing enumeration helper.
std::vector<std::vector<int>> occ_basis(int n, int d);

// Amplitudes over the orthonormal symmetrized basis kets; the
// 1/sqrt(#arrangements) factor lives in sym_to_full, so norms agree
// across representations. States are handled unnormalized throughout.
struct SymState {
    int n = 0, d = 0;
    CVector amps;
};

// Dense amplitudes over the product basis |i_1 ... i_n>, site 1 most
// significant. Oracle-scale only (d^n <= 2^20).
struct FullState {
    int n = 0, d = 0;
    CVector amps;
};

// An element of C^d (x) Sym^{n-1}(C^d): row i is the Sym^{n-1} component
// paired with level i on the split-off first site.
struct FirstSiteState {
    int n = 0, d = 0;
    CMatrix grid;  // d x sym_dim(n-1, d)
};

SymState sym_zero(int n, int d);
FullState full_zero(int n, int d);
double norm(const SymState& s);
double norm(const FullState& f);

FullState sym_to_full(const SymState& s);
// Requires is_symmetric(f, tol); throws NotSymmetric with the residual.
SymState full_to_sym(const FullState& f, double tol = kDefaultTol);

// max over adjacent transpositions tau of |f - P_tau f| / |f| (0 for n=1).
double symmetry_residual(const FullState& f);
bool is_symmetric(const FullState& f, double tol = kDefaultTol);

// P_sigma |i_1 .. i_n> = |i_{sigma(1)} .. i_{sigma(n)}>, sigma 0-based.
FullState permute(const FullState& f, const std::vector<int>& sigma);

// M acting on tensor factor `site` (1-based) only.
FullState apply_site(const FullState& f, const CMatrix& m, int site);

// The isometry |occ> -> sum_i sqrt(m_i/n) |i> (x) |occ - e_i| and friends.
FirstSiteState site_split(const SymState& s);
FirstSiteState apply_site1_sym(const SymState& s, const CMatrix& m);
// Adjoint of the split isometry; exact inverse on its image.
SymState recombine(const FirstSiteState& g);

// Norm of the component of g orthogonal to the embedded Sym^n, over |g|.
double first_site_residual(const FirstSiteState& g);
bool first_site_symmetric(const FirstSiteState& g, double tol = kDefaultTol);

// A^{(x)n} without leaving polynomially-sized representations: sweeps one
// site at a time through Sym^k (x) Sym^{n-k} intermediates.
SymState apply_homogeneous(const SymState& s, const CMatrix& a);

}  // namespace symq
