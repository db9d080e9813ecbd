#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symq/jordan.hpp"
#include "symq/rng.hpp"
#include "symq/symspace.hpp"

namespace symq {

// Linear space of single-particle operators B whose site-1 action keeps the
// state symmetric. Always contains the identity; the basis is orthonormal
// under the Frobenius inner product.
struct StabilizerSpace {
    int n = 0, d = 0;
    std::vector<CMatrix> basis;
    double tol = kDefaultTol;

    int dimension() const { return static_cast<int>(basis.size()); }
    CMatrix element(const CVector& coeffs) const;
};

// Nullspace of B -> component of B_(1)|psi> outside the embedded Sym^n,
// assembled in C^d (x) Sym^{n-1} coordinates (never materializes d^n).
StabilizerSpace stabilizer_space(const SymState& psi, double tol = kDefaultTol);

// Standard complex-Gaussian combination of the basis, substream `counter`.
CMatrix random_element(const StabilizerSpace& space, std::uint64_t seed, std::uint64_t counter);

struct SignatureCount {
    JordanSignature signature;
    int count = 0;
};

struct GenericSignatureResult {
    JordanSignature generic;
    std::vector<SignatureCount> sampled;  // count desc, then signature
};

// Modal signature over `samples` random elements; ties break toward more
// eigenvalue groups, then more blocks (the open-dense direction).
GenericSignatureResult generic_signature(const StabilizerSpace& space, int samples,
                                         std::uint64_t seed, double tol = kDefaultTol,
                                         double cluster_tol = kDefaultClusterTol);

enum class Verdict { Verified, Refuted, Inconclusive };
std::string to_string(Verdict v);

struct UniquenessResult {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<CMatrix> witness;                 // for Refuted
    std::optional<JordanSignature> witness_signature;
    std::string detail;
};

// Verified: generic signature has one block per eigenvalue group AND the
// space is a commutative algebra whose joint generalized eigenspaces are
// exactly the generic blocks (so no element can have more eigenvalue groups
// or fewer blocks). Refuted: an explicit witness element with more groups
// or fewer blocks, from the samples or from an eigenvalue-collision probe.
// Anything short of either certificate is Inconclusive.
UniquenessResult uniqueness_check(const SymState& psi, const StabilizerSpace& space, int samples,
                                  std::uint64_t seed, double tol = kDefaultTol,
                                  double cluster_tol = kDefaultClusterTol);

struct ClassReport {
    int n = 0, d = 0;
    int stabilizer_dimension = 0;
    JordanSignature generic;
    std::vector<SignatureCount> sampled;
    UniquenessResult uniqueness;
    std::optional<std::vector<double>> lu_invariant;  // sorted |alpha_i|^2, normalized
    std::string warning;                              // set for n == 2
    int samples = 0;
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
};

ClassReport classify(const SymState& psi, int samples = 16, std::uint64_t seed = 0,
                     double tol = kDefaultTol, double cluster_tol = kDefaultClusterTol);

// True when (stabilizer dimension, generic signature) differ: a sound
// SLOCC-inequivalence certificate. False only means "not distinguished".
bool invariants_distinguish(const SymState& psi, const SymState& phi, int samples,
                            std::uint64_t seed, double tol = kDefaultTol,
                            double cluster_tol = kDefaultClusterTol);

enum class WitnessMode { Slocc, LocalUnitary };

struct WitnessResult {
    bool match = false;
    cdouble constant = 0.0;  // A^{(x)n} psi = constant * phi when match
    double residual = 0.0;
};

WitnessResult verify_witness(const SymState& psi, const SymState& phi, const CMatrix& a,
                             WitnessMode mode, double tol = kDefaultTol);

}  // namespace symq
