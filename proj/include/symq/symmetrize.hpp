#pragma once

#include <vector>

#include "symq/matfun.hpp"
#include "symq/symspace.hpp"

namespace symq {

struct SymmetrizationResult {
    CMatrix a;        // the homogeneous operation, a = ops[0] * root
    CMatrix root;     // principal n-th root of `product`
    CMatrix product;  // B_11 B_12 ... B_1n with B_1j = A_1^{-1} A_j
    double residual = 0.0;  // |A^{(x)n} psi - (x)A_i psi| / |(x)A_i psi|
    bool unitary = false;   // all inputs unitary (then A is unitary too)
};

// Turns per-particle invertible operations that map psi to a symmetric
// state into one operation A applied to every particle, with A = A_1 S and
// S a principal n-th root of B_11 B_12 ... B_1n. Throws NotSymmetricImage
// when the premise fails and ResidualTooLarge on numerical failure.
SymmetrizationResult symmetrize_locals(const SymState& psi, const std::vector<CMatrix>& ops,
                                       double tol = kDefaultTol);

// Executable form of the root-of-a-stabilizer fact: the principal order-th
// root of a stabilizer of psi again stabilizes psi, and for order = n its
// homogeneous action reproduces the site-1 action of b.
bool stabilizer_root_check(const SymState& psi, const CMatrix& b, int order,
                           double tol = kDefaultTol);

}  // namespace symq
