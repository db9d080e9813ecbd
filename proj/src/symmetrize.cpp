#include "symq/symmetrize.hpp"

#include <cmath>

namespace symq {

SymmetrizationResult symmetrize_locals(const SymState& psi, const std::vector<CMatrix>& ops,
                                       double tol) {
    const int n = psi.n, d = psi.d;
    if (static_cast<int>(ops.size()) != n) {
        throw InvalidInput("symmetrize_locals: need one operation per particle");
    }
    if (norm(psi) == 0.0) throw ZeroState();
    for (const CMatrix& op : ops) {
        if (op.rows() != d || op.cols() != d) {
            throw InvalidInput("symmetrize_locals: operations must be " + std::to_string(d) + "x" +
                               std::to_string(d));
        }
    }
    const CMatrix a1_inv = inverse(ops[0], tol);  // throws SingularMatrix
    for (std::size_t i = 1; i < ops.size(); ++i) {
        inverse(ops[static_cast<std::size_t>(i)], tol);
    }

    // Premise: (x)A_i psi symmetric. At oracle scale verify on the full
    // tensor; otherwise each B_1j must stabilize psi (equivalent through
    // the reshuffling of the local operations).
    bool oracle_scale = true;
    std::int64_t full_size = 1;
    for (int k = 0; k < n && oracle_scale; ++k) {
        full_size *= d;
        if (full_size > kFullStateCap) oracle_scale = false;
    }
    if (oracle_scale) {
        FullState f = sym_to_full(psi);
        for (int k = 1; k <= n; ++k) f = apply_site(f, ops[static_cast<std::size_t>(k) - 1], k);
        const double res = symmetry_residual(f);
        if (res > tol) throw NotSymmetricImage(res);
    }

    SymmetrizationResult out;
    out.product = CMatrix::Identity(d, d);
    SymState chi = psi;
    // chi = (B_12 B_13 ... B_1n)_(1) psi, rightmost factor applied first
    for (int j = n; j >= 2; --j) {
        const CMatrix b1j = a1_inv * ops[static_cast<std::size_t>(j) - 1];
        FirstSiteState g = apply_site1_sym(chi, b1j);
        const double res = first_site_residual(g);
        if (res > tol) throw NotSymmetricImage(res);
        chi = recombine(g);
    }
    for (int j = 2; j <= n; ++j) {
        out.product = out.product * (a1_inv * ops[static_cast<std::size_t>(j) - 1]);
    }

    SymState phi = apply_homogeneous(chi, ops[0]);  // A_1^{(x)n} after the B chain
    out.root = nth_root_matrix(out.product, n);     // principal branches
    out.a = ops[0] * out.root;

    SymState image = apply_homogeneous(psi, out.a);
    const double phi_norm = norm(phi);
    if (phi_norm == 0.0) throw ZeroState();
    out.residual = (image.amps - phi.amps).norm() / phi_norm;
    if (out.residual > tol) {
        throw ResidualTooLarge("symmetrize_locals: A^{(x)n} psi does not reproduce the image", out.residual);
    }

    bool inputs_unitary = true;
    for (const CMatrix& op : ops) {
        if (unitarity_defect(op) > 10.0 * tol) inputs_unitary = false;
    }
    out.unitary = inputs_unitary;
    if (inputs_unitary) {
        const double defect = unitarity_defect(out.a);
        if (defect > 10.0 * tol) {
            throw ResidualTooLarge("symmetrize_locals: unitary inputs produced a non-unitary A", defect);
        }
    }
    return out;
}

bool stabilizer_root_check(const SymState& psi, const CMatrix& b, int order, double tol) {
    if (order < 1) throw InvalidInput("stabilizer_root_check: order must be >= 1");
    FirstSiteState gb = apply_site1_sym(psi, b);
    const double pre = first_site_residual(gb);
    if (pre > tol) throw NotSymmetric(pre);

    const CMatrix s = nth_root_matrix(b, order);
    FirstSiteState gs = apply_site1_sym(psi, s);
    if (first_site_residual(gs) > tol) return false;

    if (order == psi.n) {
        SymState homogeneous = apply_homogeneous(psi, s);
        SymState site1 = recombine(gb);
        const double scale = std::max(norm(site1), 1e-300);
        return (homogeneous.amps - site1.amps).norm() / scale <= std::max(tol, 1e-8);
    }
    // for other orders only the root identity itself can be checked
    CMatrix power = CMatrix::Identity(psi.d, psi.d);
    for (int k = 0; k < order; ++k) power = power * s;
    return (power - b).norm() <= std::max(tol, 1e-8) * std::max(b.norm(), 1.0);
}

}  // namespace symq
