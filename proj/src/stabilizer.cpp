#include "symq/stabilizer.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "symq/kernels.hpp"
#include "symq/spectrum.hpp"

namespace symq {

namespace {

constexpr std::int64_t kSystemEntryCap = 4'000'000;
constexpr std::uint64_t kProbeStream = 0x700000000ULL;

}  // namespace

CMatrix StabilizerSpace::element(const CVector& coeffs) const {
    if (coeffs.size() != dimension()) throw InvalidInput("element: coefficient count mismatch");
    CMatrix b = CMatrix::Zero(d, d);
    for (int k = 0; k < dimension(); ++k) b += coeffs(k) * basis[static_cast<std::size_t>(k)];
    return b;
}

StabilizerSpace stabilizer_space(const SymState& psi, double tol) {
    if (psi.n < 2) throw InvalidInput("stabilizer_space: need n >= 2");
    if (norm(psi) == 0.0) throw ZeroState();
    const int n = psi.n, d = psi.d;
    OccBasis full(n, d), rest(n - 1, d);
    if (psi.amps.size() != full.size()) throw InvalidInput("stabilizer_space: amplitude count mismatch");

    const std::int64_t rows = static_cast<std::int64_t>(d) * rest.size();
    if (rows * d * d > kSystemEntryCap) {
        throw ScaleExceeded("stabilizer_space: system of " + std::to_string(rows) + "x" +
                            std::to_string(d * d) + " entries exceeds the cap");
    }

    FirstSiteState split = site_split(psi);
    CMatrix sys(rows, d * d);
#pragma omp parallel for schedule(static)
    for (int c = 0; c < d * d; ++c) {
        const int p = c / d, q = c % d;
        CMatrix grid = CMatrix::Zero(d, rest.size());
        grid.row(p) = split.grid.row(q);
        CVector rec;
        kernels::recombine_serial(full, rest, grid, rec);
        CMatrix back;
        kernels::site_split_serial(full, rest, rec, back);
        sys.col(c) = (grid - back).reshaped();
    }

    StabilizerSpace space;
    space.n = n;
    space.d = d;
    space.tol = tol;
    for (const CVector& v : nullspace(sys, tol)) {
        CMatrix b(d, d);
        for (int p = 0; p < d; ++p) {
            for (int q = 0; q < d; ++q) b(p, q) = v(p * d + q);
        }
        space.basis.push_back(std::move(b));
    }
    if (space.basis.empty()) {
        // the identity always stabilizes; an empty result is a numerical bug
        throw Error("stabilizer_space: empty space (identity must always stabilize)");
    }
    return space;
}

CMatrix random_element(const StabilizerSpace& space, std::uint64_t seed, std::uint64_t counter) {
    Rng rng = Rng::substream(seed, counter);
    CVector coeffs(space.dimension());
    for (int k = 0; k < space.dimension(); ++k) coeffs(k) = rng.next_complex_gaussian();
    return space.element(coeffs);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "Verified";
        case Verdict::Refuted: return "Refuted";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

GenericSignatureResult generic_signature(const StabilizerSpace& space, int samples,
                                         std::uint64_t seed, double tol, double cluster_tol) {
    if (samples < 1) throw InvalidInput("generic_signature: need samples >= 1");
    std::vector<JordanSignature> sigs(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < samples; ++i) {
        CMatrix b = random_element(space, seed, static_cast<std::uint64_t>(i));
        sigs[static_cast<std::size_t>(i)] =
            jordan_signature(b, tol, cluster_tol).signature;
    }
    std::map<JordanSignature, int> counts;
    for (const auto& s : sigs) counts[s] += 1;

    GenericSignatureResult res;
    for (const auto& [sig, count] : counts) res.sampled.push_back({sig, count});
    std::sort(res.sampled.begin(), res.sampled.end(),
              [](const SignatureCount& a, const SignatureCount& b) {
                  if (a.count != b.count) return a.count > b.count;
                  return a.signature < b.signature;
              });
    // modal; ties toward more eigenvalue groups, then more blocks
    const SignatureCount* best = nullptr;
    for (const auto& sc : res.sampled) {
        if (!best) {
            best = &sc;
            continue;
        }
        if (sc.count != best->count) continue;
        auto key = [](const SignatureCount& s) {
            return std::tuple(s.signature.group_count(), s.signature.block_count(), s.signature);
        };
        if (key(sc) > key(*best)) best = &sc;
    }
    res.generic = best->signature;
    return res;
}

namespace {

int closest_index(const std::vector<cdouble>& eigs, cdouble target, int exclude = -1) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(eigs.size()); ++i) {
        if (i == exclude) continue;
        const double dist = std::abs(eigs[static_cast<std::size_t>(i)] - target);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    return best;
}

// Newton continuation along b0 + t*b1 towards a collision of the two
// tracked eigenvalues. Returns the colliding element if found.
std::optional<CMatrix> collide_eigenvalues(const CMatrix& b0, const CMatrix& b1, cdouble la0,
                                           cdouble lb0) {
    cdouble t = 0.0;
    cdouble la = la0, lb = lb0;
    for (int iter = 0; iter < 40; ++iter) {
        CMatrix bt = b0 + t * b1;
        const double scale = std::max(bt.norm(), 1e-12);
        auto eigs = eigenvalues(bt);
        const int ia = closest_index(eigs, la);
        const int ib = closest_index(eigs, lb, ia);
        la = eigs[static_cast<std::size_t>(ia)];
        lb = eigs[static_cast<std::size_t>(ib)];
        const cdouble h = la - lb;
        if (std::abs(h) <= 1e-9 * scale) return bt;
        auto gap_at = [&](cdouble tt) -> cdouble {
            auto e2 = eigenvalues(b0 + tt * b1);
            const int ja = closest_index(e2, la);
            const int jb = closest_index(e2, lb, ja);
            return e2[static_cast<std::size_t>(ja)] - e2[static_cast<std::size_t>(jb)];
        };
        const double dt = 1e-6 * (1.0 + std::abs(t));
        const cdouble hp = (gap_at(t + dt) - gap_at(t - dt)) / (2.0 * dt);
        if (std::abs(hp) < 1e-13) return std::nullopt;
        t -= h / hp;
        if (std::abs(t) > 1e4) return std::nullopt;
    }
    return std::nullopt;
}

bool refutes(const JordanSignature& candidate, const JordanSignature& generic) {
    return candidate.group_count() > generic.group_count() ||
           candidate.block_count() < generic.block_count();
}

UniquenessResult uniqueness_impl(const StabilizerSpace& space, const GenericSignatureResult& gs,
                                 int samples, std::uint64_t seed, double tol, double cluster_tol) {
    UniquenessResult res;
    const JordanSignature& generic = gs.generic;

    // 1) a sampled element may already witness non-uniqueness
    for (int i = 0; i < samples; ++i) {
        CMatrix b = random_element(space, seed, static_cast<std::uint64_t>(i));
        JordanSignature sig = jordan_signature(b, tol, cluster_tol).signature;
        if (refutes(sig, generic)) {
            res.verdict = Verdict::Refuted;
            res.witness = b;
            res.witness_signature = sig;
            res.detail = "sampled element with signature " + signature_to_string(sig);
            return res;
        }
    }

    // generic representative used by the structured probes
    std::optional<CMatrix> b0;
    for (int i = 0; i < samples; ++i) {
        CMatrix b = random_element(space, seed, static_cast<std::uint64_t>(i));
        if (jordan_signature(b, tol, cluster_tol).signature == generic) {
            b0 = std::move(b);
            break;
        }
    }
    if (!b0) {
        res.detail = "no sampled element attains the generic signature";
        return res;
    }

    // 2) eigenvalue-collision probe: can two eigenvalue groups be merged
    //    into one Jordan block (fewer blocks) or otherwise degraded?
    std::vector<ClusterAnalysis> clusters = analyze_spectrum(*b0, cluster_tol, tol);
    if (clusters.size() >= 2 && space.dimension() >= 2) {
        for (std::size_t a = 0; a < clusters.size(); ++a) {
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                for (std::uint64_t dir = 0; dir < 3; ++dir) {
                    CMatrix b1 = random_element(space, seed, kProbeStream + dir);
                    auto hit = collide_eigenvalues(*b0, b1, clusters[a].mean, clusters[b].mean);
                    if (!hit) continue;
                    JordanSignature sig = jordan_signature(*hit, tol, cluster_tol).signature;
                    if (refutes(sig, generic)) {
                        res.verdict = Verdict::Refuted;
                        res.witness = *hit;
                        res.witness_signature = sig;
                        res.detail = "eigenvalue collision yields signature " + signature_to_string(sig);
                        return res;
                    }
                    break;  // this pair collided cleanly; no need for more directions
                }
            }
        }
    }

    // 3) exact commutative-algebra certificate
    if (!generic.all_blocks_distinct_eigenvalues()) {
        res.detail = "generic signature has an eigenvalue group with several blocks";
        return res;
    }
    const double comm_tol = 1e-8;
    for (std::size_t i = 0; i < space.basis.size(); ++i) {
        for (std::size_t j = i + 1; j < space.basis.size(); ++j) {
            const CMatrix comm = space.basis[i] * space.basis[j] - space.basis[j] * space.basis[i];
            if (comm.norm() > comm_tol) {
                res.detail = "stabilizer space is not commutative";
                return res;
            }
        }
    }
    // joint generalized eigenspaces must be exactly the generic blocks:
    // then every element has >= as many blocks and <= as many groups.
    const double scale = b0->norm();
    const double jtol = std::max(tol, cluster_tol);
    for (const ClusterAnalysis& cluster : clusters) {
        const int mult = cluster.multiplicity;
        CMatrix q = (*b0 - cluster.mean * CMatrix::Identity(space.d, space.d)) / scale;
        CMatrix power = CMatrix::Identity(space.d, space.d);
        for (int k = 0; k < mult; ++k) power = power * q;
        Eigen::JacobiSVD<CMatrix> svd(power, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double cutoff = jtol * std::max(power.operatorNorm(), 1.0);
        int nullity = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) <= cutoff) ++nullity;
        }
        if (nullity != mult) {
            res.detail = "could not resolve a joint generalized eigenspace";
            return res;
        }
        CMatrix w = svd.matrixV().rightCols(mult);
        for (const CMatrix& e : space.basis) {
            const CMatrix r = e * w;
            if ((r - w * (w.adjoint() * r)).norm() > 1e-6) {
                res.detail = "basis element does not preserve a joint eigenspace";
                return res;
            }
            const CMatrix restricted = w.adjoint() * r;
            if (analyze_spectrum(restricted, cluster_tol, tol).size() != 1) {
                res.detail = "a joint eigenspace splits under a basis element";
                return res;
            }
        }
    }
    res.verdict = Verdict::Verified;
    res.detail = "commutative stabilizer algebra with joint eigenspaces matching the generic blocks";
    return res;
}

}  // namespace

UniquenessResult uniqueness_check(const SymState& psi, const StabilizerSpace& space, int samples,
                                  std::uint64_t seed, double tol, double cluster_tol) {
    if (psi.n != space.n || psi.d != space.d) {
        throw InvalidInput("uniqueness_check: state and space dimensions differ");
    }
    GenericSignatureResult gs = generic_signature(space, samples, seed, tol, cluster_tol);
    return uniqueness_impl(space, gs, samples, seed, tol, cluster_tol);
}

ClassReport classify(const SymState& psi, int samples, std::uint64_t seed, double tol,
                     double cluster_tol) {
    if (norm(psi) == 0.0) throw ZeroState();
    ClassReport report;
    report.n = psi.n;
    report.d = psi.d;
    report.samples = samples;
    report.seed = seed;
    report.tol = tol;
    if (psi.n == 2) {
        report.warning = "n = 2: the stabilizer set need not form a group; invariants may be coarser";
    }
    StabilizerSpace space = stabilizer_space(psi, tol);
    report.stabilizer_dimension = space.dimension();
    GenericSignatureResult gs = generic_signature(space, samples, seed, tol, cluster_tol);
    report.generic = gs.generic;
    report.sampled = gs.sampled;
    report.uniqueness = uniqueness_impl(space, gs, samples, seed, tol, cluster_tol);

    // GHZ-type LU invariant: sorted |alpha_i|^2 in a generic stabilizer eigenbasis
    const bool ghz_like = report.generic.all_blocks_distinct_eigenvalues() &&
                          report.generic.dimension() == report.generic.group_count();
    if (ghz_like) {
        for (int i = 0; i < samples; ++i) {
            CMatrix b = random_element(space, seed, static_cast<std::uint64_t>(i));
            if (jordan_signature(b, tol, cluster_tol).signature != report.generic) continue;
            Eigen::ComplexEigenSolver<CMatrix> es(b);
            if (es.info() != Eigen::Success) break;
            CMatrix p = es.eigenvectors();
            CMatrix pinv;
            try {
                pinv = inverse(p, tol);
            } catch (const SingularMatrix&) {
                break;
            }
            SymState rotated = apply_homogeneous(psi, pinv);
            OccBasis basis(psi.n, psi.d);
            std::vector<int> occ(static_cast<std::size_t>(psi.d), 0);
            std::vector<double> weights;
            double total = 0.0;
            for (int level = 0; level < psi.d; ++level) {
                std::fill(occ.begin(), occ.end(), 0);
                occ[static_cast<std::size_t>(level)] = psi.n;
                const double w = std::norm(rotated.amps(basis.index_of(occ)));
                weights.push_back(w);
                total += w;
            }
            if (total <= 0.0) break;
            for (double& w : weights) w /= total;
            std::sort(weights.begin(), weights.end());
            report.lu_invariant = std::move(weights);
            break;
        }
    }
    return report;
}

bool invariants_distinguish(const SymState& psi, const SymState& phi, int samples,
                            std::uint64_t seed, double tol, double cluster_tol) {
    if (psi.n != phi.n || psi.d != phi.d) {
        throw InvalidInput("invariants_distinguish: states must share n and d");
    }
    StabilizerSpace sp = stabilizer_space(psi, tol);
    StabilizerSpace sf = stabilizer_space(phi, tol);
    if (sp.dimension() != sf.dimension()) return true;
    GenericSignatureResult gp = generic_signature(sp, samples, seed, tol, cluster_tol);
    GenericSignatureResult gf = generic_signature(sf, samples, seed, tol, cluster_tol);
    return !(gp.generic == gf.generic);
}

WitnessResult verify_witness(const SymState& psi, const SymState& phi, const CMatrix& a,
                             WitnessMode mode, double tol) {
    if (psi.n != phi.n || psi.d != phi.d) {
        throw InvalidInput("verify_witness: states must share n and d");
    }
    if (norm(psi) == 0.0 || norm(phi) == 0.0) throw ZeroState();
    Eigen::JacobiSVD<CMatrix> svd(a);
    const auto& sv = svd.singularValues();
    if (a.rows() != psi.d || a.cols() != psi.d || sv(sv.size() - 1) <= tol * sv(0)) {
        throw SingularMatrix("verify_witness: operation must be an invertible dxd matrix");
    }
    if (mode == WitnessMode::LocalUnitary && unitarity_defect(a) > tol) {
        throw NotUnitary("verify_witness: operation is not unitary at the requested tolerance");
    }
    SymState image = apply_homogeneous(psi, a);
    WitnessResult res;
    res.constant = phi.amps.dot(image.amps) / phi.amps.squaredNorm();
    res.residual = (image.amps - res.constant * phi.amps).norm() / image.amps.norm();
    res.match = res.residual <= tol;
    return res;
}

}  // namespace symq
