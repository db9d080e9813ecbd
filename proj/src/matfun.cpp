#include "symq/matfun.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "symq/spectrum.hpp"

namespace symq {

namespace {

// Number of singular values of q <= cutoff.
int small_sv_count(const CMatrix& q, double cutoff) {
    Eigen::JacobiSVD<CMatrix> svd(q);
    const auto& sv = svd.singularValues();
    int c = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= cutoff) ++c;
    }
    return c;
}

struct StaircaseResult {
    std::vector<int> nullity;     // nu_1, nu_2, ... capped at mult
    std::vector<int> block_sizes; // descending
    bool consistent = true;       // no repair was needed
};

// Nullity sequence of ((X - mean)/scale)^k, k = 1..mult, with thresholds
// jtol * max(sigma_max(Q^k), 1). `strict` stops at the first inconsistency;
// otherwise the staircase is repaired.
StaircaseResult jordan_staircase(const CMatrix& x, cdouble mean, int mult, double scale,
                                 double jtol, bool strict) {
    StaircaseResult res;
    const int d = static_cast<int>(x.rows());
    CMatrix q = (x - mean * CMatrix::Identity(d, d)) / scale;
    CMatrix power = CMatrix::Identity(d, d);
    std::vector<int> nu{0};
    std::vector<int> delta;
    int reached = 0;
    for (int k = 1; k <= mult && reached < mult; ++k) {
        power = power * q;
        const double pnorm = power.operatorNorm();
        const double cutoff = jtol * std::max(pnorm, 1.0);
        int raw = std::min(small_sv_count(power, cutoff), mult);
        if (raw < nu.back()) {
            res.consistent = false;
            raw = nu.back();
        }
        int dk = raw - nu.back();
        if (!delta.empty() && dk > delta.back()) {
            res.consistent = false;
            dk = delta.back();
        }
        if (dk == 0) {
            // stalled before reaching the multiplicity
            res.consistent = false;
            if (strict) break;
            dk = delta.empty() ? (mult - reached) : std::min(delta.back(), mult - reached);
            dk = std::max(dk, 1);
        }
        delta.push_back(dk);
        reached += dk;
        nu.push_back(reached);
        if (strict && !res.consistent) break;
    }
    if (reached < mult) {
        res.consistent = false;
        if (!strict) {
            while (reached < mult) {
                int dk = delta.empty() ? mult : std::min(delta.back(), mult - reached);
                dk = std::max(dk, 1);
                delta.push_back(dk);
                reached += dk;
            }
            nu.clear();
            int acc = 0;
            for (int dk : delta) nu.push_back(acc += dk);
            nu.insert(nu.begin(), 0);
        }
    }
    res.nullity.assign(nu.begin() + 1, nu.end());
    // delta[k-1] = number of blocks of size >= k
    for (std::size_t k = 0; k < delta.size(); ++k) {
        const int geq = delta[k];
        const int geq_next = k + 1 < delta.size() ? delta[k + 1] : 0;
        for (int c = 0; c < geq - geq_next; ++c) {
            res.block_sizes.push_back(static_cast<int>(k) + 1);
        }
    }
    std::sort(res.block_sizes.rbegin(), res.block_sizes.rend());
    return res;
}

struct DendrogramNode {
    double height;
    std::vector<int> leaves;
};

// Single-linkage merge sequence over the eigenvalue point set.
std::vector<DendrogramNode> single_linkage(const std::vector<cdouble>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<int>> clusters(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) clusters[static_cast<std::size_t>(i)] = {i};
    std::vector<DendrogramNode> nodes;
    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double dist = std::numeric_limits<double>::infinity();
                for (int a : clusters[i]) {
                    for (int b : clusters[j]) {
                        dist = std::min(dist, std::abs(pts[static_cast<std::size_t>(a)] -
                                                       pts[static_cast<std::size_t>(b)]));
                    }
                }
                if (dist < best) {
                    best = dist;
                    bi = i;
                    bj = j;
                }
            }
        }
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        nodes.push_back({best, clusters[bi]});
    }
    return nodes;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

std::vector<ClusterAnalysis> analyze_spectrum(const CMatrix& x, double cluster_tol, double tol) {
    const int d = static_cast<int>(x.rows());
    std::vector<cdouble> eigs = eigenvalues(x);
    const double scale = x.norm();
    std::vector<ClusterAnalysis> out;
    if (scale == 0.0) {
        ClusterAnalysis c;
        c.mean = 0.0;
        c.multiplicity = d;
        c.block_sizes.assign(static_cast<std::size_t>(d), 1);
        c.rank_sequence = {d, 0};
        out.push_back(std::move(c));
        return out;
    }

    const double jtol = std::max(tol, cluster_tol);
    const double base = cluster_tol * scale;
    // Merges are considered up to this diameter; eigenvalues of a size-k
    // Jordan block computed in doubles scatter by ~eps^(1/k).
    const double cap = std::max(0.02 * scale, base);

    UnionFind uf(d);
    for (const auto& node : single_linkage(eigs)) {
        if (node.height > cap) break;
        bool already = true;
        for (std::size_t i = 1; i < node.leaves.size(); ++i) {
            if (uf.find(node.leaves[i]) != uf.find(node.leaves[0])) already = false;
        }
        if (already) continue;
        if (node.height <= base) {
            for (std::size_t i = 1; i < node.leaves.size(); ++i) uf.unite(node.leaves[i], node.leaves[0]);
            continue;
        }
        cdouble mean = 0.0;
        for (int leaf : node.leaves) mean += eigs[static_cast<std::size_t>(leaf)];
        mean /= static_cast<double>(node.leaves.size());
        StaircaseResult probe = jordan_staircase(x, mean, static_cast<int>(node.leaves.size()),
                                                 scale, jtol, /*strict=*/true);
        if (probe.consistent) {
            for (std::size_t i = 1; i < node.leaves.size(); ++i) uf.unite(node.leaves[i], node.leaves[0]);
        }
    }

    std::vector<std::vector<int>> groups;
    for (int i = 0; i < d; ++i) {
        const int r = uf.find(i);
        bool fresh = true;
        for (auto& g : groups) {
            if (uf.find(g[0]) == r) {
                g.push_back(i);
                fresh = false;
                break;
            }
        }
        if (fresh) groups.push_back({i});
    }

    for (const auto& members : groups) {
        ClusterAnalysis c;
        cdouble mean = 0.0;
        for (int i : members) mean += eigs[static_cast<std::size_t>(i)];
        mean /= static_cast<double>(members.size());
        c.mean = mean;
        c.multiplicity = static_cast<int>(members.size());
        StaircaseResult st =
            jordan_staircase(x, mean, c.multiplicity, scale, jtol, /*strict=*/false);
        c.block_sizes = st.block_sizes;
        c.repaired = !st.consistent;
        c.rank_sequence.push_back(d);
        for (int nu : st.nullity) c.rank_sequence.push_back(d - nu);
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const ClusterAnalysis& a, const ClusterAnalysis& b) {
        if (a.mean.real() != b.mean.real()) return a.mean.real() < b.mean.real();
        return a.mean.imag() < b.mean.imag();
    });
    return out;
}

int SpectralData::dim() const {
    int s = 0;
    for (const auto& c : clusters) s += c.multiplicity;
    return s;
}

SpectralData spectral_data(const CMatrix& x, double cluster_tol, double tol) {
    SpectralData sd;
    for (const auto& c : analyze_spectrum(x, cluster_tol, tol)) {
        sd.clusters.push_back({c.mean, c.multiplicity, c.block_sizes.empty() ? 1 : c.block_sizes.front()});
    }
    return sd;
}

cdouble HermitePoly::eval(cdouble z) const {
    cdouble acc = coeffs.back();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
        acc = acc * (z - nodes[j]) + coeffs[j];
    }
    return acc;
}

CMatrix HermitePoly::eval(const CMatrix& x) const {
    const int d = static_cast<int>(x.rows());
    const CMatrix id = CMatrix::Identity(d, d);
    CMatrix acc = coeffs.back() * id;
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
        acc = acc * (x - nodes[j] * id) + coeffs[j] * id;
    }
    return acc;
}

HermitePoly hermite_interpolant(const SpectralData& sd, const FunctionSpec& fs) {
    if (fs.clusters.size() != sd.clusters.size()) {
        throw InsufficientDerivatives("function spec does not cover every eigenvalue cluster");
    }
    const std::size_t nc = sd.clusters.size();
    for (std::size_t c = 0; c < nc; ++c) {
        if (static_cast<int>(fs.clusters[c].derivatives.size()) < sd.clusters[c].max_block - 1) {
            throw InsufficientDerivatives(
                "cluster " + std::to_string(c) + " needs " +
                std::to_string(sd.clusters[c].max_block - 1) + " derivatives, got " +
                std::to_string(fs.clusters[c].derivatives.size()));
        }
    }

    // Leja-style cluster ordering stabilizes the Newton form.
    std::vector<std::size_t> order;
    std::vector<bool> used(nc, false);
    for (std::size_t step = 0; step < nc; ++step) {
        std::size_t best = nc;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < nc; ++c) {
            if (used[c]) continue;
            double score = 0.0;
            if (order.empty()) {
                score = std::abs(sd.clusters[c].eigenvalue);
            } else {
                for (std::size_t p : order) {
                    score += sd.clusters[p].max_block *
                             std::log(std::abs(sd.clusters[c].eigenvalue - sd.clusters[p].eigenvalue));
                }
            }
            if (score > best_score) {
                best_score = score;
                best = c;
            }
        }
        used[best] = true;
        order.push_back(best);
    }

    HermitePoly poly;
    std::vector<const ClusterValues*> node_values;
    std::vector<int> node_rep;  // repeat index within its cluster
    for (std::size_t c : order) {
        for (int k = 0; k < sd.clusters[c].max_block; ++k) {
            poly.nodes.push_back(sd.clusters[c].eigenvalue);
            node_values.push_back(&fs.clusters[c]);
            node_rep.push_back(k);
        }
    }

    // Confluent divided differences, built diagonal by diagonal.
    const std::size_t m = poly.nodes.size();
    std::vector<std::vector<cdouble>> dd(m, std::vector<cdouble>(m, 0.0));
    std::vector<double> factorial{1.0};
    for (std::size_t k = 1; k <= m; ++k) factorial.push_back(factorial.back() * static_cast<double>(k));
    for (std::size_t i = 0; i < m; ++i) dd[i][i] = node_values[i]->value;
    for (std::size_t len = 1; len < m; ++len) {
        for (std::size_t i = 0; i + len < m; ++i) {
            const std::size_t j = i + len;
            if (poly.nodes[i] == poly.nodes[j] && node_values[i] == node_values[j]) {
                dd[i][j] = node_values[i]->derivatives[len - 1] / factorial[len];
            } else {
                dd[i][j] = (dd[i + 1][j] - dd[i][j - 1]) / (poly.nodes[j] - poly.nodes[i]);
            }
            if (!std::isfinite(dd[i][j].real()) || !std::isfinite(dd[i][j].imag())) {
                throw IllConditionedNodes("divided differences overflowed");
            }
        }
    }
    for (std::size_t j = 0; j < m; ++j) poly.coeffs.push_back(dd[0][j]);
    return poly;
}

CMatrix matrix_function(const CMatrix& x, const SpectralData& sd, const FunctionSpec& fs) {
    if (sd.dim() != x.rows()) throw InvalidInput("matrix_function: spectral data does not match matrix");
    return hermite_interpolant(sd, fs).eval(x);
}

NthRootResult nth_root(const CMatrix& x, int order, const std::vector<int>& branches,
                       double cluster_tol, double tol) {
    if (order < 1) throw InvalidInput("nth_root: order must be >= 1");
    SpectralData sd = spectral_data(x, cluster_tol, tol);
    const double scale = x.norm();
    if (!branches.empty() && branches.size() != sd.clusters.size()) {
        throw InvalidInput("nth_root: need one branch index per eigenvalue cluster (" +
                           std::to_string(sd.clusters.size()) + " clusters)");
    }
    FunctionSpec fs;
    for (std::size_t c = 0; c < sd.clusters.size(); ++c) {
        const cdouble lambda = sd.clusters[c].eigenvalue;
        if (std::abs(lambda) <= cluster_tol * scale || scale == 0.0) {
            throw SingularRoot("nth_root: eigenvalue cluster at " + std::to_string(lambda.real()) +
                               "+" + std::to_string(lambda.imag()) + "i is numerically zero");
        }
        const int branch = branches.empty() ? 0 : branches[c];
        const double r = static_cast<double>(order);
        const double mag = std::pow(std::abs(lambda), 1.0 / r);
        const double arg = (std::arg(lambda) + 2.0 * std::numbers::pi * branch) / r;
        ClusterValues cv;
        cv.value = std::polar(mag, arg);
        // f(z) = z^(1/r) on the chosen branch: f^(k) = f(z) z^-k prod_{j<k} (1/r - j)
        cdouble deriv = cv.value;
        for (int k = 1; k < sd.clusters[c].max_block; ++k) {
            deriv *= (1.0 / r - static_cast<double>(k - 1)) / lambda;
            cv.derivatives.push_back(deriv);
        }
        fs.clusters.push_back(std::move(cv));
    }
    NthRootResult res;
    res.witness = hermite_interpolant(sd, fs);
    res.root = res.witness.eval(x);
    res.spectrum = std::move(sd);
    return res;
}

CMatrix nth_root_matrix(const CMatrix& x, int order, const std::vector<int>& branches,
                        double cluster_tol, double tol) {
    return nth_root(x, order, branches, cluster_tol, tol).root;
}

}  // namespace symq
