#include "symq/jordan.hpp"

#include <algorithm>
#include <cctype>

#include "symq/spectrum.hpp"

namespace symq {

void JordanSignature::canonicalize() {
    for (auto& g : groups) std::sort(g.rbegin(), g.rend());
    std::sort(groups.begin(), groups.end(), std::greater<>());
}

int JordanSignature::dimension() const {
    int s = 0;
    for (const auto& g : groups) {
        for (int b : g) s += b;
    }
    return s;
}

int JordanSignature::block_count() const {
    int s = 0;
    for (const auto& g : groups) s += static_cast<int>(g.size());
    return s;
}

bool JordanSignature::all_blocks_distinct_eigenvalues() const {
    for (const auto& g : groups) {
        if (g.size() != 1) return false;
    }
    return !groups.empty();
}

std::string signature_to_string(const JordanSignature& sig) {
    std::string out = "{ ";
    for (std::size_t g = 0; g < sig.groups.size(); ++g) {
        out += "{ ";
        for (std::size_t b = 0; b < sig.groups[g].size(); ++b) {
            out += std::to_string(sig.groups[g][b]);
            if (b + 1 < sig.groups[g].size()) out += ", ";
        }
        out += " }";
        if (g + 1 < sig.groups.size()) out += ", ";
    }
    out += " }";
    return out;
}

JordanSignature parse_signature(const std::string& text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) {
            throw ParseError(std::string("expected '") + c + "'", pos);
        }
        ++pos;
    };
    auto parse_int = [&]() -> int {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected a block size", pos);
        long v = std::stol(text.substr(start, pos - start));
        if (v < 1 || v > kMaxEigenDim) throw ParseError("block size out of range", start);
        return static_cast<int>(v);
    };

    JordanSignature sig;
    expect('{');
    while (true) {
        expect('{');
        std::vector<int> group;
        group.push_back(parse_int());
        skip_ws();
        while (pos < text.size() && text[pos] == ',') {
            ++pos;
            group.push_back(parse_int());
            skip_ws();
        }
        expect('}');
        sig.groups.push_back(std::move(group));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    expect('}');
    skip_ws();
    if (pos != text.size()) throw ParseError("trailing input", pos);
    sig.canonicalize();
    return sig;
}

JordanStructureReport jordan_signature(const CMatrix& b, double tol, double cluster_tol) {
    const int d = static_cast<int>(b.rows());
    std::vector<ClusterAnalysis> clusters = analyze_spectrum(b, cluster_tol, tol);

    JordanStructureReport report;
    for (auto& c : clusters) {
        report.repaired = report.repaired || c.repaired;
        report.groups.push_back({c.mean, c.block_sizes, c.rank_sequence});
    }
    // order groups like the canonical signature; ties by eigenvalue
    std::sort(report.groups.begin(), report.groups.end(),
              [](const JordanGroupReport& a, const JordanGroupReport& b2) {
                  if (a.block_sizes != b2.block_sizes) return a.block_sizes > b2.block_sizes;
                  if (a.eigenvalue.real() != b2.eigenvalue.real()) {
                      return a.eigenvalue.real() < b2.eigenvalue.real();
                  }
                  return a.eigenvalue.imag() < b2.eigenvalue.imag();
              });
    for (const auto& g : report.groups) report.signature.groups.push_back(g.block_sizes);
    if (report.signature.dimension() != d) {
        // analyze_spectrum guarantees this; guard against logic rot
        throw Error("jordan_signature: internal structure/dimension mismatch");
    }
    return report;
}

namespace {

// Partitions of s, parts descending, enumerated in descending lex order.
std::vector<std::vector<int>> partitions_of(int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, s, s);
    return out;
}

}  // namespace

std::vector<JordanSignature> enumerate_signatures(int d) {
    if (d < 1 || d > 12) throw InvalidInput("enumerate_signatures: need 1 <= d <= 12");
    // items: all partitions of every size 1..d, in a fixed total order
    std::vector<std::vector<int>> items;
    std::vector<int> item_weight;
    for (int s = d; s >= 1; --s) {
        for (auto& p : partitions_of(s)) {
            items.push_back(p);
            item_weight.push_back(s);
        }
    }
    std::vector<JordanSignature> out;
    std::vector<std::vector<int>> cur;
    auto rec = [&](auto&& self, int rest, std::size_t first) -> void {
        if (rest == 0) {
            JordanSignature sig;
            sig.groups = cur;
            sig.canonicalize();
            out.push_back(std::move(sig));
            return;
        }
        for (std::size_t i = first; i < items.size(); ++i) {
            if (item_weight[i] > rest) continue;
            cur.push_back(items[i]);
            self(self, rest - item_weight[i], i);  // non-decreasing item index: multisets
            cur.pop_back();
        }
    };
    rec(rec, d, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t count_unique_classes(int d) {
    if (d < 1 || d > 40) throw InvalidInput("count_unique_classes: need 1 <= d <= 40");
    std::vector<std::uint64_t> dp(static_cast<std::size_t>(d) + 1, 0);
    dp[0] = 1;
    for (int s = 1; s <= d; ++s) {
        for (int j = s; j <= d; ++j) dp[static_cast<std::size_t>(j)] += dp[static_cast<std::size_t>(j - s)];
    }
    return dp[static_cast<std::size_t>(d)];
}

std::uint64_t count_signatures(int d) {
    if (d < 1 || d > 40) throw InvalidInput("count_signatures: need 1 <= d <= 40");
    // p(s) kinds of weight-s items, unlimited multiplicity each
    std::vector<std::uint64_t> dp(static_cast<std::size_t>(d) + 1, 0);
    dp[0] = 1;
    for (int s = 1; s <= d; ++s) {
        const std::uint64_t kinds = count_unique_classes(s);
        for (std::uint64_t k = 0; k < kinds; ++k) {
            for (int j = s; j <= d; ++j) {
                dp[static_cast<std::size_t>(j)] += dp[static_cast<std::size_t>(j - s)];
            }
        }
    }
    return dp[static_cast<std::size_t>(d)];
}

}  // namespace symq
