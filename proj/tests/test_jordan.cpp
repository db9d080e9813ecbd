#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symq/jordan.hpp"
#include "symq/states.hpp"
#include "test_util.hpp"

using namespace symq;
using testutil::random_invertible;

namespace {

JordanSignature sig(std::vector<std::vector<int>> groups) {
    JordanSignature s{std::move(groups)};
    s.canonicalize();
    return s;
}

// independent partition counter for the count_unique_classes oracle
std::uint64_t brute_partitions(int rest, int maxpart) {
    if (rest == 0) return 1;
    std::uint64_t total = 0;
    for (int p = std::min(rest, maxpart); p >= 1; --p) total += brute_partitions(rest - p, p);
    return total;
}

CMatrix matrix_for(const std::vector<int>& sizes, const std::vector<cdouble>& eigs) {
    return jordan_matrix(BlockLayout(sizes), eigs);
}

}  // namespace

TEST_CASE("jordan_signature on the fixed examples") {
    CMatrix shear(2, 2);
    shear << 5, 1, 0, 5;
    CHECK(jordan_signature(shear).signature == sig({{2}}));

    CHECK(jordan_signature(CMatrix::Identity(2, 2)).signature == sig({{1, 1}}));

    CMatrix diag(2, 2);
    diag << 1, 0, 0, 2;
    CHECK(jordan_signature(diag).signature == sig({{1}, {1}}));
}

TEST_CASE("jordan report carries group data consistent with the signature") {
    CMatrix m = matrix_for({2, 1}, {cdouble(0.5, 0), cdouble(-1.0, 0)});
    JordanStructureReport rep = jordan_signature(m);
    CHECK(rep.signature == sig({{2}, {1}}));
    REQUIRE(rep.groups.size() == 2);
    CHECK(rep.groups[0].block_sizes == std::vector<int>{2});
    CHECK(std::abs(rep.groups[0].eigenvalue - cdouble(0.5, 0)) < 1e-7);
    CHECK(rep.groups[1].block_sizes == std::vector<int>{1});
    // rank sequence for the 2-block group: r_0 = 3, r_1 = 2, r_2 = 1
    CHECK(rep.groups[0].rank_sequence == std::vector<int>{3, 2, 1});
    CHECK(!rep.repaired);
}

TEST_CASE("signature strings round-trip in the bracket notation") {
    CHECK(signature_to_string(sig({{2}, {1}})) == "{ { 2 }, { 1 } }");
    CHECK(signature_to_string(sig({{1, 1, 1}})) == "{ { 1, 1, 1 } }");
    CHECK(parse_signature("{ { 2 }, { 1 } }") == sig({{2}, {1}}));
    CHECK(parse_signature("{{1,1,1}}") == sig({{1, 1, 1}}));
    CHECK(parse_signature("{ {1}, {2} }") == sig({{2}, {1}}));  // canonical order
    for (int d = 1; d <= 6; ++d) {
        for (const auto& s : enumerate_signatures(d)) {
            CHECK(parse_signature(signature_to_string(s)) == s);
        }
    }
}

TEST_CASE("parse_signature rejects malformed text") {
    CHECK_THROWS_AS(parse_signature("{ }"), ParseError);
    CHECK_THROWS_AS(parse_signature(""), ParseError);
    CHECK_THROWS_AS(parse_signature("{ { 2 }, { } }"), ParseError);
    CHECK_THROWS_AS(parse_signature("{ { 2 } } trailing"), ParseError);
    CHECK_THROWS_AS(parse_signature("{ { 0 } }"), ParseError);
    try {
        parse_signature("{ { 2 ,");
    } catch (const ParseError& e) {
        CHECK(e.position > 0);
    }
}

TEST_CASE("enumerate_signatures on small dimensions") {
    auto d1 = enumerate_signatures(1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0] == sig({{1}}));

    auto d2 = enumerate_signatures(2);
    REQUIRE(d2.size() == 3);
    CHECK(std::count(d2.begin(), d2.end(), sig({{2}})) == 1);
    CHECK(std::count(d2.begin(), d2.end(), sig({{1, 1}})) == 1);
    CHECK(std::count(d2.begin(), d2.end(), sig({{1}, {1}})) == 1);

    CHECK(enumerate_signatures(3).size() == 6);
}

TEST_CASE("counting matches enumeration and the partition oracle") {
    CHECK(count_signatures(2) == 3);
    CHECK(count_signatures(3) == 6);
    CHECK(count_signatures(4) == 14);
    for (int d = 1; d <= 10; ++d) {
        if (d <= 10) CHECK(count_signatures(d) == enumerate_signatures(std::min(d, 12)).size());
        CHECK(count_unique_classes(d) == brute_partitions(d, d));
    }
    CHECK(count_unique_classes(2) == 2);
    CHECK(count_unique_classes(3) == 3);
    CHECK(count_unique_classes(4) == 5);
    CHECK(count_unique_classes(40) == brute_partitions(40, 40));
}

TEST_CASE("every enumerated signature sums to d and is canonical") {
    for (int d = 1; d <= 8; ++d) {
        auto sigs = enumerate_signatures(d);
        for (const auto& s : sigs) {
            CHECK(s.dimension() == d);
            JordanSignature copy = s;
            copy.canonicalize();
            CHECK(copy == s);
        }
        // no duplicates
        auto sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("similarity invariance of the signature") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 5);
        auto sigs = enumerate_signatures(d);
        const JordanSignature& target = sigs[rng.next_u64() % sigs.size()];
        // one well-separated eigenvalue per group, flattened descending
        std::vector<std::pair<int, cdouble>> pairs;
        std::vector<cdouble> used;
        for (const auto& g : target.groups) {
            cdouble lambda;
            bool ok = false;
            while (!ok) {
                lambda = cdouble(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
                ok = true;
                for (cdouble seen : used) ok = ok && std::abs(lambda - seen) > 0.25;
            }
            used.push_back(lambda);
            for (int b : g) pairs.emplace_back(b, lambda);
        }
        std::sort(pairs.begin(), pairs.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<int> sizes;
        std::vector<cdouble> eigs;
        for (const auto& [size, eig] : pairs) {
            sizes.push_back(size);
            eigs.push_back(eig);
        }
        const CMatrix j = matrix_for(sizes, eigs);
        CHECK(jordan_signature(j).signature == target);

        const CMatrix a = random_invertible(rng, d, 10.0);
        CHECK(jordan_signature(a * j * inverse(a)).signature == target);
    }
}

TEST_CASE("the signature ignores the particular eigenvalues") {
    Rng rng(202);
    const std::vector<int> sizes{3, 2, 1};
    for (int trial = 0; trial < 20; ++trial) {
        // three pairwise-distinct eigenvalues, arbitrary values
        std::vector<cdouble> eigs;
        while (eigs.size() < 3) {
            cdouble lambda(4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0);
            bool ok = true;
            for (cdouble seen : eigs) ok = ok && std::abs(lambda - seen) > 0.2;
            if (ok) eigs.push_back(lambda);
        }
        CHECK(jordan_signature(matrix_for(sizes, eigs)).signature == sig({{3}, {2}, {1}}));
    }
    // merging eigenvalues changes the grouping, not the block sizes
    CHECK(jordan_signature(matrix_for(sizes, {1.0, 1.0, 2.0})).signature == sig({{3, 2}, {1}}));
}
