#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symq/jordan.hpp"
#include "symq/states.hpp"
#include "test_util.hpp"

using namespace symq;

namespace {

std::int64_t ket(std::initializer_list<int> digits, int d) {
    std::int64_t idx = 0;
    for (int v : digits) idx = idx * d + v;
    return idx;
}

cdouble amp_at(const SymState& s, const std::vector<int>& occ) {
    OccBasis basis(s.n, s.d);
    return s.amps(basis.index_of(occ));
}

double binom(int a, int b) {
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

}  // namespace

TEST_CASE("ghz places amplitudes on the n*e_i occupations") {
    SymState g = ghz(3, 2, {1.0, 1.0});
    CHECK(std::abs(amp_at(g, {3, 0}) - 1.0) == 0.0);
    CHECK(std::abs(amp_at(g, {0, 3}) - 1.0) == 0.0);
    CHECK(std::abs(norm(g) - std::sqrt(2.0)) < 1e-15);

    FullState f = sym_to_full(ghz(3, 3, {1.0, 1.0, 1.0}));
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(f.amps(ket({i, i, i}, 3)) - 1.0) < 1e-15);
    }
    CHECK(std::abs(norm(f) - std::sqrt(3.0)) < 1e-15);

    SymState product = ghz(4, 3, {1.0, 0.0, 0.0});
    CHECK(std::abs(amp_at(product, {4, 0, 0}) - 1.0) == 0.0);
    CHECK(std::abs(norm(product) - 1.0) == 0.0);

    // default amplitudes 1/sqrt(d) give a normalized state
    CHECK(std::abs(norm(ghz(5, 4)) - 1.0) < 1e-14);

    CHECK_THROWS_AS(ghz(3, 2, {1.0}), InvalidInput);
}

TEST_CASE("excitation states match their product-basis displays") {
    // W state: |001> + |010> + |100>
    SymState w = excitation(3, 2, 1);
    CHECK(std::abs(amp_at(w, {2, 1}) - std::sqrt(3.0)) < 1e-14);
    FullState fw = sym_to_full(w);
    for (auto idx : {ket({0, 0, 1}, 2), ket({0, 1, 0}, 2), ket({1, 0, 0}, 2)}) {
        CHECK(std::abs(fw.amps(idx) - 1.0) < 1e-14);
    }

    // E_2 at d=3: |002>+|020>+|200>+|011>+|101>+|110>
    FullState f2 = sym_to_full(excitation(3, 3, 2));
    for (auto idx : {ket({0, 0, 2}, 3), ket({0, 2, 0}, 3), ket({2, 0, 0}, 3),
                     ket({0, 1, 1}, 3), ket({1, 0, 1}, 3), ket({1, 1, 0}, 3)}) {
        CHECK(std::abs(f2.amps(idx) - 1.0) < 1e-14);
    }
    CHECK(std::abs(f2.amps.norm() - std::sqrt(6.0)) < 1e-13);

    CHECK(std::abs(amp_at(excitation(4, 3, 0), {4, 0, 0}) - 1.0) == 0.0);

    CHECK_THROWS_AS(excitation(3, 2, 4), InvalidInput);
    CHECK_THROWS_AS(excitation(3, 2, -1), InvalidInput);
}

TEST_CASE("excitation norm at the top level matches the closed form") {
    for (int n = 2; n <= 6; ++n) {
        for (int d = 2; d <= 4; ++d) {
            const double want = std::sqrt(binom(n + d - 2, d - 1));
            CHECK(std::abs(norm(excitation(n, d, d - 1)) - want) <= 1e-12 * want);
        }
    }
}

TEST_CASE("unique_representative reproduces the table rows") {
    // blocks (2,1): |001> + |010> + |100> + |222>
    FullState f = sym_to_full(unique_representative(3, BlockLayout({2, 1})));
    for (auto idx : {ket({0, 0, 1}, 3), ket({0, 1, 0}, 3), ket({1, 0, 0}, 3), ket({2, 2, 2}, 3)}) {
        CHECK(std::abs(f.amps(idx) - 1.0) < 1e-14);
    }
    CHECK(std::abs(f.amps.norm() - 2.0) < 1e-13);

    // all blocks of size one: the GHZ state with unit amplitudes
    SymState g = unique_representative(3, BlockLayout({1, 1, 1}));
    CHECK((g.amps - ghz(3, 3, {1.0, 1.0, 1.0}).amps).norm() == 0.0);

    // a single block: the top excitation state
    SymState e = unique_representative(4, BlockLayout({3}));
    CHECK((e.amps - excitation(4, 3, 2).amps).norm() == 0.0);
}

TEST_CASE("multi_block_excitation matches the two-block display") {
    // blocks (2,2), one excitation shared between two singly-occupied blocks:
    // |03> + |12> + |30> + |21> in flat labels
    SymState s = multi_block_excitation(2, BlockLayout({2, 2}), 1, {1, 1});
    FullState f = sym_to_full(s);
    for (auto idx : {ket({0, 3}, 4), ket({1, 2}, 4), ket({3, 0}, 4), ket({2, 1}, 4)}) {
        CHECK(std::abs(f.amps(idx) - 1.0) < 1e-14);
    }
    CHECK(std::abs(f.amps.norm() - 2.0) < 1e-14);

    // single block reduces to the plain excitation state
    SymState single = multi_block_excitation(3, BlockLayout({3}), 2, {3});
    CHECK((single.amps - excitation(3, 3, 2).amps).norm() == 0.0);

    CHECK_THROWS_AS(multi_block_excitation(3, BlockLayout({2, 2}), 1, {1, 1}), InvalidInput);
    CHECK_THROWS_AS(multi_block_excitation(3, BlockLayout({2, 2}), 1, {4, -1}), InvalidInput);
}

TEST_CASE("multi_block_excitation at j = 0 is the symmetrized block ground state") {
    // brute-force expansion: two particles on level 0, one on level 2
    SymState s = multi_block_excitation(3, BlockLayout({2, 2}), 0, {2, 1});
    FullState f = sym_to_full(s);
    FullState want = full_zero(3, 4);
    want.amps(ket({0, 0, 2}, 4)) = 1.0;
    want.amps(ket({0, 2, 0}, 4)) = 1.0;
    want.amps(ket({2, 0, 0}, 4)) = 1.0;
    CHECK((f.amps - want.amps).norm() < 1e-14);
}

TEST_CASE("out-of-range excitation tuples are omitted") {
    // blocks (2,1): the size-1 block cannot hold any excitation, so j = 3
    // with all particles on the second block has no terms at all
    SymState s = multi_block_excitation(3, BlockLayout({2, 1}), 3, {0, 3});
    CHECK(norm(s) == 0.0);
    // but j=2 with weights (2,1) keeps the in-range terms only
    SymState t = multi_block_excitation(3, BlockLayout({2, 1}), 2, {2, 1});
    CHECK(norm(t) > 0.0);
    FullState ft = sym_to_full(t);
    // both block-1 particles excited to level 1, block-2 particle at level 2
    CHECK(std::abs(ft.amps(ket({1, 1, 2}, 3)) - 1.0) < 1e-14);
}

TEST_CASE("generated states are symmetric") {
    for (const SymState& s :
         {ghz(4, 3, {1.0, 2.0, cdouble(0, 1)}), excitation(4, 3, 2),
          unique_representative(3, BlockLayout({2, 2, 1})),
          multi_block_excitation(4, BlockLayout({2, 2}), 2, {2, 2})}) {
        CHECK(is_symmetric(sym_to_full(s), 1e-12));
    }
}

TEST_CASE("ladder identity: K lowers E_j to E_{j-1} with unit scaling") {
    for (int n = 2; n <= 6; ++n) {
        for (int d = 2; d <= 4; ++d) {
            const CMatrix k = block_shift(BlockLayout({d}));
            for (int j = 1; j <= d - 1; ++j) {
                FirstSiteState g = apply_site1_sym(excitation(n, d, j), k);
                CHECK(first_site_symmetric(g, 1e-12));
                SymState lowered = recombine(g);
                SymState want = excitation(n, d, j - 1);
                CHECK((lowered.amps - want.amps).norm() <= 1e-12 * norm(want));
            }
            // j = 0 is annihilated
            CHECK(norm(recombine(apply_site1_sym(excitation(n, d, 0), k))) < 1e-14);
        }
    }
}

TEST_CASE("unique representatives are stabilized by their Jordan matrix") {
    const std::vector<std::vector<int>> layouts{{2, 1}, {1, 1, 1}, {3}, {2, 2}, {3, 1}};
    for (const auto& sizes : layouts) {
        BlockLayout layout(sizes);
        std::vector<cdouble> eigs;
        for (int b = 0; b < layout.block_count(); ++b) {
            eigs.push_back(cdouble(1.0 + 0.5 * b, 0.25 * b));
        }
        const CMatrix j = jordan_matrix(layout, eigs);
        SymState s = unique_representative(3, layout);
        CHECK(first_site_symmetric(apply_site1_sym(s, j), 1e-10));

        // the stabilizer's structure is the layout with distinct eigenvalues
        JordanSignature sig = jordan_signature(j).signature;
        CHECK(sig.group_count() == layout.block_count());
        std::vector<int> got;
        for (const auto& g : sig.groups) {
            REQUIRE(g.size() == 1);
            got.push_back(g[0]);
        }
        std::vector<int> want = sizes;
        std::sort(want.rbegin(), want.rend());
        CHECK(got == want);
    }
}

TEST_CASE("ladder polynomial reaches every stabilized state from the top") {
    Rng rng(71);
    for (int k : {2, 3, 4}) {
        const int n = 3;
        std::vector<cdouble> alpha;
        for (int i = 0; i < k; ++i) alpha.push_back(rng.next_complex_gaussian());
        if (std::abs(alpha.back()) < 0.3) alpha.back() += 1.0;  // keep alpha_{k-1} away from 0
        const CMatrix t = ladder_polynomial(k, alpha);

        // determinant alpha_{k-1}^k
        cdouble want_det = 1.0;
        for (int i = 0; i < k; ++i) want_det *= alpha.back();
        CHECK(std::abs(t.determinant() - want_det) <= 1e-10 * std::abs(want_det));

        // T_(1) E_{k-1} = sum_j alpha_j E_j
        SymState top = excitation(n, k, k - 1);
        SymState mapped = recombine(apply_site1_sym(top, t));
        SymState want = sym_zero(n, k);
        for (int j2 = 0; j2 < k; ++j2) want.amps += alpha[static_cast<std::size_t>(j2)] * excitation(n, k, j2).amps;
        CHECK((mapped.amps - want.amps).norm() <= 1e-12 * norm(want));
    }
}

TEST_CASE("block layout validation") {
    CHECK_THROWS_AS(BlockLayout({1, 2}), InvalidInput);  // not descending
    CHECK_THROWS_AS(BlockLayout({0}), InvalidInput);
    CHECK_THROWS_AS(BlockLayout(std::vector<int>{}), InvalidInput);
    BlockLayout layout({3, 2, 2, 1});
    CHECK(layout.dim() == 8);
    CHECK(layout.offsets == std::vector<int>{0, 3, 5, 7});
    CHECK(layout.block_of_level(4) == 1);
    CHECK(layout.block_of_level(7) == 3);
}
