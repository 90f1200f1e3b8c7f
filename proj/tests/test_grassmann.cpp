#include <doctest.h>

#include <map>
#include <set>

#include "grassmod/grassmann.hpp"
#include "grassmod/rng.hpp"

using namespace grassmod;

namespace {

Mat<FiniteField> rows_of(const FiniteField& F, std::vector<std::vector<long long>> rows) {
    Mat<FiniteField> m(F, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = F.from_int(rows[i][j]);
    return m;
}

Subspace random_subspace(const FiniteField& F, std::uint32_t n, std::uint32_t r, SplitMix64& rng) {
    for (;;) {
        Mat<FiniteField> m(F, r, n);
        for (auto& x : m.a) x = std::uint32_t(rng.below(F.q()));
        auto s = canonicalize(F, n, m);
        if (s.r == r) return s;
    }
}

}  // namespace

TEST_CASE("enumeration counts match the Gaussian binomial") {
    CHECK(enumerate_grassmannian(finite_field(2), 2, 1).size() == 3);
    CHECK(enumerate_grassmannian(finite_field(2), 4, 2).size() == 35);
    CHECK(enumerate_grassmannian(finite_field(3), 4, 2).size() == 130);
    CHECK(enumerate_grassmannian(finite_field(2), 4, 0).size() == 1);
    CHECK(enumerate_grassmannian(finite_field(2), 4, 4).size() == 1);
    CHECK(gaussian_binomial(2, 9, 4).to_string() == "3309747");
}

TEST_CASE("enumeration (2,4,2) agrees with brute force over all 2x4 matrices") {
    const auto& F2 = finite_field(2);
    std::set<std::vector<std::uint32_t>> distinct;
    for (std::uint32_t bits = 0; bits < 256; ++bits) {
        Mat<FiniteField> m(F2, 2, 4);
        for (int k = 0; k < 8; ++k) m.a[k] = (bits >> k) & 1;
        auto s = canonicalize(F2, 4, m);
        if (s.r == 2) distinct.insert(s.basis);
    }
    CHECK(distinct.size() == 35);
    auto gi = enumerate_grassmannian(F2, 4, 2);
    std::set<std::vector<std::uint32_t>> enumerated;
    for (const auto& s : gi.table) enumerated.insert(s.basis);
    CHECK(enumerated == distinct);
}

TEST_CASE("enumeration caps") {
    CHECK_THROWS_AS(enumerate_grassmannian(finite_field(2), 9, 4), Error);
    Config tight;
    tight.max_grassmannian = 10;
    CHECK_THROWS_AS(enumerate_grassmannian(finite_field(2), 4, 2, tight), Error);
}

TEST_CASE("canonicalize named cases") {
    const auto& F2 = finite_field(2);
    auto s = canonicalize(F2, 2, rows_of(F2, {{1, 1}, {0, 0}}));
    CHECK(s.r == 1);
    CHECK(s.basis == std::vector<std::uint32_t>{1, 1});

    const auto& F3 = finite_field(3);
    auto t = canonicalize(F3, 2, rows_of(F3, {{2, 1}}));
    CHECK(t.basis == std::vector<std::uint32_t>{1, 2});

    auto u = canonicalize(F2, 3, rows_of(F2, {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}));
    CHECK(u.r == 2);
}

TEST_CASE("canonicalize is invariant under row shuffles and invertible mixing") {
    SplitMix64 rng(31);
    struct Case {
        std::uint32_t p, e, n, r;
    } cases[] = {{2, 1, 4, 2}, {3, 1, 3, 2}, {2, 2, 3, 1}};
    for (auto [p, e, n, r] : cases) {
        const auto& F = finite_field(p, e);
        for (int t = 0; t < 1000; ++t) {
            auto s = random_subspace(F, n, r, rng);
            Mat<FiniteField> g(F, r, r);
            do {
                for (auto& x : g.a) x = std::uint32_t(rng.below(F.q()));
            } while (!is_invertible(g));
            auto mixed = g * s.as_matrix();
            CHECK(canonicalize(F, n, mixed) == s);
        }
    }
}

TEST_CASE("action basics: identity and a transvection on the projective line") {
    const auto& F2 = finite_field(2);
    auto gi = enumerate_grassmannian(F2, 2, 1);
    auto id = GroupElement::make(Mat<FiniteField>::identity(F2, 2));
    for (const auto& L : gi.table) CHECK(act(id, L) == L);

    auto t = GroupElement::make(rows_of(F2, {{1, 1}, {0, 1}}));
    auto perm = action_permutation(gi, t);
    std::size_t fixed = 0, moved = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) (perm[i] == i ? fixed : moved)++;
    CHECK(fixed == 1);  // the axis
    CHECK(moved == 2);  // a 2-cycle
    CHECK(perm[perm[0]] == 0);
    CHECK(perm[perm[1]] == 1);
    CHECK(perm[perm[2]] == 2);
}

TEST_CASE("g and g^{-1} compose to the identity permutation on Gr(2, F_2^4)") {
    const auto& F2 = finite_field(2);
    auto gi = enumerate_grassmannian(F2, 4, 2);
    auto g = GroupElement::make(rows_of(F2, {{1, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}));
    auto gperm = action_permutation(gi, g);
    auto hperm = action_permutation(gi, g.inverse_element());
    std::set<std::uint32_t> image;
    for (std::size_t i = 0; i < gi.size(); ++i) {
        CHECK(hperm[gperm[i]] == i);
        image.insert(gperm[i]);
    }
    CHECK(image.size() == gi.size());  // bijection
}

TEST_CASE("generator sets certified by closure") {
    const auto& F2 = finite_field(2);
    CHECK(gl_generators(F2, 2).size() == 2);  // transvections only for q=2
    CHECK(group_closure_size(F2, 2, gl_generators(F2, 2)) == 6);

    const auto& F3 = finite_field(3);
    CHECK(gl_generators(F3, 2).size() == 3);  // diag + 2 transvections
    CHECK(group_closure_size(F3, 2, gl_generators(F3, 2)) == 48);

    CHECK(gl_generators(F2, 1).empty());
    CHECK(group_closure_size(F2, 1, gl_generators(F2, 1)) == 1);

    CHECK(group_closure_size(F2, 3, gl_generators(F2, 3)) == 168);
    const auto& F4 = finite_field(2, 2);
    CHECK(group_closure_size(F4, 2, gl_generators(F4, 2)) == 180);
    const auto& F5 = finite_field(5);
    CHECK(group_closure_size(F5, 2, gl_generators(F5, 2)) == 480);
}

TEST_CASE("pair invariants") {
    const auto& F2 = finite_field(2);
    auto gi = enumerate_grassmannian(F2, 4, 2);
    auto L = gi.table[0];
    CHECK(pair_orbit_invariant(L, L) == PairInvariant{2, 0, 0});

    auto li = enumerate_grassmannian(F2, 2, 1);
    CHECK(pair_orbit_invariant(li.table[0], li.table[1]) == PairInvariant{0, 1, 1});

    auto A = canonicalize(F2, 4, rows_of(F2, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
    auto B = canonicalize(F2, 4, rows_of(F2, {{1, 0, 0, 0}, {0, 0, 1, 0}}));
    auto C = canonicalize(F2, 4, rows_of(F2, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
    CHECK(pair_orbit_invariant(A, B) == PairInvariant{1, 1, 1});
    CHECK(pair_orbit_invariant(A, C) == PairInvariant{0, 2, 2});
}

TEST_CASE("pair invariant is constant on G-orbits") {
    SplitMix64 rng(33);
    const auto& F3 = finite_field(3);
    auto gens = gl_generators(F3, 3);
    for (int t = 0; t < 200; ++t) {
        auto L = random_subspace(F3, 3, 1 + std::uint32_t(rng.below(2)), rng);
        auto M = random_subspace(F3, 3, 1 + std::uint32_t(rng.below(2)), rng);
        auto inv = pair_orbit_invariant(L, M);
        GroupElement g = gens[rng.below(gens.size())] * gens[rng.below(gens.size())];
        CHECK(pair_orbit_invariant(act(g, L), act(g, M)) == inv);
    }
}

TEST_CASE("invariant classes coincide with explicit pair orbits on small cases") {
    struct Case {
        std::uint32_t p, n, r;
    } cases[] = {{2, 3, 1}, {2, 4, 2}, {3, 3, 1}};
    for (auto [p, n, r] : cases) {
        const auto& F = finite_field(p);
        auto gi = enumerate_grassmannian(F, n, r);
        auto gens = gl_generators(F, n);
        std::vector<std::vector<std::uint32_t>> perms;
        for (const auto& g : gens) perms.push_back(action_permutation(gi, g));

        std::size_t N = gi.size();
        std::vector<int> orbit(N * N, -1);
        int next_orbit = 0;
        for (std::size_t seed = 0; seed < N * N; ++seed) {
            if (orbit[seed] != -1) continue;
            std::vector<std::size_t> stack{seed};
            orbit[seed] = next_orbit;
            while (!stack.empty()) {
                std::size_t cur = stack.back();
                stack.pop_back();
                std::size_t i = cur / N, j = cur % N;
                for (const auto& perm : perms) {
                    std::size_t to = std::size_t(perm[i]) * N + perm[j];
                    if (orbit[to] == -1) {
                        orbit[to] = next_orbit;
                        stack.push_back(to);
                    }
                }
            }
            ++next_orbit;
        }
        std::map<int, std::set<std::uint32_t>> orbit_to_s;
        std::map<std::uint32_t, std::set<int>> s_to_orbit;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                auto inv = pair_orbit_invariant(gi.table[i], gi.table[j]);
                orbit_to_s[orbit[i * N + j]].insert(inv.s);
                s_to_orbit[inv.s].insert(orbit[i * N + j]);
            }
        for (auto& [o, ss] : orbit_to_s) CHECK(ss.size() == 1);
        for (auto& [s, os] : s_to_orbit) CHECK(os.size() == 1);
    }
}

TEST_CASE("chain_between: endpoints, degenerate cases, adjacency of steps") {
    const auto& F2 = finite_field(2);
    auto A = canonicalize(F2, 4, rows_of(F2, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
    auto B = canonicalize(F2, 4, rows_of(F2, {{1, 0, 0, 0}, {0, 0, 1, 0}}));
    auto C = canonicalize(F2, 4, rows_of(F2, {{0, 0, 1, 0}, {0, 0, 0, 1}}));

    CHECK(chain_between(A, A) == std::vector<Subspace>{A});
    auto adj = chain_between(A, B);
    CHECK(adj.size() == 2);
    CHECK(adj[0] == A);
    CHECK(adj[1] == B);

    auto ch = chain_between(A, C);
    CHECK(ch.size() == 3);
    CHECK(ch.front() == A);
    CHECK(ch.back() == C);
    for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
        CHECK(pair_orbit_invariant(ch[i], ch[i + 1]) == PairInvariant{1, 1, 1});
    }

    auto line = canonicalize(F2, 4, rows_of(F2, {{1, 0, 0, 0}}));
    CHECK_THROWS_AS(chain_between(A, line), Error);
}

TEST_CASE("chain_between on seeded random pairs") {
    SplitMix64 rng(34);
    struct Case {
        std::uint32_t p, e, n, r;
    } cases[] = {{2, 1, 4, 2}, {3, 1, 4, 2}, {2, 2, 3, 1}};
    for (auto [p, e, n, r] : cases) {
        const auto& F = finite_field(p, e);
        for (int t = 0; t < 50; ++t) {
            auto L0 = random_subspace(F, n, r, rng);
            auto L1 = random_subspace(F, n, r, rng);
            auto ch = chain_between(L0, L1);
            CHECK(ch.size() == std::size_t(r - intersection_dim(L0, L1)) + 1);
            CHECK(ch.front() == L0);
            CHECK(ch.back() == L1);
            for (std::size_t i = 0; i + 1 < ch.size(); ++i)
                CHECK(pair_orbit_invariant(ch[i], ch[i + 1]) == PairInvariant{r - 1, 1, 1});
        }
    }
}
