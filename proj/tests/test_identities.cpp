#include <doctest.h>

#include "grassmod/identities.hpp"
#include "grassmod/rng.hpp"

using namespace grassmod;

namespace {

Config no_cache() {
    Config c;
    c.cache_dir.clear();
    return c;
}

Subspace plane(const FiniteField& F, std::uint32_t n, std::vector<std::vector<long long>> rows) {
    Mat<FiniteField> m(F, rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::uint32_t j = 0; j < n; ++j) m.at(i, j) = F.from_int(rows[i][j]);
    return canonicalize(F, n, m);
}

}  // namespace

TEST_CASE("alternating binomial subsums") {
    CHECK(d_coefficient(2, 1, 1).to_string() == "-1");
    CHECK(d_coefficient(3, 1, 2).to_string() == "-2");
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
        for (std::uint32_t N = 1; N <= 30; ++N) {
            BigInt total(0);
            for (std::uint32_t s = 0; s < p; ++s) total += d_coefficient(p, s, N);
            CHECK(total.is_zero());
            // Pascal-type recursion D_s(N+1) = D_s(N) - D_{s-1 mod p}(N)
            for (std::uint32_t s = 0; s < p; ++s) {
                BigInt lhs = d_coefficient(p, s, N + 1);
                BigInt rhs = d_coefficient(p, s, N) - d_coefficient(p, (s + p - 1) % p, N);
                CHECK(lhs == rhs);
            }
        }
    }
    CHECK_THROWS_AS(d_coefficient(4, 1, 3), Error);
}

TEST_CASE("delta determinants are signed powers of p") {
    auto r1 = delta_check(2, 1);
    CHECK(r1.det.to_string() == "-1");
    CHECK(r1.is_pm_power_of_p);
    CHECK(r1.m == 0);
    for (std::uint32_t N = 1; N <= 12; ++N) {
        auto r = delta_check(2, N);
        CHECK(r.is_pm_power_of_p);
        CHECK(r.m == N - 1);  // |D_1(N)| = 2^{N-1}
    }
    CHECK(delta_check(3, 1).is_pm_power_of_p);
    CHECK(delta_check(5, 4).is_pm_power_of_p);
}

TEST_CASE("rank one perturbations of the identity") {
    const auto& F5 = finite_field(5);

    // lam = 0: the map is the identity for every t
    auto r0 = rank_one_invertibility(F5, 3, {0, 0, 0}, {1, 2, 3});
    CHECK(r0.count_noninvertible == 0);
    CHECK(r0.inverses_verified);

    // lam(w) != 0: exactly one singular t
    auto r1 = rank_one_invertibility(F5, 3, {1, 0, 0}, {2, 1, 0});
    CHECK(r1.count_noninvertible == 1);
    CHECK(r1.inverses_verified);

    // lam != 0 with lam(w) = 0: always invertible
    auto r2 = rank_one_invertibility(F5, 3, {1, 0, 0}, {0, 1, 1});
    CHECK(r2.count_noninvertible == 0);
    CHECK(r2.inverses_verified);
}

TEST_CASE("exhaustive rank-one sweeps stay within one bad value") {
    for (std::uint32_t q : {2u, 3u}) {
        const auto& F = finite_field(q);
        for (std::uint32_t n : {1u, 2u}) {
            std::vector<std::uint32_t> lam(n), w(n);
            std::uint64_t total = 1;
            for (std::uint32_t i = 0; i < 2 * n; ++i) total *= q;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::uint64_t t = code;
                for (std::uint32_t i = 0; i < n; ++i) {
                    lam[i] = t % q;
                    t /= q;
                }
                for (std::uint32_t i = 0; i < n; ++i) {
                    w[i] = t % q;
                    t /= q;
                }
                auto r = rank_one_invertibility(F, n, lam, w);
                CHECK(r.count_noninvertible <= 1);
                CHECK(r.inverses_verified);
            }
        }
    }
}

TEST_CASE("gamma: base cases and collision collapse") {
    auto cfg = no_cache();
    const RationalField& Q = rational_field();
    const auto& F2 = finite_field(2);

    GammaSpec spec;
    spec.F = &F2;
    spec.n = 3;
    spec.r = 1;
    spec.U = zero_subspace(F2, 3);
    spec.e0 = {1, 0, 0};
    spec.e1 = {0, 1, 0};
    spec.ts = {1, 1};

    const auto& gi = grassmann_index(F2, 3, 1, cfg);
    auto g0 = gamma(Q, spec, 0);
    CHECK(g0.support_size() == 1);
    CHECK(g0.coeffs[gi.index_of(spec.member(0))] == Rational(1));

    auto g1 = gamma(Q, spec, 1);
    CHECK(g1.support_size() == 2);
    CHECK(augmentation(g1) == Rational(0));
    // the two support members are adjacent (both contain U)
    auto inv = pair_orbit_invariant(spec.member(0), spec.member(1));
    CHECK(inv == PairInvariant{0, 1, 1});

    // q = 2, t = (1,1), m = 2: subset sums collide and coefficients stack
    auto g2 = gamma(Q, spec, 2);
    CHECK(g2.coeffs[gi.index_of(spec.member(0))] == Rational(2));
    CHECK(g2.coeffs[gi.index_of(spec.member(1))] == Rational(-2));
    // ... and vanish entirely in characteristic 2
    auto g2f = gamma(F2, spec, 2);
    CHECK(g2f.is_zero());
}

TEST_CASE("gamma at depth one generates the whole degree-zero submodule") {
    auto cfg = no_cache();
    const RationalField& Q = rational_field();
    const auto& F3 = finite_field(3);
    GammaSpec spec;
    spec.F = &F3;
    spec.n = 3;
    spec.r = 2;
    spec.U = plane(F3, 3, {{0, 0, 1}});
    spec.e0 = {1, 0, 0};
    spec.e1 = {0, 1, 0};
    spec.ts = {2};
    auto seed = gamma(Q, spec, 1, cfg);
    auto gens = gl_generators(F3, 3);
    auto sub = spin_one(seed, gens, cfg);
    const auto& gi = grassmann_index(F3, 3, 2, cfg);
    CHECK(sub.dim() == gi.size() - 1);
    CHECK(sub.basis == augmentation_kernel(Q, gi).basis);
}

TEST_CASE("GammaSpec validation") {
    const auto& F2 = finite_field(2);
    GammaSpec bad;
    bad.F = &F2;
    bad.n = 3;
    bad.r = 1;
    bad.U = zero_subspace(F2, 3);
    bad.e0 = {1, 0, 0};
    bad.e1 = {1, 0, 0};  // dependent
    bad.ts = {1};
    const RationalField& Q = rational_field();
    CHECK_THROWS_AS(gamma(Q, bad, 1), Error);
}

TEST_CASE("gamma recursion via the canonical transvection") {
    auto cfg = no_cache();
    const RationalField& Q = rational_field();

    const auto& F3 = finite_field(3);
    GammaSpec spec;
    spec.F = &F3;
    spec.n = 3;
    spec.r = 1;
    spec.U = zero_subspace(F3, 3);
    spec.e0 = {1, 0, 0};
    spec.e1 = {0, 1, 0};
    spec.ts = {1, 2};
    CHECK(gamma_recursion_check(Q, spec, 0, nullptr, cfg));
    CHECK(gamma_recursion_check(Q, spec, 1, nullptr, cfg));

    // a plane-pencil case, r = 2
    const auto& F2 = finite_field(2);
    GammaSpec spec2;
    spec2.F = &F2;
    spec2.n = 4;
    spec2.r = 2;
    spec2.U = plane(F2, 4, {{0, 0, 0, 1}});
    spec2.e0 = {1, 0, 0, 0};
    spec2.e1 = {0, 1, 0, 0};
    spec2.ts = {1, 1};
    CHECK(gamma_recursion_check(Q, spec2, 0, nullptr, cfg));
    CHECK(gamma_recursion_check(Q, spec2, 1, nullptr, cfg));

    // negative control: an element moving e1 fails the recursion
    Mat<FiniteField> wrong(F3, 3, 3);
    wrong.at(0, 0) = 1;
    wrong.at(0, 1) = 2;  // e0 -> e0 + t e1 with t = ts[1]
    wrong.at(1, 1) = 2;  // but e1 -> 2 e1
    wrong.at(2, 2) = 1;
    auto bad_xi = GroupElement::make(std::move(wrong));
    CHECK(!gamma_recursion_check(Q, spec, 1, &bad_xi, cfg));
}

TEST_CASE("xi build: single obstacle is a pairing off") {
    auto cfg = no_cache();
    const RationalField& Q = rational_field();
    const auto& F3 = finite_field(3);

    XiInput<RationalField> in;
    in.K = &Q;
    in.Fq = &F3;
    in.n = 2;
    in.r = 1;
    in.L = {plane(F3, 2, {{1, 0}}), plane(F3, 2, {{0, 1}})};
    in.a = {Rational(1), Rational(-1)};

    auto built = xi_build(in, cfg);
    REQUIRE(built.status == XiStatus::Ok);
    CHECK(built.xi.size() == 2);  // [1] - [1 + xi_1]
    CHECK(built.annihilated);
    CHECK(built.image_support_ok);
    CHECK(xi_r1_reduction_check(in, built, cfg));
}

TEST_CASE("xi build reports covered configurations") {
    auto cfg = no_cache();
    const RationalField& Q = rational_field();
    const auto& F2 = finite_field(2);

    // three planes of F_2^3 cut L_0 in its three lines, covering it
    XiInput<RationalField> in;
    in.K = &Q;
    in.Fq = &F2;
    in.n = 3;
    in.r = 2;
    in.L = {plane(F2, 3, {{1, 0, 0}, {0, 1, 0}}), plane(F2, 3, {{1, 0, 0}, {0, 0, 1}}),
            plane(F2, 3, {{0, 1, 0}, {0, 0, 1}}), plane(F2, 3, {{1, 1, 0}, {0, 0, 1}})};
    in.a = {Rational(1), Rational(-1), Rational(1), Rational(-1)};

    auto built = xi_build(in, cfg);
    CHECK(built.status == XiStatus::NoUncoveredVector);
}

TEST_CASE("xi build on seeded inputs over larger fields") {
    auto cfg = no_cache();
    const RationalField& Q = rational_field();
    SplitMix64 rng(41);
    for (std::uint32_t q : {4u, 5u}) {
        const auto& F = q == 4 ? finite_field(2, 2) : finite_field(5);
        const auto& gi = grassmann_index(F, 3, 1, cfg);
        for (int trial = 0; trial < 6; ++trial) {
            std::set<std::size_t> picks;
            while (picks.size() < 4) picks.insert(rng.below(gi.size()));
            XiInput<RationalField> in;
            in.K = &Q;
            in.Fq = &F;
            in.n = 3;
            in.r = 1;
            for (auto i : picks) in.L.push_back(gi.table[i]);
            in.a = {Rational(2), Rational(-1), Rational(3), Rational(-4)};
            auto built = xi_build(in, cfg);
            if (built.status != XiStatus::Ok) continue;
            CHECK(built.annihilated);
            CHECK(built.image_support_ok);
            CHECK(xi_r1_reduction_check(in, built, cfg));
        }
    }
}

TEST_CASE("beta power identity") {
    auto cfg = no_cache();
    const auto& F2 = finite_field(2);
    const auto& gi2 = grassmann_index(F2, 2, 1, cfg);

    // p = q = 2: alpha = [x1] + [x2], any origin other than x1
    std::vector<std::uint32_t> ones2{1, 1};
    for (std::size_t origin = 0; origin < 3; ++origin) {
        if (origin == 0) continue;
        CHECK(beta_power_identity(F2, F2, {0, 1}, {ones2[0], ones2[1]}, origin, cfg));
    }

    // p = 3: seeded coefficient patterns with zero sum
    const auto& F3 = finite_field(3);
    const auto& gi3 = grassmann_index(F3, 2, 1, cfg);
    SplitMix64 rng(42);
    for (int t = 0; t < 40; ++t) {
        std::size_t n_pts = 2 + rng.below(3);
        std::set<std::size_t> picks;
        while (picks.size() < n_pts) picks.insert(rng.below(gi3.size()));
        std::vector<std::size_t> pts(picks.begin(), picks.end());
        std::vector<std::uint32_t> a(n_pts);
        std::uint32_t sum = 0;
        for (std::size_t i = 0; i + 1 < n_pts; ++i) {
            a[i] = 1 + std::uint32_t(rng.below(2));
            sum = F3.add(sum, a[i]);
        }
        a[n_pts - 1] = F3.neg(sum);
        if (a[n_pts - 1] == 0 || a[0] == 0) continue;
        std::size_t origin = pts[0];
        while (origin == pts[0]) origin = rng.below(gi3.size());
        CHECK(beta_power_identity(F3, F3, pts, a, origin, cfg));
    }

    // q = 4 over K = F_4 (characteristic 2)
    const auto& F4 = finite_field(2, 2);
    const auto& gi4 = grassmann_index(F4, 2, 1, cfg);
    std::vector<std::size_t> pts{0, 1, 2};
    std::vector<std::uint32_t> a{1, 2, F4.neg(F4.add(1, 2))};
    CHECK(beta_power_identity(F4, F4, pts, a, 4, cfg));
    (void)gi2;
    (void)gi4;

    // precondition screens
    CHECK_THROWS_AS(beta_power_identity(F2, F2, {0, 1}, {std::uint32_t(1), 1u}, 0, cfg), Error);
    CHECK_THROWS_AS(beta_power_identity(F2, F2, {0, 0}, {std::uint32_t(1), 1u}, 2, cfg), Error);
    CHECK_THROWS_AS(beta_power_identity(F2, F2, {0, 1}, {std::uint32_t(1), 0u}, 2, cfg), Error);
}

TEST_CASE("translation sums over an affine complement") {
    auto cfg = no_cache();
    const auto& F3 = finite_field(3);
    const auto& gi = grassmann_index(F3, 3, 1, cfg);
    auto H = plane(F3, 3, {{1, 0, 0}, {0, 1, 0}});

    // single off-H point: the orbit sum of the affine part
    {
        const auto& F7 = finite_field(7);
        std::size_t off_idx = gi.size();
        for (std::size_t i = 0; i < gi.size(); ++i) {
            std::vector<std::uint32_t> lift{gi.table[i].at(0, 0), gi.table[i].at(0, 1),
                                            gi.table[i].at(0, 2)};
            if (!H.contains(lift)) {
                off_idx = i;
                break;
            }
        }
        REQUIRE(off_idx < gi.size());
        auto alpha = ModuleVector<FiniteField>::unit(F7, gi, off_idx);
        CHECK(translation_sum_identity(F7, F3, 3, H, alpha, cfg));
    }

    // single on-H point over Q: scaled by q^{dim P(V)}
    {
        const RationalField& Q = rational_field();
        std::size_t on_idx = gi.size();
        for (std::size_t i = 0; i < gi.size(); ++i) {
            std::vector<std::uint32_t> lift{gi.table[i].at(0, 0), gi.table[i].at(0, 1),
                                            gi.table[i].at(0, 2)};
            if (H.contains(lift)) {
                on_idx = i;
                break;
            }
        }
        auto alpha = ModuleVector<RationalField>::unit(Q, gi, on_idx);
        CHECK(translation_sum_identity(Q, F3, 3, H, alpha, cfg));
    }

    // characteristic kill: char K = char F makes the H part vanish
    {
        auto alpha = ModuleVector<FiniteField>(F3, gi);
        SplitMix64 rng(43);
        for (auto& c : alpha.coeffs) c = std::uint32_t(rng.below(3));
        CHECK(translation_sum_identity(F3, F3, 3, H, alpha, cfg));
    }

    // random alphas over several coefficient fields
    {
        SplitMix64 rng(44);
        const auto& F5 = finite_field(5);
        for (int t = 0; t < 25; ++t) {
            auto alpha = ModuleVector<FiniteField>(F5, gi);
            for (auto& c : alpha.coeffs) c = std::uint32_t(rng.below(5));
            CHECK(translation_sum_identity(F5, F3, 3, H, alpha, cfg));
        }
    }
}

TEST_CASE("symmetric power factorization: injective exactly in dimension two") {
    auto cfg = no_cache();
    const auto& F2 = finite_field(2);
    const auto& F3 = finite_field(3);

    auto r22 = sym_power_factor(F2, F2, 2, cfg);
    CHECK(r22.domain_dim == 2);
    CHECK(r22.codomain_dim == 2);
    CHECK(r22.injective);

    auto r32 = sym_power_factor(F3, F3, 2, cfg);
    CHECK(r32.domain_dim == 3);
    CHECK(r32.codomain_dim == 3);
    CHECK(r32.injective);

    auto r23 = sym_power_factor(F2, F2, 3, cfg);
    CHECK(r23.domain_dim == 6);
    CHECK(r23.codomain_dim == 3);
    CHECK(!r23.injective);

    // the kernel vector generates a proper nonzero submodule
    auto witness = sym_power_kernel_vector(F2, F2, 3, r23, cfg);
    CHECK(!witness.is_zero());
    CHECK(augmentation(witness) == 0);
    auto gens = gl_generators(F2, 3);
    auto sub = spin_one(witness, gens, cfg);
    CHECK(sub.dim() > 0);
    CHECK(sub.dim() < 6);  // proper inside the degree-zero submodule

    // K strictly larger than F_q
    const auto& F4 = finite_field(2, 2);
    auto r22e = sym_power_factor(F4, F2, 2, cfg);
    CHECK(r22e.injective);
}
