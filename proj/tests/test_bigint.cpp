#include <doctest.h>

#include "grassmod/bigint.hpp"
#include "grassmod/rational.hpp"
#include "grassmod/rng.hpp"

using namespace grassmod;

TEST_CASE("bigint small arithmetic matches int64") {
    SplitMix64 rng(11);
    for (int t = 0; t < 2000; ++t) {
        long long a = (long long)(rng.next() % 2000001) - 1000000;
        long long b = (long long)(rng.next() % 2000001) - 1000000;
        BigInt A(a), B(b);
        CHECK((A + B).to_string() == std::to_string(a + b));
        CHECK((A - B).to_string() == std::to_string(a - b));
        CHECK((A * B).to_string() == std::to_string(a * b));
        if (b != 0) {
            CHECK((A / B).to_string() == std::to_string(a / b));
            CHECK((A % B).to_string() == std::to_string(a % b));
        }
        CHECK((A < B) == (a < b));
    }
}

TEST_CASE("bigint divmod identity on wide operands") {
    SplitMix64 rng(12);
    auto random_big = [&](int limbs) {
        BigInt x(0);
        for (int i = 0; i < limbs; ++i) {
            x = x * BigInt::from_u64(0x100000000ull) + BigInt::from_u64(rng.next() & 0xFFFFFFFFull);
        }
        if (rng.next() & 1) x = -x;
        return x;
    };
    for (int t = 0; t < 400; ++t) {
        BigInt a = random_big(1 + int(rng.below(8)));
        BigInt b = random_big(1 + int(rng.below(5)));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        // remainder sign follows the dividend (trunc semantics)
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("bigint string round trip") {
    const char* cases[] = {"0",
                           "-1",
                           "123456789012345678901234567890",
                           "-99999999999999999999999999999999999999"};
    for (const char* s : cases) CHECK(BigInt::from_string(s).to_string() == s);
    CHECK(BigInt::from_string("+42").to_string() == "42");
    CHECK(BigInt::from_string("-0").to_string() == "0");
}

TEST_CASE("bigint gcd and pow") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(-18)).to_string() == "6");
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)).to_string() == "5");
    CHECK(BigInt::pow(BigInt(3), 20).to_string() == "3486784401");
    SplitMix64 rng(13);
    for (int t = 0; t < 200; ++t) {
        long long a = (long long)rng.below(100000), b = (long long)rng.below(100000);
        BigInt g = BigInt::gcd(BigInt(a), BigInt(b));
        if (a || b) {
            CHECK((BigInt(a) % g).is_zero());
            CHECK((BigInt(b) % g).is_zero());
        }
    }
}

TEST_CASE("bigint power-of-p detector") {
    CHECK(BigInt(1).abs_power_of(2) == 0u);
    CHECK(BigInt(-8).abs_power_of(2) == 3u);
    CHECK(BigInt::pow(BigInt(5), 13).abs_power_of(5) == 13u);
    CHECK(!BigInt(12).abs_power_of(2).has_value());
    CHECK(!BigInt(0).abs_power_of(3).has_value());
}

TEST_CASE("rational arithmetic stays reduced") {
    Rational a(BigInt(2), BigInt(4));
    CHECK(a.to_string() == "1/2");
    Rational b(BigInt(-6), BigInt(4));
    CHECK(b.to_string() == "-3/2");
    CHECK((a + b).to_string() == "-1");
    CHECK((a * b).to_string() == "-3/4");
    CHECK((a / b).to_string() == "-1/3");
    CHECK(Rational::from_string("-3/9").to_string() == "-1/3");

    SplitMix64 rng(14);
    for (int t = 0; t < 500; ++t) {
        long long n1 = (long long)(rng.next() % 201) - 100, d1 = 1 + (long long)rng.below(40);
        long long n2 = (long long)(rng.next() % 201) - 100, d2 = 1 + (long long)rng.below(40);
        Rational x{BigInt(n1), BigInt(d1)}, y{BigInt(n2), BigInt(d2)};
        // field axioms on samples
        CHECK((x + y) - y == x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
        CHECK(x * (y + Rational(1)) == x * y + x);
        CHECK(BigInt::gcd(x.num(), x.den()).is_one());
    }
}
