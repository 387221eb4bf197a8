#include <doctest.h>

#include <random>

#include "pzeta/bignum.hpp"
#include "pzeta/rational.hpp"

using namespace pzeta;

TEST_CASE("bignat decimal round trip") {
    const char* cases[] = {"0", "1", "18446744073709551615", "18446744073709551616",
                           "340282366920938463463374607431768211456",
                           "123456789012345678901234567890123456789012345678901234567890"};
    for (auto* s : cases) CHECK(BigNat::from_decimal(s).to_decimal() == s);
}

TEST_CASE("bignat divmod agrees with reconstruction") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 2000; iter++) {
        int la = 1 + (int)(rng() % 6), lb = 1 + (int)(rng() % 4);
        BigNat a(0), b(0);
        for (int i = 0; i < la; i++) a = a.shl_bits(64) + BigNat(rng());
        for (int i = 0; i < lb; i++) b = b.shl_bits(64) + BigNat(rng());
        if (b.is_zero()) b = BigNat(1);
        BigNat q, r;
        BigNat::divmod(a, b, q, r);
        CHECK(r < b);
        CHECK(q * b + r == a);
    }
}

TEST_CASE("bignat small cross-check against unsigned 128") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 2000; iter++) {
        uint64_t a = rng() >> (rng() % 40), b = (rng() >> (rng() % 50)) | 1;
        unsigned __int128 prod = (unsigned __int128)a * b;
        BigNat bp = BigNat(a) * BigNat(b);
        BigNat expect = BigNat(a).shl_bits(0);
        BigNat hi((uint64_t)(prod >> 64)), lo((uint64_t)prod);
        CHECK(bp == hi.shl_bits(64) + lo);
        BigNat q, r;
        BigNat::divmod(BigNat(a), BigNat(b), q, r);
        CHECK(q.to_u64() == a / b);
        CHECK(r.to_u64() == a % b);
    }
}

TEST_CASE("bigint arithmetic and gcd") {
    BigInt a = BigInt::from_decimal("-123456789123456789123456789");
    BigInt b = BigInt::from_decimal("987654321987654321");
    CHECK((a + b - b) == a);
    CHECK((a * b).to_decimal() == (b * a).to_decimal());
    BigInt g = BigInt::gcd(BigInt(462), BigInt(1071));
    CHECK(g == BigInt(21));
    CHECK(BigInt::binomial(24, 12).to_decimal() == "2704156");
    CHECK(BigInt::factorial(10) == BigInt(3628800));
}

TEST_CASE("euclidean mod and ord_p") {
    CHECK(BigInt::mod_euclid(BigInt(-7), BigInt(5)) == BigInt(3));
    CHECK(ord_p(BigInt(250), 5) == 3);
    CHECK(ord_p(BigInt(7), 5) == 0);
    CHECK(ilog_floor(BigNat(124), 5) == 2);
    CHECK(ilog_floor(BigNat(125), 5) == 3);
    CHECK(ilog_ceil(BigNat(126), 5) == 4);
    CHECK(ilog_ceil(BigNat(125), 5) == 3);
}

TEST_CASE("rational normalization and floor") {
    Rational r(BigInt(6), BigInt(-4));
    CHECK(r.num() == BigInt(-3));
    CHECK(r.den() == BigInt(2));
    CHECK(r.floor() == BigInt(-2));
    CHECK((r * r).num() == BigInt(9));
    CHECK(Rational(7, 2).ceil() == BigInt(4));
}

TEST_CASE("miller rabin") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(17));
    CHECK(is_prime_u64(1000000007ull));
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(561));  // Carmichael
    CHECK(miller_rabin_probable_prime(BigNat::from_decimal("170141183460469231731687303715884105727")));
}
