#include <doctest.h>

#include <random>

#include "pzeta/padic.hpp"

using namespace pzeta;

namespace {
PadicCtx& ctx5() {
    static PadicCtx c(5, 256);
    return c;
}
PadicCtx& ctx7() {
    static PadicCtx c(7, 256);
    return c;
}
}  // namespace

TEST_CASE("addition with carry: 2 + 3 = 5 over Z_5") {
    // (v=0, 2 mod 5^3) + (v=0, 3 mod 5^3) -> (v=1, 1 mod 5^2, precision 3)
    PadicApprox a = PadicApprox::from_parts(ctx5(), 0, BigNat(2), 3);
    PadicApprox b = PadicApprox::from_parts(ctx5(), 0, BigNat(3), 3);
    PadicApprox s = a + b;
    CHECK(s.valuation() == 1);
    CHECK(s.precision() == 3);
    CHECK(s.unit() == BigNat(1));
}

TEST_CASE("p * (1/p) = 1") {
    PadicApprox a = PadicApprox::from_parts(ctx5(), -1, BigNat(1), 3);
    PadicApprox b = PadicApprox::from_parts(ctx5(), 1, BigNat(1), 5);
    PadicApprox prod = a * b;
    CHECK(prod.valuation() == 0);
    CHECK(prod.unit() == BigNat(1));
    CHECK(prod.precision() == 4);
}

TEST_CASE("division by zero-to-precision raises") {
    PadicApprox a = PadicApprox::from_integer(ctx5(), BigInt(3));
    PadicApprox z = PadicApprox::zero_to_precision(ctx5(), 6);
    CHECK_THROWS_AS(a / z, InsufficientPrecision);
}

// exact-rational shadow: random expression trees evaluated both ways agree
// modulo the claimed precision
TEST_CASE("exact-shadow consistency over 1000 random expression trees") {
    std::mt19937_64 rng(20260808);
    const uint64_t p = 7;
    PadicCtx& ctx = ctx7();
    for (int iter = 0; iter < 1000; iter++) {
        std::vector<std::pair<PadicApprox, Rational>> pool;
        auto push_leaf = [&] {
            int64_t num = (int64_t)(rng() % 2001) - 1000;
            int64_t den = 1 + (int64_t)(rng() % 50);
            while (den % p == 0) den++;
            Rational r{BigInt(num), BigInt(den)};
            pool.emplace_back(PadicApprox::from_rational(ctx, r, 40), r);
        };
        for (int i = 0; i < 4; i++) push_leaf();
        for (int step = 0; step < 12; step++) {
            size_t i = rng() % pool.size(), j = rng() % pool.size();
            int op = (int)(rng() % 4);
            const auto& [pa, ra] = pool[i];
            const auto& [pb, rb] = pool[j];
            PadicApprox pc;
            Rational rc;
            if (op == 3 && (rb.is_zero() || pb.is_exact_zero() || pb.is_zero_to_precision()))
                op = 0;
            switch (op) {
                case 0: pc = pa + pb; rc = ra + rb; break;
                case 1: pc = pa - pb; rc = ra - rb; break;
                case 2: pc = pa * pb; rc = ra * rb; break;
                default: pc = pa / pb; rc = ra / rb; break;
            }
            pool.emplace_back(pc, rc);
        }
        for (auto& [pa, ra] : pool) {
            if (pa.is_exact_zero()) {
                CHECK(ra.is_zero());
                continue;
            }
            int64_t n = pa.precision();
            if (n <= 0) continue;
            PadicApprox shadow = PadicApprox::from_rational(ctx, ra, 64);
            CHECK(pa.same_value_to(shadow, n));
        }
    }
}

TEST_CASE("charpoly: identity and nilpotent") {
    PadicCtx& ctx = ctx5();
    PadicApprox one = PadicApprox::from_integer(ctx, BigInt(1));
    PadicApprox zero = PadicApprox::exact_zero(ctx);
    PadicMat id = PadicMat::identity(2, one);
    PadicPoly cp = charpoly_division_free(id);
    CHECK(cp[0].symmetric_lift(BigInt(10)) == BigInt(1));
    CHECK(cp[1].symmetric_lift(BigInt(10)) == BigInt(-2));
    CHECK(cp[2].symmetric_lift(BigInt(10)) == BigInt(1));

    PadicMat nil(2, 2, zero);
    nil.at(0, 1) = one;
    PadicPoly cp2 = charpoly_division_free(nil);
    CHECK(cp2.degree() == 2);
    CHECK(cp2[0].is_exact_zero());
    CHECK(cp2[1].is_exact_zero());
}

TEST_CASE("charpoly of a random 3x3 vs exact cofactor oracle") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 50; iter++) {
        int64_t e[3][3];
        for (auto& row : e)
            for (auto& x : row) x = (int64_t)(rng() % 41) - 20;
        PadicCtx& ctx = ctx7();
        PadicMat m(3, 3, PadicApprox::exact_zero(ctx));
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++)
                m.at((size_t)i, (size_t)j) = PadicApprox::from_integer(ctx, BigInt(e[i][j]), 60);
        PadicPoly cp = charpoly_division_free(m);
        auto det3 = [&](int64_t a[3][3]) {
            return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        };
        int64_t tr = e[0][0] + e[1][1] + e[2][2];
        int64_t c1 = e[0][0] * e[1][1] - e[0][1] * e[1][0] + e[0][0] * e[2][2] -
                     e[0][2] * e[2][0] + e[1][1] * e[2][2] - e[1][2] * e[2][1];
        int64_t dt = det3(e);
        BigInt bound(100000000);
        CHECK(cp[3].symmetric_lift(bound) == BigInt(1));
        CHECK(cp[2].symmetric_lift(bound) == BigInt(-tr));
        CHECK(cp[1].symmetric_lift(bound) == BigInt(c1));
        CHECK(cp[0].symmetric_lift(bound) == BigInt(-dt));
    }
}

TEST_CASE("block-diagonal charpoly is the product of block charpolys") {
    std::mt19937_64 rng(123);
    PadicCtx& ctx = ctx5();
    auto rnd = [&](size_t n) {
        PadicMat m(n, n, PadicApprox::exact_zero(ctx));
        for (size_t i = 0; i < n; i++)
            for (size_t j = 0; j < n; j++)
                m.at(i, j) = PadicApprox::from_integer(ctx, BigInt((int64_t)(rng() % 19) - 9), 50);
        return m;
    };
    PadicMat a = rnd(2), b = rnd(2);
    PadicMat blk(4, 4, PadicApprox::exact_zero(ctx));
    for (size_t i = 0; i < 2; i++)
        for (size_t j = 0; j < 2; j++) {
            blk.at(i, j) = a.at(i, j);
            blk.at(i + 2, j + 2) = b.at(i, j);
        }
    PadicPoly prod = charpoly_division_free(a) * charpoly_division_free(b);
    PadicPoly whole = charpoly_division_free(blk);
    for (size_t i = 0; i <= 4; i++) {
        PadicApprox x = whole.coeff_or(i, PadicApprox::exact_zero(ctx));
        PadicApprox y = prod.coeff_or(i, PadicApprox::exact_zero(ctx));
        CHECK(x.same_value_to(y, std::min(x.precision(), y.precision())));
    }
}

TEST_CASE("symmetric lift examples and round trip") {
    PadicCtx& ctx = ctx5();
    PadicApprox a = PadicApprox::from_parts(ctx, 0, BigNat(124), 3);
    CHECK(a.symmetric_lift(BigInt(10)) == BigInt(-1));
    PadicApprox b = PadicApprox::from_parts(ctx, 0, BigNat(2), 1);
    CHECK_THROWS_AS(b.symmetric_lift(BigInt(10)), LiftOutOfBounds);
    PadicCtx c17(17, 128);
    PadicApprox r1 = PadicApprox::from_integer(c17, BigInt(8), 18);
    CHECK(r1.symmetric_lift(BigInt(2 * 17 * 22)) == BigInt(8));
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 400; iter++) {
        int64_t z = (int64_t)(rng() % 2001) - 1000;
        PadicApprox x = PadicApprox::from_integer(ctx, BigInt(z), 12);
        CHECK(x.truncated_abs(6).symmetric_lift(BigInt(1000)) == BigInt(z));
    }
}

TEST_CASE("debug serialization shape") {
    PadicApprox a = PadicApprox::from_parts(ctx5(), -2, BigNat(3), 4);
    CHECK(a.debug_string() == "p^-2 * 3 mod 5^6");
}
