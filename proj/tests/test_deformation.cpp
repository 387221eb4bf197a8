#include <doctest.h>

#include <random>

#include "pzeta/deformation.hpp"
#include "pzeta/pencil.hpp"

using namespace pzeta;

namespace {

Mat<QPoly> zero_b(size_t m) { return Mat<QPoly>(m, m, QPoly()); }

QPoly monic_r(std::initializer_list<int64_t> coeffs) { return qpoly_from_int_coeffs(coeffs); }

ConnectionData toy_connection(uint64_t p) {
    SurfaceInput s =
        make_surface_input(p, {{BigInt(1), 3, 0}, {BigInt(1), 1, 1}, {BigInt(1), 0, 0}});
    return connection_matrix(s);
}

}  // namespace

TEST_CASE("zero connection has the identity as fundamental solution") {
    PadicCtx ctx(7, 128);
    LocalSeriesMatrix c =
        local_fundamental_solution(zero_b(2), monic_r({-1, 0, 1}), ctx, 12, 8, SolutionSide::left);
    for (size_t l = 1; l < c.coeff.size(); l++)
        for (size_t i = 0; i < 2; i++)
            for (size_t j = 0; j < 2; j++) {
                const PadicApprox& e = c.coeff[l].at(i, j);
                CHECK((e.is_exact_zero() || e.is_zero_to_precision()));
            }
}

TEST_CASE("rank-one binomial solution: B = c/(1 - Gamma)") {
    // b = [-c], r = Gamma - 1 gives C = (1 - Gamma)^c with signed binomial
    // coefficients
    PadicCtx ctx(5, 128);
    for (int64_t c : {3, -2}) {
        Mat<QPoly> b(1, 1, QPoly::constant(Rational(-c)));
        LocalSeriesMatrix sol =
            local_fundamental_solution(b, monic_r({-1, 1}), ctx, 10, 12, SolutionSide::left);
        for (int64_t l = 0; l < 10; l++) {
            // binom(c, l) (-1)^l
            Rational expect(1);
            for (int64_t i = 0; i < l; i++)
                expect *= Rational(BigInt(c - i), BigInt(i + 1));
            if (l % 2) expect = -expect;
            PadicApprox shadow = PadicApprox::from_rational(ctx, expect, 20);
            CHECK(sol.coeff[(size_t)l].at(0, 0).same_value_to(shadow, 12));
        }
    }
}

TEST_CASE("left and dual solutions multiply to the identity") {
    PadicCtx ctx(7, 160);
    ConnectionData conn = toy_connection(7);
    const int64_t ng = 30, n1 = 10;
    LocalSeriesMatrix c =
        local_fundamental_solution(conn.b, conn.r, ctx, ng, n1, SolutionSide::left);
    LocalSeriesMatrix cd =
        local_fundamental_solution(conn.b, conn.r, ctx, ng, n1, SolutionSide::dual);
    // alpha' = 2 B_{2,7} + 1 = 3; allowed loss 2 alpha' floor(log_7 30) = 6
    const int64_t tol = n1 - 6;
    for (int64_t l = 0; l < ng; l++) {
        PadicMat acc(2, 2, PadicApprox::exact_zero(ctx));
        for (int64_t i = 0; i <= l; i++) acc = acc + c.coeff[(size_t)i] * cd.coeff[(size_t)(l - i)];
        for (size_t i = 0; i < 2; i++)
            for (size_t j = 0; j < 2; j++) {
                PadicApprox want = (i == j && l == 0)
                                       ? PadicApprox::from_integer(ctx, BigInt(1))
                                       : PadicApprox::exact_zero(ctx);
                CHECK(acc.at(i, j).same_value_to(want, tol));
            }
    }
}

TEST_CASE("truncation error respects the ODE loss bound (exact shadow, m = 2)") {
    // acceptance: ord_p(D_l - C_l) >= N1 - (2 B + 1) floor(log_p(l + 1))
    const uint64_t p = 5;
    PadicCtx ctx(p, 128);
    ConnectionData conn = toy_connection(p);
    const int64_t ng = 200, n1 = 9;
    LocalSeriesMatrix d =
        local_fundamental_solution(conn.b, conn.r, ctx, ng, n1, SolutionSide::left);
    // independent exact recurrence over Q
    const size_t m = 2;
    std::vector<Mat<Rational>> bk;
    int64_t degb = -1;
    for (size_t i = 0; i < m; i++)
        for (size_t j = 0; j < m; j++) degb = std::max(degb, conn.b.at(i, j).degree());
    for (int64_t k = 0; k <= degb; k++) {
        Mat<Rational> mk(m, m, Rational(0));
        for (size_t i = 0; i < m; i++)
            for (size_t j = 0; j < m; j++) mk.at(i, j) = conn.b.at(i, j).coeff_or((size_t)k, Rational(0));
        bk.push_back(mk);
    }
    std::vector<Mat<Rational>> cs{Mat<Rational>::identity(m, Rational(1))};
    for (int64_t l = 1; l < ng; l++) {
        Mat<Rational> acc(m, m, Rational(0));
        for (int64_t i = 0; i <= degb && i <= l - 1; i++)
            acc = acc + bk[(size_t)i] * cs[(size_t)(l - 1 - i)];
        for (int64_t i = 1; i <= conn.r.degree() && i <= l; i++)
            acc = acc + cs[(size_t)(l - i)].scaled(conn.r[(size_t)i] * Rational(l - i));
        acc = acc.scaled(-(Rational(1) / (conn.r[0] * Rational(l))));
        cs.push_back(acc);
    }
    const int64_t bmp = christol_dwork_bound(2, p);  // = 1
    const int64_t alpha_prime = 2 * bmp + 1;
    for (int64_t l = 0; l < ng; l++) {
        int64_t allowed = n1 - alpha_prime * ilog_floor_u64((uint64_t)(l + 1), p);
        for (size_t i = 0; i < m; i++)
            for (size_t j = 0; j < m; j++) {
                PadicApprox shadow = PadicApprox::from_rational(ctx, cs[(size_t)l].at(i, j), 40);
                PadicApprox diff = d.coeff[(size_t)l].at(i, j) - shadow;
                bool ok = diff.is_exact_zero() || diff.is_zero_to_precision() ||
                          diff.valuation() >= allowed;
                CHECK(ok);
            }
    }
}

TEST_CASE("deformation specializes to F(0) at Gamma = 0 and satisfies the ODE") {
    const uint64_t p = 5;
    PadicCtx ctx(p, 200);
    ConnectionData conn = toy_connection(p);
    const int64_t ng = 40, n1 = 10;
    LocalSeriesMatrix c =
        local_fundamental_solution(conn.b, conn.r, ctx, ng, n1, SolutionSide::left);
    LocalSeriesMatrix cd = local_fundamental_solution(conn.b, conn.r, ctx, (ng + 4) / 5 + 1, n1,
                                                      SolutionSide::dual);
    PadicMat f0(2, 2, PadicApprox::exact_zero(ctx));
    // any invertible integral matrix works for the ODE identity
    f0.at(0, 0) = PadicApprox::from_integer(ctx, BigInt(3), 24);
    f0.at(0, 1) = PadicApprox::from_integer(ctx, BigInt(1), 24);
    f0.at(1, 0) = PadicApprox::from_integer(ctx, BigInt(5), 24);
    f0.at(1, 1) = PadicApprox::from_integer(ctx, BigInt(2), 24);
    LocalSeriesMatrix f = deform_frobenius_local(c, cd, f0, p, ng);
    for (size_t i = 0; i < 2; i++)
        for (size_t j = 0; j < 2; j++)
            CHECK(f.coeff[0].at(i, j).same_value_to(f0.at(i, j), n1));
    // residual of r(G) r(G^p) F' + r(G^p) b F - p G^(p-1) r(G) F b(G^p) = 0,
    // coefficient by coefficient to the available precision
    const int64_t d = conn.r.degree();
    auto rk = [&](int64_t k) {
        return PadicApprox::from_rational(ctx, conn.r.coeff_or((size_t)k, Rational(0)), 24);
    };
    auto bmat = [&](int64_t k) {
        PadicMat mk(2, 2, PadicApprox::exact_zero(ctx));
        for (size_t i = 0; i < 2; i++)
            for (size_t j = 0; j < 2; j++)
                mk.at(i, j) =
                    PadicApprox::from_rational(ctx, conn.b.at(i, j).coeff_or((size_t)k, Rational(0)), 24);
        return mk;
    };
    // check low-order coefficients of the residual (joint precision n1 - small)
    const int64_t lmax = ng - (int64_t)p * d - 2;
    const int64_t tol = n1 - 4;
    for (int64_t l = 1; l < lmax; l++) {
        PadicMat acc(2, 2, PadicApprox::exact_zero(ctx));
        // [r rsig F']_{l-1}: sum over i + p j + (k-1) = l-1 of r_i r_j k F_k
        for (int64_t i = 0; i <= d; i++)
            for (int64_t j = 0; j <= d; j++) {
                int64_t k = l - i - (int64_t)p * j;
                if (k < 1 || k >= (int64_t)f.coeff.size()) continue;
                acc = acc + f.coeff[(size_t)k].scaled(rk(i) * rk(j)).scaled(
                                PadicApprox::from_integer(ctx, BigInt(k), 24));
            }
        // [rsig b F]_{l-1}
        for (int64_t j = 0; j <= d; j++)
            for (int64_t i = 0; i <= d - 1; i++) {
                int64_t k = l - 1 - (int64_t)p * j - i;
                if (k < 0 || k >= (int64_t)f.coeff.size()) continue;
                acc = acc + (bmat(i) * f.coeff[(size_t)k]).scaled(rk(j));
            }
        // - p [G^(p-1) r F b(G^p)]_{l-1} = - p [r F b(G^p)]_{l-p}
        int64_t target = l - (int64_t)p;
        if (target >= 0)
            for (int64_t i = 0; i <= d; i++)
                for (int64_t j = 0; j <= d - 1; j++) {
                    int64_t k = target - i - (int64_t)p * j;
                    if (k < 0 || k >= (int64_t)f.coeff.size()) continue;
                    acc = acc - (f.coeff[(size_t)k] * bmat(j))
                                    .scaled(rk(i))
                                    .scaled(PadicApprox::from_integer(ctx, BigInt((int64_t)p), 24));
                }
        for (size_t i = 0; i < 2; i++)
            for (size_t j = 0; j < 2; j++) {
                const PadicApprox& e = acc.at(i, j);
                bool ok = e.is_exact_zero() || e.is_zero_to_precision() || e.valuation() >= tol;
                CHECK(ok);
            }
    }
}

TEST_CASE("method 1 and method 2 agree to the joint precision") {
    const uint64_t p = 5;
    PadicCtx ctx(p, 200);
    ConnectionData conn = toy_connection(p);
    const int64_t ng = 35, n1 = 10;
    LocalSeriesMatrix c =
        local_fundamental_solution(conn.b, conn.r, ctx, ng, n1, SolutionSide::left);
    LocalSeriesMatrix cd =
        local_fundamental_solution(conn.b, conn.r, ctx, (ng + 4) / 5 + 1, n1, SolutionSide::dual);
    PadicMat f0(2, 2, PadicApprox::exact_zero(ctx));
    f0.at(0, 0) = PadicApprox::from_integer(ctx, BigInt(2), 24);
    f0.at(0, 1) = PadicApprox::from_integer(ctx, BigInt(5), 24);
    f0.at(1, 0) = PadicApprox::from_integer(ctx, BigInt(1), 24);
    f0.at(1, 1) = PadicApprox::from_integer(ctx, BigInt(3), 24);
    LocalSeriesMatrix f1 = deform_frobenius_local(c, cd, f0, p, ng);
    LocalSeriesMatrix f2 = method2_frobenius_local(conn.b, conn.r, f0, ctx, ng, n1);
    CHECK(f1.certified);
    CHECK(!f2.certified);
    const int64_t tol = n1 - 2 * (2 * christol_dwork_bound(2, p) + 1) *
                                 ilog_floor_u64((uint64_t)ng, p);
    for (int64_t l = 0; l < ng; l++)
        for (size_t i = 0; i < 2; i++)
            for (size_t j = 0; j < 2; j++)
                CHECK(f1.coeff[(size_t)l].at(i, j).same_value_to(f2.coeff[(size_t)l].at(i, j), tol));
}

TEST_CASE("radix conversion identities") {
    PadicCtx ctx(7, 128);
    QPoly rq = qpoly_from_int_coeffs({3, 1, 0, 1});  // monic cubic, r(0) = 3
    PadicPoly r = padic_poly_from_qpoly(ctx, rq, 20);
    // Gamma^3 = r * 1 + (Gamma^3 - r)
    PadicPoly g3 = PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1), 20)).shifted(3);
    std::vector<PadicPoly> digits = radix_convert(g3, r);
    REQUIRE(digits.size() == 2);
    CHECK(digits[1][0].same_value_to(PadicApprox::from_integer(ctx, BigInt(1)), 18));
    CHECK(digits[0][0].same_value_to(PadicApprox::from_integer(ctx, BigInt(-3)), 18));
    CHECK(digits[0][1].same_value_to(PadicApprox::from_integer(ctx, BigInt(-1)), 18));
    // random polynomial round trip: sum digits[t] r^t == f
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 10; iter++) {
        std::vector<PadicApprox> c;
        int64_t deg = 5 + (int64_t)(rng() % 40);
        for (int64_t i = 0; i <= deg; i++)
            c.push_back(PadicApprox::from_integer(ctx, BigInt((int64_t)(rng() % 2001) - 1000), 20));
        PadicPoly f(std::move(c));
        std::vector<PadicPoly> dg = radix_convert(f, r);
        PadicPoly acc, rp = PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1), 22));
        for (size_t t = 0; t < dg.size(); t++) {
            CHECK(dg[t].degree() < 3);
            acc = acc + dg[t] * rp;
            rp = rp * r;
        }
        PadicPoly diff = acc - f;
        for (size_t i = 0; i < diff.size(); i++)
            CHECK((diff[i].is_exact_zero() || diff[i].is_zero_to_precision() ||
                   diff[i].valuation() >= 16));
    }
}

TEST_CASE("analytic continuation recovers a known r-adic function") {
    // F := (r^{-1} + 1) r(G^p); then G = F / r(G^p) has digits 1 at k = -1, 0
    const uint64_t p = 5;
    PadicCtx ctx(p, 200);
    QPoly rq = qpoly_from_int_coeffs({2, 0, 1});  // G^2 + 2
    const int64_t d = 2, n1 = 10, ng = 44;
    PadicPoly r = padic_poly_from_qpoly(ctx, rq, n1 + 4);
    PadicPoly rsig;
    {
        std::vector<PadicApprox> c((size_t)(d * (int64_t)p) + 1, PadicApprox::exact_zero(ctx));
        for (int64_t i = 0; i <= d; i++)
            c[(size_t)((int64_t)p * i)] = PadicApprox::from_rational(ctx, rq[(size_t)i], n1 + 4);
        rsig = PadicPoly(std::move(c)).trim();
    }
    PadicPoly rinv = series_inverse(r, (size_t)ng);
    PadicPoly fe = ((rinv + PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1), n1 + 4))) *
                    rsig)
                       .truncated((size_t)ng);
    LocalSeriesMatrix f;
    f.n1 = n1;
    for (int64_t l = 0; l < ng; l++) {
        PadicMat ml(1, 1, PadicApprox::exact_zero(ctx));
        ml.at(0, 0) = fe.coeff_or((size_t)l, PadicApprox::exact_zero(ctx)).as_representative(n1);
        f.coeff.push_back(ml);
    }
    PrecisionPlan plan;
    plan.x_fin = 3;
    plan.x_inf = 20;
    plan.n2_fin = 6;
    plan.n2_inf = 6;
    plan.n2 = 6;
    RSeriesMat g = analytic_continuation(f, rq, plan, ctx);
    for (int64_t k = g.lo; k < g.hi(); k++) {
        const PadicPoly& e = g.digits[(size_t)(k - g.lo)].at(0, 0);
        if (k == -1 || k == 0) {
            CHECK(e.coeff_or(0, PadicApprox::exact_zero(ctx))
                      .same_value_to(PadicApprox::from_integer(ctx, BigInt(1)), 5));
            CHECK((e.degree() < 1 || e[1].is_zero_to_precision() || e[1].valuation() >= 5));
        } else {
            for (size_t i = 0; i < e.size(); i++)
                CHECK((e[i].is_exact_zero() || e[i].is_zero_to_precision() || e[i].valuation() >= 5));
        }
    }
}
