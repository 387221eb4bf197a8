#include <doctest.h>

#include <random>

#include "pzeta/pencil.hpp"

using namespace pzeta;

namespace {

Bivariate ex_p17_terms() {
    // X^3 + (4 G^4 + 5 G^3) X + G^13 + 6 G^12 + 5 G^10 + 8 G^9 + 8 G^8 + 5 G^5
    //     + G^4 + 5 G^3 + G^2 + 1
    return Bivariate{{BigInt(1), 3, 0},  {BigInt(4), 1, 4},  {BigInt(5), 1, 3},
                     {BigInt(1), 0, 13}, {BigInt(6), 0, 12}, {BigInt(5), 0, 10},
                     {BigInt(8), 0, 9},  {BigInt(8), 0, 8},  {BigInt(5), 0, 5},
                     {BigInt(1), 0, 4},  {BigInt(5), 0, 3},  {BigInt(1), 0, 2},
                     {BigInt(1), 0, 0}};
}

Rational eval_zpoly(const ZPoly& c, const Rational& tau) {
    Rational acc(0);
    for (size_t k = c.size(); k-- > 0;) acc = acc * tau + Rational(c[k]);
    return acc;
}

// exact solve of P = u Q + v dQ/dX at a rational specialization Gamma = tau,
// by Gaussian elimination; independent of the adjugate route
bool solve_decomposition_at(const SurfaceInput& s, const Rational& tau, const QPoly& pnum,
                            QPoly& u, QPoly& v) {
    const int64_t delta = s.delta_x;
    const int64_t n = 2 * delta - 1;
    auto qc = [&](int64_t i) {
        if (i < 0 || i > delta) return Rational(0);
        return eval_zpoly(s.x_coeffs[(size_t)i], tau);
    };
    std::vector<std::vector<Rational>> a((size_t)n,
                                         std::vector<Rational>((size_t)n + 1, Rational(0)));
    for (int64_t j = 0; j <= delta - 2; j++)  // u_j X^j Q
        for (int64_t i = 0; i <= delta; i++)
            if (i + j < n) a[(size_t)(i + j)][(size_t)j] += qc(i);
    for (int64_t j = 0; j <= delta - 1; j++)  // v_j X^j dQ/dX
        for (int64_t i = 1; i <= delta; i++)
            if (i - 1 + j < n) a[(size_t)(i - 1 + j)][(size_t)(delta - 1 + j)] += Rational(i) * qc(i);
    for (int64_t i = 0; i < n; i++) a[(size_t)i][(size_t)n] = pnum.coeff_or((size_t)i, Rational(0));
    for (int64_t col = 0; col < n; col++) {
        int64_t piv = -1;
        for (int64_t row = col; row < n; row++)
            if (!a[(size_t)row][(size_t)col].is_zero()) { piv = row; break; }
        if (piv < 0) return false;
        std::swap(a[(size_t)col], a[(size_t)piv]);
        Rational inv = a[(size_t)col][(size_t)col].inv();
        for (int64_t c2 = col; c2 <= n; c2++) a[(size_t)col][(size_t)c2] *= inv;
        for (int64_t row = 0; row < n; row++) {
            if (row == col || a[(size_t)row][(size_t)col].is_zero()) continue;
            Rational f = a[(size_t)row][(size_t)col];
            for (int64_t c2 = col; c2 <= n; c2++)
                a[(size_t)row][(size_t)c2] -= f * a[(size_t)col][(size_t)c2];
        }
    }
    std::vector<Rational> uc, vc;
    for (int64_t j = 0; j <= delta - 2; j++) uc.push_back(a[(size_t)j][(size_t)n]);
    for (int64_t j = 0; j <= delta - 1; j++) vc.push_back(a[(size_t)(delta - 1 + j)][(size_t)n]);
    u = QPoly(std::move(uc));
    v = QPoly(std::move(vc));
    return true;
}

}  // namespace

TEST_CASE("sylvester resultant of X^3 + G X + 1") {
    SurfaceInput s =
        make_surface_input(7, {{BigInt(1), 3, 0}, {BigInt(1), 1, 1}, {BigInt(1), 0, 0}});
    Mat<ZPoly> m;
    ZPoly res;
    sylvester_and_resultant(s, m, res);
    CHECK(res.degree() == 3);
    CHECK(res[3] == BigInt(4));
    CHECK(res[0] == BigInt(27));
    CHECK(res[1].is_zero());
    CHECK(res[2].is_zero());
}

TEST_CASE("sylvester resultant of X^3 + G") {
    SurfaceInput s = make_surface_input(7, {{BigInt(1), 3, 0}, {BigInt(1), 0, 1}});
    Mat<ZPoly> m;
    ZPoly res;
    sylvester_and_resultant(s, m, res);
    CHECK(res.degree() == 2);
    CHECK(res[2] == BigInt(27));
    CHECK(res[0].is_zero());
    CHECK(res[1].is_zero());
}

TEST_CASE("sylvester determinant agrees with the subresultant oracle on random Q") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 50) {
        Bivariate terms{{BigInt(1), 3, 0}};
        for (int a = 0; a <= 1; a++)
            for (int b = 0; b <= 3; b++) {
                int64_t c = (int64_t)(rng() % 11) - 5;
                if (a == 0 && b == 0) c = 1 + (int64_t)(rng() % 5);
                if (c) terms.push_back({BigInt(c), a, b});
            }
        SurfaceInput s;
        try {
            s = make_surface_input(11, terms);
        } catch (const PencilError&) {
            continue;
        }
        Mat<ZPoly> m;
        ZPoly res;
        sylvester_and_resultant(s, m, res);
        bool ok = true;
        for (int64_t t = -8; t <= 8; t++) {
            std::vector<BigInt> qc((size_t)4, BigInt(0));
            for (auto& term : terms)
                qc[(size_t)term.a] += term.c * BigInt::pow_u64(BigInt(t), (uint64_t)term.b);
            ZPoly q(std::move(qc));
            if (res.eval(BigInt(t)) != zpoly_resultant(q, q.derivative())) ok = false;
        }
        CHECK(ok);
        done++;
    }
}

TEST_CASE("constant family has zero connection") {
    SurfaceInput s =
        make_surface_input(7, {{BigInt(1), 3, 0}, {BigInt(1), 1, 0}, {BigInt(3), 0, 0}});
    ConnectionData c = connection_matrix(s);
    for (size_t i = 0; i < c.b.rows(); i++)
        for (size_t j = 0; j < c.b.cols(); j++) CHECK(c.b.at(i, j).is_zero());
}

TEST_CASE("connection of X^3 + G X + 1 matches the hand-computed matrix") {
    SurfaceInput s =
        make_surface_input(7, {{BigInt(1), 3, 0}, {BigInt(1), 1, 1}, {BigInt(1), 0, 0}});
    ConnectionData c = connection_matrix(s);
    CHECK(c.d == 3);
    CHECK(c.r[0] == Rational(BigInt(27), BigInt(4)));
    CHECK(c.r[3] == Rational(1));
    CHECK(c.b.at(0, 0).coeff_or(2, Rational(0)) == Rational(BigInt(-1), BigInt(4)));
    CHECK(c.b.at(0, 1).coeff_or(1, Rational(0)) == Rational(BigInt(3), BigInt(8)));
    CHECK(c.b.at(1, 0).coeff_or(0, Rational(0)) == Rational(BigInt(9), BigInt(8)));
    CHECK(c.b.at(1, 1).coeff_or(2, Rational(0)) == Rational(BigInt(1), BigInt(4)));
    REQUIRE(c.exponents.e_inf.size() == 2);
    CHECK(c.exponents.e_inf[0] == Rational(BigInt(-1), BigInt(4)));
    CHECK(c.exponents.e_inf[1] == Rational(BigInt(1), BigInt(4)));
    CHECK(c.exponents.finite_nilpotent);
    CHECK(c.exponents.rho == 1);
}

TEST_CASE("Gauss-Manin columns agree with the independent elimination oracle") {
    std::mt19937_64 rng(555);
    SurfaceInput surfaces[] = {
        make_surface_input(7, {{BigInt(1), 3, 0}, {BigInt(1), 1, 1}, {BigInt(1), 0, 0}}),
        make_surface_input(7, {{BigInt(1), 3, 0},
                               {BigInt(2), 1, 1},
                               {BigInt(1), 0, 3},
                               {BigInt(3), 0, 1},
                               {BigInt(1), 0, 0}}),
        make_surface_input(11, ex_p17_terms()),
    };
    for (auto& s : surfaces) {
        ConnectionData c = connection_matrix(s);
        const int64_t delta = s.delta_x;
        for (int trial = 0; trial < 3; trial++) {
            Rational tau((int64_t)(rng() % 17) + 2);
            if (eval_zpoly(c.res, tau).is_zero()) continue;
            for (int64_t i = 1; i <= delta - 1; i++) {
                std::vector<Rational> pc((size_t)(2 * delta - 1), Rational(0));
                for (int64_t xdeg = 0; xdeg <= delta; xdeg++) {
                    ZPoly dz = s.x_coeffs[(size_t)xdeg].derivative();
                    Rational val = eval_zpoly(dz, tau);
                    if (xdeg + i - 1 < 2 * delta - 1)
                        pc[(size_t)(xdeg + i - 1)] += val * Rational(BigInt(-1), BigInt(2));
                }
                QPoly pnum(std::move(pc)), u, v;
                REQUIRE(solve_decomposition_at(s, tau, pnum, u, v));
                QPoly m_i = u + v.derivative().scaled(Rational(2));
                Rational r_tau = c.r.eval(tau);
                for (int64_t k = 0; k <= delta - 2; k++) {
                    Rational lhs = m_i.coeff_or((size_t)k, Rational(0));
                    Rational rhs = c.b.at((size_t)k, (size_t)(i - 1)).eval(tau) / r_tau;
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("Ex-p17 pencil: degree, exponents, gate") {
    SurfaceInput s = make_surface_input(17, ex_p17_terms());
    CHECK(s.g == 1);
    CHECK(s.h == 13);
    ConnectionData c = connection_matrix(s);
    CHECK(c.d == 26);
    CHECK(c.res.degree() == 26);
    REQUIRE(c.exponents.e_inf.size() == 2);
    CHECK(c.exponents.e_inf[0] == Rational(BigInt(-13), BigInt(6)));
    CHECK(c.exponents.e_inf[1] == Rational(BigInt(13), BigInt(6)));
    CHECK(c.exponents.finite_nilpotent);
    CHECK(c.exponents.rho == 1);
    CHECK(c.exponents.nden == 6);
    CHECK(c.exponents.delta_bound == 3);
    GateReport rep = assumption_gate(s, c);
    if (!rep.pass())
        for (auto& v : rep.violations) MESSAGE(v);
    CHECK(rep.pass());
}

TEST_CASE("gate rejects p dividing 2g+1") {
    SurfaceInput s = make_surface_input(
        3, {{BigInt(1), 3, 0}, {BigInt(1), 1, 2}, {BigInt(1), 0, 3}, {BigInt(1), 0, 0}});
    ConnectionData c = connection_matrix(s);
    GateReport rep = assumption_gate(s, c);
    CHECK(!rep.pass());
    bool found = false;
    for (auto& v : rep.violations)
        if (v == "P_DIVIDES_DEGX") found = true;
    CHECK(found);
}

TEST_CASE("gate rejects a non-squarefree fibre at Gamma = 0") {
    // Q(X, 0) = (X-1)^2 (X+1) = X^3 - X^2 - X + 1
    SurfaceInput s = make_surface_input(7, {{BigInt(1), 3, 0},
                                            {BigInt(-1), 2, 0},
                                            {BigInt(-1), 1, 0},
                                            {BigInt(1), 0, 3},
                                            {BigInt(1), 0, 0}});
    ConnectionData c = connection_matrix(s);
    GateReport rep = assumption_gate(s, c);
    bool found = false;
    for (auto& v : rep.violations)
        if (v == "NONDEGENERATE_FIBER0") found = true;
    CHECK(found);
}

TEST_CASE("singular fibres of Ex-p17 are nodal with degree sum d") {
    SurfaceInput s = make_surface_input(17, ex_p17_terms());
    ConnectionData c = connection_matrix(s);
    auto fibers = analyze_singular_fibers(s, c);
    int64_t degsum = 0;
    for (auto& f : fibers) {
        degsum += f.deg;
        CHECK((f.delta == 1 || f.delta == -1));
        CHECK(f.hpoly.degree() == 2 * s.g - 1);
    }
    CHECK(degsum == 26);
}
