#include "pzeta/pencil.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace pzeta {

namespace {

// polynomial-in-X with Z[Gamma] coefficients
using XPoly = std::vector<ZPoly>;

ZPoly x_coeff(const XPoly& f, int64_t i) {
    if (i < 0 || i >= (int64_t)f.size()) return ZPoly();
    return f[(size_t)i];
}

XPoly dQ_dX(const XPoly& q) {
    XPoly d;
    for (size_t i = 1; i < q.size(); i++) d.push_back(q[i].scaled(BigInt((int64_t)i)));
    return d;
}

XPoly dQ_dGamma(const XPoly& q) {
    XPoly d;
    d.reserve(q.size());
    for (auto& c : q) d.push_back(c.derivative());
    return d;
}

int64_t xdeg(const XPoly& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (!f[i].is_zero()) return (int64_t)i;
    return -1;
}

}  // namespace

SurfaceInput make_surface_input(uint64_t p, Bivariate terms) {
    SurfaceInput s;
    s.p = p;
    if (p < 3 || !is_prime_u64(p)) throw PencilError("surface: p must be an odd prime");
    int64_t dx = 0, dg = 0;
    for (auto& t : terms) {
        if (t.a < 0 || t.b < 0) throw PencilError("surface: negative exponent");
        dx = std::max<int64_t>(dx, t.a);
        dg = std::max<int64_t>(dg, t.b);
    }
    if (dx < 3 || dx % 2 == 0)
        throw PencilError("surface: Q must have odd X-degree 2g+1 >= 3");
    s.delta_x = dx;
    s.g = (dx - 1) / 2;
    s.h = dg;
    s.x_coeffs.assign((size_t)dx + 1, ZPoly());
    for (auto& t : terms) {
        std::vector<BigInt> c((size_t)t.b + 1, BigInt(0));
        c[(size_t)t.b] = t.c;
        s.x_coeffs[(size_t)t.a] += ZPoly(std::move(c));
    }
    if (s.x_coeffs[(size_t)dx].degree() != 0 || s.x_coeffs[(size_t)dx][0] != BigInt(1))
        throw PencilError("surface: Q must be monic in X");
    s.terms = std::move(terms);
    return s;
}

void sylvester_and_resultant(const SurfaceInput& s, Mat<ZPoly>& m, ZPoly& res) {
    const int64_t delta = s.delta_x;
    const int64_t n = 2 * delta - 1;
    XPoly q = s.x_coeffs;
    XPoly qx = dQ_dX(q);
    m = Mat<ZPoly>(n, n, ZPoly());
    for (int64_t i = 1; i <= delta - 1; i++)
        for (int64_t j = 1; j <= n; j++)
            m.at(i - 1, j - 1) = x_coeff(q, (n - j) - (delta - 1 - i));
    for (int64_t i = delta; i <= n; i++)
        for (int64_t j = 1; j <= n; j++)
            m.at(i - 1, j - 1) = x_coeff(qx, (n - j) - (n - i));
    Poly<ZPoly> cp = charpoly_berkowitz(m);
    res = mat_det_from_charpoly(cp, (size_t)n);
}

ConnectionData connection_matrix(const SurfaceInput& s) {
    ConnectionData out;
    const int64_t delta = s.delta_x;
    const int64_t n = 2 * delta - 1;
    Mat<ZPoly> m;
    sylvester_and_resultant(s, m, out.res);
    if (out.res.is_zero()) throw PencilError("connection: vanishing resultant");

    Poly<ZPoly> cp = charpoly_berkowitz(m);
    Mat<ZPoly> adj = adjugate(m, cp);
    out.adj_deg = 0;
    for (size_t i = 0; i < adj.rows(); i++)
        for (size_t j = 0; j < adj.cols(); j++)
            out.adj_deg = std::max(out.adj_deg, adj.at(i, j).degree());

    // E2 = coefficient rows of X^(i-1) dQ/dGamma (the -1/2 is carried as a scalar)
    XPoly qg = dQ_dGamma(s.x_coeffs);
    Mat<ZPoly> e2(delta - 1, n, ZPoly());
    for (int64_t i = 1; i <= delta - 1; i++)
        for (int64_t j = 1; j <= n; j++)
            e2.at(i - 1, j - 1) = x_coeff(qg, (n - j) - (i - 1));
    Mat<ZPoly> fnum = e2 * adj;  // the decomposition against res * I

    // column slices: u (combination of X^k Q) and v (combination of X^k dQ/dX)
    // rows of m: 1..delta-1 are X^(delta-1-i) Q, delta..n are X^(n-i) dQ/dX
    Mat<ZPoly> bnum(delta - 1, delta - 1, ZPoly());
    for (int64_t i = 0; i < delta - 1; i++) {
        // u_i(X) = sum_j fnum[i][j] X^(delta-1-(j+1)), j = 0..delta-2
        // v_i(X) = sum_j fnum[i][j] X^(n-(j+1)),       j = delta-1..n-1
        std::vector<ZPoly> u((size_t)delta - 1, ZPoly());
        std::vector<ZPoly> v((size_t)delta, ZPoly());
        for (int64_t j = 1; j <= delta - 1; j++) u[(size_t)(delta - 1 - j)] = fnum.at(i, j - 1);
        for (int64_t j = delta; j <= n; j++) v[(size_t)(n - j)] = fnum.at(i, j - 1);
        // m_i = u + 2 dv/dX; the X^(delta-1) term of v matters through its derivative
        std::vector<ZPoly> mi((size_t)delta - 1, ZPoly());
        for (int64_t k = 0; k < delta - 1; k++) {
            ZPoly t = u[(size_t)k] + v[(size_t)k + 1].scaled(BigInt(2 * (k + 1)));
            mi[(size_t)k] = std::move(t);
        }
        for (int64_t k = 0; k < delta - 1; k++) bnum.at(k, i) = mi[(size_t)k];
    }

    // lowest terms: strip the common polynomial factor of res and all entries
    ZPoly gcd_all = out.res;
    for (size_t i = 0; i < bnum.rows(); i++)
        for (size_t j = 0; j < bnum.cols(); j++)
            gcd_all = zpoly_gcd(gcd_all, bnum.at(i, j));
    ZPoly r0 = poly_divexact(out.res, gcd_all);
    BigInt lc = r0.lead();
    // r monic over Q; B = -(1/2) bnum / res = b / r with b = -bnum/(2 lc gcd_all)
    {
        std::vector<Rational> rc;
        rc.reserve(r0.size());
        for (size_t i = 0; i < r0.size(); i++) rc.emplace_back(r0[i], lc);
        out.r = QPoly(std::move(rc));
    }
    out.d = out.r.degree();
    out.b = Mat<QPoly>(delta - 1, delta - 1, QPoly());
    Rational scale = Rational(BigInt(-1), BigInt(2) * lc);
    for (size_t i = 0; i < bnum.rows(); i++)
        for (size_t j = 0; j < bnum.cols(); j++) {
            ZPoly nume = poly_divexact(bnum.at(i, j), gcd_all);
            std::vector<Rational> c;
            c.reserve(nume.size());
            for (size_t k = 0; k < nume.size(); k++) c.push_back(Rational(nume[k]) * scale);
            out.b.at(i, j) = QPoly(std::move(c));
        }

    out.b_top = Mat<Rational>(delta - 1, delta - 1, Rational(0));
    for (size_t i = 0; i < out.b.rows(); i++)
        for (size_t j = 0; j < out.b.cols(); j++)
            out.b_top.at(i, j) = out.b.at(i, j).coeff_or((size_t)(out.d - 1), Rational(0));

    out.exponents = local_exponent_data(out.b, out.r);
    if (out.res.degree() > 0) {
        out.adj_ratio = Rational(out.adj_deg) / Rational(out.res.degree());
        // deg_Gamma R < p h for Q monic in Gamma (strict by monicity)
        out.r_ratio = Rational((int64_t)s.p * s.h - 1) /
                      (Rational((int64_t)s.p) * Rational(out.res.degree()));
    }
    return out;
}

// ---------------------------------------------------------------- exponents

namespace {

// residue ring Q[Gamma]/(r) elements for the global nilpotency test
struct QModCtx {
    QPoly r;
};

struct QMod {
    const QModCtx* ctx = nullptr;
    QPoly v;
    QMod() = default;
    QMod(const QModCtx* c, QPoly p) : ctx(c), v(poly_mod(std::move(p), c->r)) {}
    bool is_zero() const { return v.is_zero(); }
    friend QMod operator+(const QMod& a, const QMod& b) {
        QMod r;
        r.ctx = a.ctx ? a.ctx : b.ctx;
        r.v = (a.v + b.v).trim();
        return r;
    }
    friend QMod operator-(const QMod& a, const QMod& b) {
        QMod r;
        r.ctx = a.ctx ? a.ctx : b.ctx;
        r.v = (a.v - b.v).trim();
        return r;
    }
    friend QMod operator*(const QMod& a, const QMod& b) {
        QMod r;
        r.ctx = a.ctx ? a.ctx : b.ctx;
        if (!r.ctx || a.v.is_zero() || b.v.is_zero()) { r.v = QPoly(); return r; }
        r.v = poly_mod(a.v * b.v, r.ctx->r);
        return r;
    }
    QMod operator-() const {
        QMod r;
        r.ctx = ctx;
        r.v = -v;
        return r;
    }
};

}  // namespace

template <>
struct ring_traits<QMod> {
    static QMod zero_like(const QMod& x) {
        QMod r;
        r.ctx = x.ctx;
        return r;
    }
    static QMod one_like(const QMod& x) {
        QMod r;
        r.ctx = x.ctx;
        r.v = QPoly::constant(Rational(1));
        return r;
    }
    static bool is_zero(const QMod& x) { return x.is_zero(); }
    static QMod mul_small(const QMod& x, int64_t k) {
        QMod r;
        r.ctx = x.ctx;
        r.v = x.v.scaled(Rational(k));
        return r;
    }
};

namespace {

// rational eigenvalues with multiplicity of a rational matrix; empty optional
// if the characteristic polynomial does not split over Q
std::vector<int64_t> divisors_u64(uint64_t n) {
    std::vector<int64_t> out;
    for (uint64_t d = 1; d * d <= n; d++)
        if (n % d == 0) {
            out.push_back((int64_t)d);
            if (d != n / d) out.push_back((int64_t)(n / d));
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool rational_spectrum(const Mat<Rational>& m, std::vector<Rational>& out) {
    Poly<Rational> cp = charpoly_berkowitz(m);
    ZPoly z;
    BigInt den;
    qpoly_clear_denominators(cp, z, den);
    z = zpoly_primitive_part(z);
    out.clear();
    while (z.degree() > 0) {
        if (z[0].is_zero()) {
            out.emplace_back(0);
            std::vector<BigInt> c(z.coeffs().begin() + 1, z.coeffs().end());
            z = ZPoly(std::move(c));
            continue;
        }
        if (!z[0].fits_i64() || !z.lead().fits_i64()) return false;  // out of candidate range
        QPoly qz = qpoly_from_zpoly(z);
        bool found = false;
        for (int64_t u : divisors_u64(z[0].abs().mag().to_u64())) {
            if (found) break;
            for (int64_t v : divisors_u64(z.lead().abs().mag().to_u64())) {
                if (found) break;
                for (int sgn : {1, -1}) {
                    Rational cand(BigInt(sgn * u), BigInt(v));
                    if (qz.eval(cand).is_zero()) {
                        out.push_back(cand);
                        QPoly lin(std::vector<Rational>{-cand, Rational(1)});
                        qz = poly_divexact(qz, lin);
                        qpoly_clear_denominators(qz, z, den);
                        z = zpoly_primitive_part(z);
                        found = true;
                        break;
                    }
                }
            }
        }
        if (!found) return false;
    }
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return a < b; });
    return true;
}

}  // namespace

ExponentReport local_exponent_data(const Mat<QPoly>& b, const QPoly& r) {
    ExponentReport rep;
    const size_t m = b.rows();
    const int64_t d = r.degree();

    // finite residues: nilpotent iff charpoly of (b mod r) over Q[Gamma]/(r)
    // is T^m (r' is a unit mod r, so the r'-twist cannot change nilpotency)
    QModCtx ctx{r};
    Mat<QMod> bm(m, m, QMod(&ctx, QPoly()));
    for (size_t i = 0; i < m; i++)
        for (size_t j = 0; j < m; j++) bm.at(i, j) = QMod(&ctx, b.at(i, j));
    Poly<QMod> cp = charpoly_berkowitz(bm);
    rep.finite_nilpotent = true;
    for (size_t k = 0; k < m; k++)
        if (!cp.coeff_or(k, ring_traits<QMod>::zero_like(bm.at(0, 0))).is_zero())
            rep.finite_nilpotent = false;

    // infinity: eigenvalues of -b_{d-1}
    Mat<Rational> btop(m, m, Rational(0));
    for (size_t i = 0; i < m; i++)
        for (size_t j = 0; j < m; j++)
            btop.at(i, j) = -b.at(i, j).coeff_or((size_t)(d - 1), Rational(0));
    rep.inf_rational = rational_spectrum(btop, rep.e_inf);

    int64_t max_int = 0;  // exponents include the zeros at finite points
    rep.delta_bound = 0;
    BigInt lcm_den(1);
    for (auto& lam : rep.e_inf) {
        if (lam.is_zero()) rep.inf_has_zero = true;
        if (lam.is_integer()) {
            if (lam.num() > BigInt(0)) rep.inf_has_positive_integer = true;
            if (lam.num() > BigInt(max_int)) max_int = lam.num().to_i64();
        }
        BigInt g = BigInt::gcd(lcm_den, lam.den());
        lcm_den = lcm_den * (lam.den() / g);
        int64_t ab = lam.abs().ceil().to_i64();
        rep.delta_bound = std::max(rep.delta_bound, ab);
    }
    rep.nden = lcm_den.to_i64();
    rep.rho = max_int + 1;
    for (size_t i = 0; i < rep.e_inf.size(); i++)
        for (size_t j = 0; j < rep.e_inf.size(); j++) {
            Rational diff = rep.e_inf[i] - rep.e_inf[j];
            if (diff.is_integer() && diff.sign() > 0) rep.prepared = false;
        }
    return rep;
}

// ---------------------------------------------------------------- fibres & gate

namespace {

FqPoly reduce_x_poly(const std::vector<ZPoly>& xc, const Fq& gamma) {
    const FqCtx& k = *gamma.ctx();
    std::vector<Fq> c;
    c.reserve(xc.size());
    for (auto& cz : xc) {
        // evaluate cz at gamma over F_{p^s}
        Fq acc = Fq::zero(k);
        for (size_t i = cz.size(); i-- > 0;) {
            BigInt m = BigInt::mod_euclid(cz[i], BigInt((int64_t)k.p()));
            acc = acc * gamma + Fq::from_int(k, m.to_i64());
        }
        c.push_back(acc);
    }
    return FqPoly(std::move(c));
}

std::vector<BigInt> zpoly_coeff_bigints(const ZPoly& f) {
    std::vector<BigInt> c;
    c.reserve(f.size());
    for (size_t i = 0; i < f.size(); i++) c.push_back(f[i]);
    return c;
}

// r as an integral polynomial mod p (monic over Q with p-integral coefficients)
std::vector<BigInt> rbar_coeffs(const QPoly& r, uint64_t p) {
    std::vector<BigInt> c;
    c.reserve(r.size());
    for (size_t i = 0; i < r.size(); i++) {
        const Rational& x = r[i];
        if (ord_p(x.den(), p) != 0) throw PencilError("rbar: non p-integral denominator");
        BigInt pN((int64_t)p);
        // num * den^{-1} mod p
        BigInt num = BigInt::mod_euclid(x.num(), pN);
        BigInt den = BigInt::mod_euclid(x.den(), pN);
        // small modular inverse
        int64_t dinv = 1;
        {
            int64_t a = den.to_i64() % (int64_t)p, e = (int64_t)p - 2, r2 = 1;
            while (e) {
                if (e & 1) r2 = (int64_t)(((__int128)r2 * a) % (int64_t)p);
                a = (int64_t)(((__int128)a * a) % (int64_t)p);
                e >>= 1;
            }
            dinv = r2;
        }
        c.push_back(BigInt::mod_euclid(num * BigInt(dinv), pN));
    }
    return c;
}

}  // namespace

std::vector<SingularFiber> analyze_singular_fibers(const SurfaceInput& s, const ConnectionData& c) {
    auto fp = FqCtx::make(s.p, 1);
    FqPoly rbar = fqpoly_from_int_coeffs(*fp, rbar_coeffs(c.r, s.p));
    if (!fqpoly_is_squarefree(rbar)) throw PencilError("singular fibers: rbar not squarefree");
    std::vector<FqPoly> factors = factor_squarefree(rbar);
    std::vector<SingularFiber> out;
    for (auto& fac : factors) {
        SingularFiber sf;
        sf.deg = fac.degree();
        sf.field = FqCtx::make(s.p, (int)sf.deg);
        // lift the factor into F_{p^{d_i}} and pick its least root
        std::vector<BigInt> fc;
        for (size_t i = 0; i < fac.size(); i++) fc.emplace_back((int64_t)fac[i].coords()[0]);
        FqPoly fac_up = fqpoly_from_int_coeffs(*sf.field, fc);
        std::vector<Fq> roots = fq_roots(fac_up);
        if (roots.empty()) throw PencilError("singular fibers: factor has no root in its field");
        sf.gamma = roots.front();
        FqPoly fiber = reduce_x_poly(s.x_coeffs, sf.gamma);
        NodalFiber nf = unique_double_point(fiber);  // throws "fiber not nodal"
        sf.alpha = nf.alpha;
        sf.hpoly = nf.hpoly;
        sf.delta = nf.delta;
        out.push_back(std::move(sf));
    }
    return out;
}

ZPoly fiber_polynomial_at_zero(const SurfaceInput& s) {
    std::vector<BigInt> c;
    c.reserve(s.x_coeffs.size());
    for (auto& cz : s.x_coeffs) c.push_back(cz.coeff_or(0, BigInt(0)));
    return ZPoly(std::move(c));
}

Bivariate surface_terms(const SurfaceInput& s) { return s.terms; }

GateReport assumption_gate(const SurfaceInput& s, const ConnectionData& c) {
    GateReport rep;
    auto fail = [&](const std::string& code) { rep.violations.push_back(code); };
    const uint64_t p = s.p;
    const int64_t delta_x = s.delta_x;

    // (a) characteristic constraints
    if (p % 2 == 0) fail("P_EVEN");
    if ((int64_t)(p % (uint64_t)delta_x) == 0) fail("P_DIVIDES_DEGX");

    // (b) resultant shape mod p
    if (ord_p(c.res.lead(), p) != 0) fail("RES_LEAD_NOT_UNIT");
    if (c.res.coeff_or(0, BigInt(0)).is_zero() || ord_p(c.res.coeff_or(0, BigInt(0)), p) != 0)
        fail("RES_CONSTANT_NOT_UNIT");

    // (c) denominator shape: rbar squarefree of full degree, simple pole at infinity
    bool rbar_ok = false;
    {
        auto fp = FqCtx::make(p, 1);
        try {
            FqPoly rbar = fqpoly_from_int_coeffs(*fp, rbar_coeffs(c.r, p));
            if (rbar.degree() != c.d) fail("R_DROPS_DEGREE_MODP");
            else if (!fqpoly_is_squarefree(rbar)) fail("R_NOT_SQUAREFREE_MODP");
            else rbar_ok = true;
            FqPoly resbar = fqpoly_from_int_coeffs(*fp, zpoly_coeff_bigints(c.res));
            if (resbar.degree() != c.res.degree() || !fqpoly_is_squarefree(resbar))
                fail("RES_NOT_SQUAREFREE_MODP");
        } catch (const PencilError&) {
            fail("R_NOT_P_INTEGRAL");
        }
    }
    int64_t bdeg = -1;
    for (size_t i = 0; i < c.b.rows(); i++)
        for (size_t j = 0; j < c.b.cols(); j++) {
            bdeg = std::max(bdeg, c.b.at(i, j).degree());
            for (size_t k = 0; k < c.b.at(i, j).size(); k++)
                if (ord_p(c.b.at(i, j)[k].den(), p) != 0) fail("B_NOT_P_INTEGRAL");
        }
    if (bdeg >= c.d) fail("B_DEGREE_NOT_BELOW_D");

    // (d) exponent conditions
    const ExponentReport& e = c.exponents;
    if (!e.finite_nilpotent) fail("FINITE_MONODROMY_NOT_NILPOTENT");
    if (!e.inf_rational) fail("INFINITY_EXPONENT_IRRATIONAL");
    if (e.inf_has_zero) fail("INFINITY_EXPONENT_ZERO");
    if (e.inf_has_positive_integer) fail("INFINITY_EXPONENT_POSITIVE_INTEGER");
    if (!e.prepared) {
        // integer differences between non-integer exponents at infinity do
        // not obstruct any linear solve; they only void the certified growth
        // chain at infinity, which the conjecture-mode plan does not use
        bool has_integer_exponent = false;
        for (auto& lam : e.e_inf)
            if (lam.is_integer()) has_integer_exponent = true;
        if (has_integer_exponent) fail("EXPONENTS_UNPREPARED");
        else rep.warnings.push_back("EXPONENTS_UNPREPARED_AT_INFINITY");
    }
    if (e.rho != 1) fail("RHO_NOT_ONE");
    // the conjectured height bounds are verified, not assumed
    if (e.inf_rational) {
        if (!(BigInt(2 * delta_x) % BigInt(e.nden)).is_zero())
            rep.warnings.push_back("EXPONENT_DENOMINATOR_EXCEEDS_2(2G+1)");
        for (auto& lam : e.e_inf) {
            Rational scaled = lam * Rational(e.nden);
            if (scaled.abs() > Rational(s.h * (2 * s.g - 1)) && s.g >= 1)
                rep.warnings.push_back("EXPONENT_NUMERATOR_EXCEEDS_H(2G-1)");
        }
    }

    // (e) compactification shape
    if (s.h % 2 == 0) fail("H_EVEN");
    {
        // monic in Gamma: the only term with b = h is 1 * Gamma^h
        bool monic_g = false, bad = false;
        for (auto& t : s.terms)
            if (t.b == s.h) {
                if (t.a == 0 && t.c == BigInt(1) && !monic_g) monic_g = true;
                else bad = true;
            }
        if (!monic_g || bad) fail("Q_NOT_MONIC_IN_GAMMA");
        bool const_one = false;
        for (auto& t : s.terms)
            if (t.a == 0 && t.b == 0) const_one = t.c == BigInt(1);
        if (!const_one) fail("Q_CONSTANT_TERM_NOT_ONE");
        for (auto& t : s.terms)
            if (t.a * s.h + (int64_t)t.b * delta_x > delta_x * s.h)
                fail("EXPONENT_OUTSIDE_SIMPLEX");
        auto coprime = [](int64_t a, int64_t b) {
            return BigInt::gcd(BigInt(a), BigInt(b)).is_one();
        };
        if (!coprime(delta_x, (int64_t)p) || !coprime(s.h, (int64_t)p))
            fail("GCD_CONDITION_VIOLATED");
        // gcd(2g+1, h) > 1 leaves the boundary a smooth rational curve as
        // long as p stays coprime to both degrees (the outer-face polynomial
        // z^2 - x^(2g+1) - g^h remains nondegenerate); flagged, not fatal
        if (!coprime(delta_x, s.h)) rep.warnings.push_back("DEGX_H_NOT_COPRIME");
    }

    // (f) nondegeneracy of the boundary fibres
    {
        auto fp = FqCtx::make(p, 1);
        FqPoly q0 = fqpoly_from_int_coeffs(*fp, zpoly_coeff_bigints(fiber_polynomial_at_zero(s)));
        if (q0.degree() != delta_x || !fqpoly_is_squarefree(q0)) fail("NONDEGENERATE_FIBER0");
        // Q(0, Gamma)
        FqPoly qg0 = fqpoly_from_int_coeffs(*fp, zpoly_coeff_bigints(s.x_coeffs[0]));
        if (qg0.degree() != s.h || !fqpoly_is_squarefree(qg0)) fail("NONDEGENERATE_GAMMA_AXIS");
    }

    // (g) singular fibres: unique double points, and the double point never
    // kills dQ/dGamma (no common zero of Qbar and both partials)
    if (rbar_ok && rep.violations.empty()) {
        try {
            auto fibers = analyze_singular_fibers(s, c);
            XPoly qg = dQ_dGamma(s.x_coeffs);
            for (auto& sf : fibers) {
                std::vector<ZPoly> qgv(qg.begin(), qg.end());
                FqPoly qg_at = reduce_x_poly(qgv, sf.gamma);
                if (qg_at.eval(sf.alpha).is_zero()) fail("SINGULAR_BRANCH_POINT");
            }
        } catch (const std::exception&) {
            fail("FIBER_NOT_NODAL");
        }
    }
    return rep;
}

}  // namespace pzeta
