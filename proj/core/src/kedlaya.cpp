#include "pzeta/kedlaya.hpp"

#include <algorithm>
#include <cassert>

#include "pzeta/counting.hpp"
#include "pzeta/plan.hpp"

namespace pzeta {

KedlayaBudget kedlaya_budget(uint64_t p, int64_t n1, int64_t g) {
    KedlayaBudget b;
    // keep series terms until the certified floor (l+1) - floor(log_p(p(2l+1)))
    // clears n1, then check it stays clear
    int64_t l = 0;
    auto floor_of = [&](int64_t ell) {
        return (ell + 1) - ilog_floor_u64(p * (uint64_t)(2 * ell + 1), p);
    };
    while (floor_of(l) < n1) l++;
    for (int64_t k = l; k <= 4 * l + 8; k++)
        if (floor_of(k) < n1) throw PadicError("kedlaya_budget: term floor not monotone");
    b.series_len = l;  // terms 0..l-1 kept
    b.top_level = p * std::max<int64_t>(l - 1, 0) + ((int64_t)p - 1) / 2;
    int64_t slack = 0;
    for (int64_t s = 1; s <= b.top_level; s++) {
        int64_t odd = 2 * s - 1, t = 0;
        while (odd % (int64_t)p == 0) { odd /= (int64_t)p; t++; }
        slack += t;
    }
    // degree reduction at pole level zero divides by odd numbers 2a-2g+1
    for (int64_t a = 2 * g + 1; a <= (int64_t)p * (2 * g + 2) + 2 * g + 2; a++) {
        int64_t odd = 2 * a - 2 * g + 1, t = 0;
        while (odd % (int64_t)p == 0) { odd /= (int64_t)p; t++; }
        slack += t;
    }
    b.division_slack = slack;
    b.cap = n1 + slack + 8;
    return b;
}

namespace {

// rational Bezout pair: a q0 + b q0' = 1 (exists since q0 squarefree over Q
// after the mod-p squarefree check; denominators are p-units)
void bezout_pair(const ZPoly& q0, QPoly& a, QPoly& b) {
    QPoly r0 = qpoly_from_zpoly(q0);
    QPoly r1 = qpoly_from_zpoly(q0.derivative());
    QPoly s0 = QPoly::constant(Rational(1)), s1;
    QPoly t0, t1 = QPoly::constant(Rational(1));
    while (!r1.is_zero()) {
        QPoly q, r2;
        poly_divmod(r0, r1, q, r2);
        QPoly s2 = s0 - q * s1;
        QPoly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.degree() != 0)
        throw PadicError("kedlaya: fibre polynomial not squarefree over Q");
    Rational inv = Rational(1) / r0[0];
    a = s0.scaled(inv);
    b = t0.scaled(inv);
}

PadicPoly shift_x(const PadicPoly& f, int64_t k) { return f.shifted((size_t)k); }

}  // namespace

FiberFrobenius kedlaya_fiber(const ZPoly& q0, const PadicCtx& ctx, int64_t n1) {
    const uint64_t p = ctx.p();
    const int64_t delta = q0.degree();
    if (delta < 3 || delta % 2 == 0 || q0.lead() != BigInt(1))
        throw PadicError("kedlaya: q0 must be monic of odd degree >= 3");
    const int64_t g = (delta - 1) / 2;
    KedlayaBudget budget = kedlaya_budget(p, n1, g);
    const int64_t cap = budget.cap;
    if (2 * cap + 16 > ctx.max_digits())
        throw PadicError("kedlaya: context power table too small");

    // mod-p squarefreeness (gate normally pre-checks; re-verify)
    {
        auto fp = FqCtx::make(p, 1);
        std::vector<BigInt> c;
        for (size_t i = 0; i < q0.size(); i++) c.push_back(q0[i]);
        FqPoly qbar = fqpoly_from_int_coeffs(*fp, c);
        if (qbar.degree() != delta || !fqpoly_is_squarefree(qbar))
            throw PadicError("kedlaya: fiber not squarefree mod p");
    }

    auto lift_z = [&](const ZPoly& f) {
        std::vector<PadicApprox> c;
        c.reserve(f.size());
        for (size_t i = 0; i < f.size(); i++)
            c.push_back(PadicApprox::from_integer(ctx, f[i], cap));
        return PadicPoly(std::move(c));
    };
    auto lift_q = [&](const QPoly& f) {
        std::vector<PadicApprox> c;
        c.reserve(f.size());
        for (size_t i = 0; i < f.size(); i++)
            c.push_back(PadicApprox::from_rational(ctx, f[i], cap));
        return PadicPoly(std::move(c));
    };

    PadicPoly Q = lift_z(q0);
    PadicPoly Qx = lift_z(q0.derivative());
    QPoly bez_a, bez_b;
    bezout_pair(q0, bez_a, bez_b);
    if (!(bez_a * qpoly_from_zpoly(q0) + bez_b * qpoly_from_zpoly(q0.derivative()) -
          QPoly::constant(Rational(1))).is_zero())
        throw PadicError("kedlaya: Bezout identity failed");
    PadicPoly Bez = lift_q(bez_b);

    // R = (q0^p - q0(x^p)) / p over Z
    ZPoly qp = q0;
    for (int64_t i = 1; i < (int64_t)p; i++) qp = qp * q0;
    ZPoly qsig;
    {
        std::vector<BigInt> c((size_t)(p * (uint64_t)delta) + 1, BigInt(0));
        for (size_t i = 0; i < q0.size(); i++) c[i * (size_t)p] = q0[i];
        qsig = ZPoly(std::move(c));
    }
    ZPoly rnum = qp - qsig;
    std::vector<BigInt> rc;
    rc.reserve(rnum.size());
    for (size_t i = 0; i < rnum.size(); i++) {
        BigInt q, rem;
        BigInt::divmod(rnum[i], BigInt((int64_t)p), q, rem);
        if (!rem.is_zero()) throw PadicError("kedlaya: q0^p - q0^sigma not divisible by p");
        rc.push_back(q);
    }
    PadicPoly R = lift_z(ZPoly(std::move(rc)));

    // S = sum_{l < L} binom(2l, l) 4^{-l} (pR)^l Q^{p(L-1-l)} by Horner
    const int64_t L = std::max<int64_t>(budget.series_len, 1);
    PadicPoly Qp = lift_z(qp);
    PadicPoly pR = R.scaled(PadicApprox::from_integer(ctx, BigInt((int64_t)p), cap));
    auto coeff_c = [&](int64_t l) {
        Rational c(BigInt::binomial((uint64_t)(2 * l), (uint64_t)l),
                   BigInt::pow_u64(BigInt(4), (uint64_t)l));
        return PadicApprox::from_rational(ctx, c, cap);
    };
    PadicPoly S = PadicPoly::constant(coeff_c(L - 1));
    PadicPoly W;  // Qp^(L-1-i)
    bool w_started = false;
    for (int64_t i = L - 2; i >= 0; i--) {
        W = w_started ? W * Qp : Qp;
        w_started = true;
        S = S * pR + W.scaled(coeff_c(i));
    }

    const int64_t s_top = (int64_t)p * (L - 1) + ((int64_t)p - 1) / 2;
    PadicMat f0(2 * g, 2 * g, PadicApprox::exact_zero(ctx));
    const PadicApprox two = PadicApprox::from_integer(ctx, BigInt(2), cap);
    for (int64_t j = 0; j < 2 * g; j++) {
        PadicPoly A = shift_x(S, (int64_t)p * (j + 1) - 1)
                          .scaled(PadicApprox::from_integer(ctx, BigInt((int64_t)p), cap));
        int64_t divisions = 0;
        for (int64_t s = s_top; s >= 1; s--) {
            // A dx/y^(2s+1) -> (U + 2V'/(2s-1)) dx/y^(2s-1), A = U Q + V Q'
            PadicPoly V = poly_mod(Bez * A, Q);
            PadicPoly U = padic_poly_divexact(A - V * Qx, Q);
            int64_t odd = 2 * s - 1, t = 0;
            while (odd % (int64_t)p == 0) { odd /= (int64_t)p; t++; }
            divisions += t;
            PadicApprox inv = two / PadicApprox::from_integer(ctx, BigInt(2 * s - 1), cap);
            A = U + V.derivative().scaled(inv);
        }
        // pole level 0: lower the x-degree with d(x^(a-2g) y) down to the
        // basis span x^i dx/y, i < 2g  (a = 2g uses the shift-free relation
        // d(y) = Q'/(2y) dx)
        while (A.degree() >= 2 * g) {
            int64_t a = A.degree();
            PadicApprox lead = A[(size_t)a];
            int64_t odd = 2 * a - 2 * g + 1, t = 0;
            while (odd % (int64_t)p == 0) { odd /= (int64_t)p; t++; }
            divisions += t;
            PadicApprox f = (lead + lead) /
                            PadicApprox::from_integer(ctx, BigInt(2 * a - 2 * g + 1), cap);
            PadicPoly rel;
            const PadicApprox half =
                PadicApprox::from_integer(ctx, BigInt(1), cap).div_exact(BigInt(2));
            if (a == 2 * g) {
                rel = Qx.scaled(half);  // x^(-1) shift of (x Q'/2)
            } else {
                rel = (Q.scaled(PadicApprox::from_integer(ctx, BigInt(a - 2 * g), cap)) +
                       Qx.shifted(1).scaled(half))
                          .shifted((size_t)(a - 2 * g - 1));
            }
            A = A - rel.scaled(f);
            if (A.degree() >= a) {
                if (!A[(size_t)a].is_exact_zero() && A[(size_t)a].is_regular())
                    throw PadicError("kedlaya: degree reduction failed to cancel");
                std::vector<PadicApprox> c(A.coeffs().begin(), A.coeffs().begin() + a);
                A = PadicPoly(std::move(c));
            }
        }
        if (divisions > budget.division_slack)
            throw PadicError("kedlaya: division budget exceeded (growth bound violated)");
        for (int64_t i = 0; i < 2 * g; i++) {
            PadicApprox e = A.coeff_or((size_t)i, PadicApprox::exact_zero(ctx));
            if (!e.is_exact_zero() && e.precision() < n1)
                throw InsufficientPrecision("kedlaya: fibre matrix entry below target precision");
            f0.at((size_t)i, (size_t)j) = e.truncated_abs(n1);
        }
    }

    // det F0 = unit * p^g (the fibre-level trace formula forces this)
    PadicPoly cp = charpoly_division_free(f0);
    PadicApprox det = mat_det_from_charpoly(cp, (size_t)(2 * g));
    if (det.valuation() != g)
        throw PadicError("kedlaya: det F0 valuation != g");

    FiberFrobenius out;
    out.f0 = std::move(f0);
    out.n1 = n1;
    out.g = g;
    return out;
}

ZPoly reduced_fiber_numerator(const FqPoly& h, int64_t g, uint64_t guard) {
    if (g == 1) return ZPoly(std::vector<BigInt>{BigInt(1)});
    if (g != 2)
        throw EnumerationTooLarge("genus too large for counting fallback");
    const FqCtx& k = *h.lead().ctx();
    if (!k.order_fits_u64() || k.order().to_u64() > guard)
        throw EnumerationTooLarge("enumeration too large for fibre numerator");
    const uint64_t q = k.order().to_u64();
    // affine count of z^2 = H(x); genus-1 numerator 1 - aT + qT^2,
    // a = q - |affine| (one point at infinity on the odd-degree model)
    int64_t count = 0;
    for (uint64_t xi = 0; xi < q; xi++) {
        std::vector<uint64_t> coords(k.s(), 0);
        uint64_t v = xi;
        for (int i = 0; i < k.s(); i++) { coords[i] = v % k.p(); v /= k.p(); }
        Fq x(&k, std::move(coords));
        count += 1 + h.eval(x).chi();
    }
    int64_t a = (int64_t)q - count;
    return ZPoly(std::vector<BigInt>{BigInt(1), BigInt(-a), BigInt((int64_t)q)});
}

}  // namespace pzeta
