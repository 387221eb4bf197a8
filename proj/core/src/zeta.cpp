#include "pzeta/zeta.hpp"

#include <algorithm>
#include <cassert>

#include "pzeta/kedlaya.hpp"
#include "pzeta/weil.hpp"

namespace pzeta {

PadicPoly p2_open(const PadicMat& f, uint64_t q) {
    const PadicCtx& ctx = *f.at(0, 0).ctx();
    PadicPoly c = charpoly_division_free(f);
    PadicApprox c0 = c.coeff_or(0, PadicApprox::exact_zero(ctx));
    if (c0.is_exact_zero() || c0.is_zero_to_precision())
        throw InsufficientPrecision("p2_open: Frobenius matrix singular at available precision");
    // P2(T) = C(q^2 T) / C(0)
    std::vector<PadicApprox> out;
    out.reserve(c.size());
    BigInt q2((int64_t)(q * q));
    BigInt scale(1);
    for (size_t i = 0; i < c.size(); i++) {
        out.push_back(c[i].mul_exact(scale) / c0);
        scale = scale * q2;
    }
    return PadicPoly(std::move(out));
}

namespace {

ZPoly one_minus_xn(uint64_t q_pow, int64_t n) {
    std::vector<BigInt> c((size_t)n + 1, BigInt(0));
    c[0] = BigInt(1);
    c[(size_t)n] = BigInt(-(int64_t)q_pow);
    return ZPoly(std::move(c));
}

// M(T^d) for an integer polynomial M
ZPoly inflate(const ZPoly& m, int64_t d) {
    std::vector<BigInt> c((size_t)(m.degree() * d) + 1, BigInt(0));
    for (size_t i = 0; i < m.size(); i++) c[i * (size_t)d] = m[i];
    return ZPoly(std::move(c));
}

// the full local factor M_i(T) = P_i(T^d_i) (1 + delta_i T^d_i)
ZPoly fiber_factor(const FiberZeta& f) {
    ZPoly infl = inflate(f.numerator, f.deg);
    std::vector<BigInt> del((size_t)f.deg + 1, BigInt(0));
    del[0] = BigInt(1);
    del[(size_t)f.deg] = BigInt(f.delta);
    return infl * ZPoly(std::move(del));
}

// eigenvalue map tau -> q^2 / tau on the reciprocal roots: if M = prod (1 - tau T)
// with M(0) = 1, returns N = prod (1 - (q^2/tau) T) = rev(M)(q^2 T) / lc(M)
ZPoly dual_factor(const ZPoly& m, uint64_t q) {
    const int64_t n = m.degree();
    BigInt top = m.lead();
    std::vector<BigInt> c((size_t)n + 1, BigInt(0));
    BigInt q2((int64_t)(q * q));
    BigInt pw(1);
    for (int64_t k = 0; k <= n; k++) {
        BigInt num = m[(size_t)(n - k)] * pw;
        BigInt quo, rem;
        BigInt::divmod(num, top, quo, rem);
        if (!rem.is_zero())
            throw std::runtime_error("dual_factor: non-integral eigenvalue transform");
        c[(size_t)k] = quo;
        pw = pw * q2;
    }
    return ZPoly(std::move(c));
}

}  // namespace

RationalFunction zeta_open(const ZPoly& p2, const std::vector<int64_t>& fiber_degs, uint64_t q) {
    RationalFunction z;
    z.num = ZPoly(std::vector<BigInt>{BigInt(1)});
    for (int64_t d : fiber_degs) {
        // (1 - (qT)^d)
        std::vector<BigInt> c((size_t)d + 1, BigInt(0));
        c[0] = BigInt(1);
        c[(size_t)d] = -BigInt::pow_u64(BigInt((int64_t)q), (uint64_t)d);
        z.num = z.num * ZPoly(std::move(c));
    }
    z.den = p2 * one_minus_xn(q * q, 1);
    return z;
}

RationalFunction zeta_curves(const std::vector<FiberZeta>& fibers, uint64_t q) {
    RationalFunction z;
    z.num = ZPoly(std::vector<BigInt>{BigInt(1)});
    z.den = one_minus_xn(1, 1) * one_minus_xn(q, 1);  // (1-T)(1-qT)
    for (auto& f : fibers) {
        z.num = z.num * fiber_factor(f);
        uint64_t qd = 1;
        for (int64_t i = 0; i < f.deg; i++) qd *= q;
        z.den = z.den * one_minus_xn(qd, f.deg);
    }
    return z;
}

WeilCompletion complete_weil(const PadicPoly& cstar_series, const std::vector<FiberZeta>& fibers,
                             uint64_t q, const PrecisionPlan& plan) {
    const PadicCtx& ctx = *cstar_series.lead().ctx();
    // D = d - 2g, e = floor(D/2); cstar_series must cover T^0..T^e
    // S(T) = prod over fibres of the dual factor; w2 = cstar / S
    ZPoly s = ZPoly(std::vector<BigInt>{BigInt(1)});
    for (auto& f : fibers) s = s * dual_factor(fiber_factor(f), q);
    const int64_t D = plan.d_r - 2 * plan.genus;
    const int64_t e = D / 2;
    // series division by S (constant term 1, no precision loss)
    std::vector<PadicApprox> w((size_t)e + 1, PadicApprox::exact_zero(ctx));
    for (int64_t k = 0; k <= e; k++) {
        PadicApprox acc = cstar_series.coeff_or((size_t)k, PadicApprox::exact_zero(ctx));
        for (int64_t j = 1; j <= k && j <= s.degree(); j++)
            acc = acc - w[(size_t)(k - j)].mul_exact(s[(size_t)j]);
        w[(size_t)k] = acc;  // S[0] = 1
    }
    // symmetric lifts with the Weil bounds C(D, i) q^i
    std::vector<BigInt> a((size_t)e + 1);
    for (int64_t i = 0; i <= e; i++) {
        if (w[(size_t)i].precision() < plan.n_final)
            throw PrecisionRerunNeeded("complete_weil: coefficient below recovery precision",
                                       plan.n3 + (plan.n_final - w[(size_t)i].precision()) + 2);
        BigInt bound = BigInt::binomial((uint64_t)D, (uint64_t)i) *
                       BigInt::pow_u64(BigInt((int64_t)q), (uint64_t)i);
        a[(size_t)i] = w[(size_t)i].truncated_abs(plan.n_final).symmetric_lift(bound);
    }
    if (a[0] != BigInt(1))
        throw WeilDisambiguationError("complete_weil: constant term of w2 is not 1");

    std::vector<ZPoly> candidates;
    std::vector<int> signs;
    for (int eps : {1, -1}) {
        if (D % 2 == 0 && eps == -1 && !a[(size_t)e].is_zero()) continue;
        std::vector<BigInt> c((size_t)D + 1, BigInt(0));
        for (int64_t i = 0; i <= e; i++) c[(size_t)i] = a[(size_t)i];
        bool ok = true;
        for (int64_t i = 0; i <= e; i++) {
            BigInt completed = BigInt(eps) * a[(size_t)i] *
                               BigInt::pow_u64(BigInt((int64_t)q), (uint64_t)(D - 2 * i));
            int64_t hi = D - i;
            if (hi <= e && c[(size_t)hi] != completed) { ok = false; break; }
            c[(size_t)hi] = completed;
        }
        if (!ok) continue;
        candidates.push_back(ZPoly(std::move(c)));
        signs.push_back(eps);
    }
    int found = -1;
    for (size_t i = 0; i < candidates.size(); i++)
        if (weight2_circle_test(candidates[i], q)) {
            if (found >= 0)
                throw WeilDisambiguationError(
                    "Weil disambiguation failed: both sign candidates pass the root test");
            found = (int)i;
        }
    if (found < 0)
        throw WeilDisambiguationError(
            "Weil disambiguation failed: no sign candidate passes the root test");
    WeilCompletion out;
    out.w2 = candidates[(size_t)found];
    out.epsilon = signs[(size_t)found];
    out.p2_compact = out.w2 * ZPoly(std::vector<BigInt>{BigInt(1), BigInt(-(int64_t)q)});
    return out;
}

ZetaFactorization assemble_zeta(const PadicMat& h2, const std::vector<FiberZeta>& fibers,
                                uint64_t q, const PrecisionPlan& plan) {
    const PadicCtx& ctx = *h2.at(0, 0).ctx();
    const size_t n = h2.rows();
    PadicPoly cp = charpoly_division_free(h2);
    // reversed characteristic polynomial det(I - TF): coefficient k is cp[n-k]
    std::vector<PadicApprox> cstar;
    for (size_t k = 0; k < cp.size(); k++)
        cstar.push_back(cp.coeff_or(n - k, PadicApprox::exact_zero(ctx)));
    PadicPoly cst(std::move(cstar));

    ZetaFactorization out;
    out.fibers = fibers;
    WeilCompletion wc = complete_weil(cst, fibers, q, plan);
    out.w2 = wc.w2;
    out.epsilon = wc.epsilon;
    out.p2_compact = wc.p2_compact;
    out.p2_open = out.w2;
    std::vector<int64_t> degs;
    for (auto& f : fibers) {
        out.p2_open = out.p2_open * fiber_factor(f);
        degs.push_back(f.deg);
    }
    out.z_open = zeta_open(out.p2_open, degs, q);
    out.z_curves = zeta_curves(fibers, q);
    out.z_compact.num = ZPoly(std::vector<BigInt>{BigInt(1)});
    out.z_compact.den = one_minus_xn(1, 1) * out.p2_compact * one_minus_xn(q * q, 1);

    // functional equation, exactly over Z
    {
        const int64_t D = out.w2.degree();
        for (int64_t i = 0; 2 * i <= D; i++) {
            BigInt lhs = out.w2.coeff_or((size_t)(D - i), BigInt(0));
            BigInt rhs = BigInt(out.epsilon) * out.w2.coeff_or((size_t)i, BigInt(0)) *
                         BigInt::pow_u64(BigInt((int64_t)q), (uint64_t)(D - 2 * i));
            if (lhs != rhs)
                throw WeilDisambiguationError("assemble_zeta: functional equation violated");
        }
    }
    return out;
}

LefschetzReport verify_lefschetz(const RationalFunction& z_compact, int s_max,
                                 const Bivariate& surface, uint64_t p, uint64_t guard,
                                 int threads) {
    LefschetzReport rep;
    rep.zeta_counts = counts_from_zeta(z_compact, s_max);
    for (int s = 1; s <= s_max; s++) {
        BigInt affine = count_affine_surface(surface, p, s, guard, threads);
        BigInt ps = BigInt::pow_u64(BigInt((int64_t)p), (uint64_t)s);
        rep.oracle_counts.push_back(affine + ps + BigInt(1));
        if (rep.pass && rep.oracle_counts.back() != rep.zeta_counts[(size_t)(s - 1)]) {
            rep.pass = false;
            rep.s_failed = s;
        }
    }
    return rep;
}

std::vector<FiberZeta> fiber_zeta_data(const std::vector<SingularFiber>& fibers, int64_t g,
                                       uint64_t guard) {
    std::vector<FiberZeta> out;
    for (auto& sf : fibers) {
        FiberZeta f;
        f.deg = sf.deg;
        f.delta = sf.delta;
        f.numerator = reduced_fiber_numerator(sf.hpoly, g, guard);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace pzeta
