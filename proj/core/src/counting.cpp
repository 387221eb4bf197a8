#include "pzeta/counting.hpp"

#include <algorithm>
#include <cassert>
#include <future>
#include <stdexcept>

namespace pzeta {

namespace {

// evaluate the X-coefficient polynomials of Q at a fixed gamma
std::vector<Fq> x_coeffs_at(const Bivariate& q, const Fq& gamma, int deg_x) {
    const FqCtx& ctx = *gamma.ctx();
    std::vector<Fq> c(deg_x + 1, Fq::zero(ctx));
    // powers of gamma up to max b
    int maxb = 0;
    for (auto& t : q) maxb = std::max(maxb, t.b);
    std::vector<Fq> gp(maxb + 1, Fq::one(ctx));
    for (int i = 1; i <= maxb; i++) gp[i] = gp[i - 1] * gamma;
    for (auto& t : q) {
        BigInt m = BigInt::mod_euclid(t.c, BigInt((int64_t)ctx.p()));
        Fq cf = Fq::from_int(ctx, m.to_i64());
        c[t.a] = c[t.a] + cf * gp[t.b];
    }
    return c;
}

struct SquareTable {
    std::vector<int8_t> chi;  // indexed by Fq::index(); chi(0) = 0
    explicit SquareTable(const FqCtx& ctx) {
        uint64_t q = ctx.order().to_u64();
        chi.assign(q, -1);
        chi[0] = 0;
        // mark squares by enumerating w^2
        std::vector<uint64_t> coords(ctx.s(), 0);
        for (uint64_t i = 0; i < q; i++) {
            uint64_t v = i;
            for (int j = 0; j < ctx.s(); j++) {
                coords[j] = v % ctx.p();
                v /= ctx.p();
            }
            Fq w(&ctx, coords);
            if (!w.is_zero()) chi[(w * w).index()] = 1;
        }
    }
};

Fq element_from_index(const FqCtx& ctx, uint64_t idx) {
    std::vector<uint64_t> coords(ctx.s(), 0);
    for (int j = 0; j < ctx.s(); j++) {
        coords[j] = idx % ctx.p();
        idx /= ctx.p();
    }
    return Fq(&ctx, std::move(coords));
}

BigInt count_range(const Bivariate& q, const FqCtx& ctx, const SquareTable& tab, int deg_x,
                   const FqPoly* rbar, uint64_t glo, uint64_t ghi) {
    const uint64_t qq = ctx.order().to_u64();
    int64_t acc = 0;
    BigInt total(0);
    for (uint64_t gi = glo; gi < ghi; gi++) {
        Fq gamma = element_from_index(ctx, gi);
        if (rbar && rbar->eval(gamma).is_zero()) continue;
        std::vector<Fq> c = x_coeffs_at(q, gamma, deg_x);
        for (uint64_t xi = 0; xi < qq; xi++) {
            Fq x = element_from_index(ctx, xi);
            Fq val = c[deg_x];
            for (int k = deg_x - 1; k >= 0; k--) val = val * x + c[k];
            acc += 1 + tab.chi[val.index()];
            if (acc > (int64_t)1 << 60) {
                total += BigInt(acc);
                acc = 0;
            }
        }
    }
    return total + BigInt(acc);
}

BigInt count_impl(const Bivariate& q, const std::vector<BigInt>* rbar_coeffs, uint64_t p, int s,
                  uint64_t guard, int threads) {
    auto ctx = FqCtx::make(p, s);
    if (!ctx->order_fits_u64())
        throw EnumerationTooLarge("enumeration too large: p^s exceeds 2^64");
    const uint64_t qq = ctx->order().to_u64();
    if (qq > guard / qq)
        throw EnumerationTooLarge("enumeration too large: p^(2s) above the guard");
    int deg_x = 0;
    for (auto& t : q) deg_x = std::max(deg_x, t.a);
    SquareTable tab(*ctx);
    FqPoly rbar;
    if (rbar_coeffs) rbar = fqpoly_from_int_coeffs(*ctx, *rbar_coeffs);
    const FqPoly* rb = rbar_coeffs ? &rbar : nullptr;

    threads = std::max(1, threads);
    if (threads == 1 || qq < 64)
        return count_range(q, *ctx, tab, deg_x, rb, 0, qq);
    std::vector<std::future<BigInt>> futs;
    uint64_t chunk = (qq + threads - 1) / threads;
    for (int t = 0; t < threads; t++) {
        uint64_t lo = std::min<uint64_t>(qq, (uint64_t)t * chunk);
        uint64_t hi = std::min<uint64_t>(qq, lo + chunk);
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
            return count_range(q, *ctx, tab, deg_x, rb, lo, hi);
        }));
    }
    BigInt total(0);
    for (auto& f : futs) total += f.get();
    return total;
}

}  // namespace

BigInt count_affine_surface(const Bivariate& q, uint64_t p, int s, uint64_t guard, int threads) {
    return count_impl(q, nullptr, p, s, guard, threads);
}

BigInt count_affine_surface_off_locus(const Bivariate& q, const std::vector<BigInt>& rbar,
                                      uint64_t p, int s, uint64_t guard, int threads) {
    return count_impl(q, &rbar, p, s, guard, threads);
}

std::vector<Rational> rational_function_series(const RationalFunction& z, int n) {
    // N / D mod T^(n+1) over Q
    std::vector<Rational> num(n + 1, Rational(0)), den(n + 1, Rational(0)), out(n + 1, Rational(0));
    for (int i = 0; i <= n && i < (int)z.num.size(); i++) num[i] = Rational(z.num[i]);
    for (int i = 0; i <= n && i < (int)z.den.size(); i++) den[i] = Rational(z.den[i]);
    if (den[0].is_zero()) throw std::domain_error("rational_function_series: denominator at 0");
    for (int k = 0; k <= n; k++) {
        Rational acc = num[k];
        for (int j = 1; j <= k; j++) acc -= den[j] * out[k - j];
        out[k] = acc / den[0];
    }
    return out;
}

std::vector<BigInt> counts_from_zeta(const RationalFunction& z, int s_max) {
    // T Z'(T)/Z(T) = T (N' D - N D') / (N D)
    if (z.num.is_zero()) throw std::domain_error("counts_from_zeta: zero zeta");
    RationalFunction logder;
    logder.num = (z.num.derivative() * z.den - z.num * z.den.derivative()).shifted(1);
    logder.den = z.num * z.den;
    if (logder.den[0] != BigInt(1) && logder.den[0] != BigInt(-1)) {
        // zeta functions must have Z(0) = 1
        if (logder.den[0].is_zero()) throw std::domain_error("counts_from_zeta: Z(0) undefined");
    }
    std::vector<Rational> series = rational_function_series(logder, s_max);
    std::vector<BigInt> counts;
    for (int s = 1; s <= s_max; s++) {
        const Rational& c = series[s];
        if (!c.is_integer() || c.sign() < 0)
            throw std::runtime_error("inconsistent zeta: non-integer or negative point count");
        counts.push_back(c.num());
    }
    return counts;
}

std::vector<Rational> zeta_series_from_counts(const std::vector<BigInt>& counts, int s_max) {
    // exp(L) with L = sum counts[s-1] T^s / s, via E' = L' E
    std::vector<Rational> lder(s_max, Rational(0));  // coefficient of T^s in L' is counts[s]
    for (int s = 1; s <= s_max && s <= (int)counts.size(); s++)
        lder[s - 1] = Rational(counts[s - 1]);
    std::vector<Rational> e(s_max + 1, Rational(0));
    e[0] = Rational(1);
    for (int k = 1; k <= s_max; k++) {
        Rational acc(0);
        for (int j = 0; j < k; j++) acc += lder[k - 1 - j] * e[j];
        e[k] = acc / Rational(k);
    }
    return e;
}

}  // namespace pzeta
