#include "pzeta/fq.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace pzeta {

using u64 = uint64_t;
using u128 = unsigned __int128;

namespace {

u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulm(u64 a, u64 b, u64 p) { return (u64)(((u128)a * b) % p); }
u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

// dense F_p[x] helpers on raw coefficient vectors (ascending, trimmed)
using fpvec = std::vector<u64>;

void fp_trim(fpvec& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }

fpvec fp_mul(const fpvec& a, const fpvec& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    fpvec c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); i++) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); j++)
            c[i + j] = (u64)(((u128)a[i] * b[j] + c[i + j]) % p);
    }
    return c;
}

void fp_divmod(const fpvec& a, const fpvec& b, fpvec& q, fpvec& r, u64 p) {
    assert(!b.empty());
    r = a;
    fp_trim(r);
    if (r.size() < b.size()) { q.clear(); return; }
    q.assign(r.size() - b.size() + 1, 0);
    u64 inv_lead = invm(b.back(), p);
    for (size_t k = q.size(); k-- > 0;) {
        size_t i = k + b.size() - 1;
        if (r[i] == 0) continue;
        u64 f = mulm(r[i], inv_lead, p);
        q[k] = f;
        for (size_t j = 0; j < b.size(); j++)
            r[k + j] = subm(r[k + j], mulm(f, b[j], p), p);
    }
    fp_trim(r);
    fp_trim(q);
}

fpvec fp_mod(const fpvec& a, const fpvec& b, u64 p) {
    fpvec q, r;
    fp_divmod(a, b, q, r, p);
    return r;
}

fpvec fp_gcd(fpvec a, fpvec b, u64 p) {
    while (!b.empty()) {
        fpvec r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 il = invm(a.back(), p);
        for (auto& x : a) x = mulm(x, il, p);
    }
    return a;
}

fpvec fp_powmod(fpvec base, BigNat e, const fpvec& m, u64 p) {
    fpvec r{1};
    base = fp_mod(base, m, p);
    size_t nbits = e.bit_length();
    for (size_t i = 0; i < nbits; i++) {
        if ((e.limb(i / 64) >> (i % 64)) & 1) r = fp_mod(fp_mul(r, base, p), m, p);
        if (i + 1 < nbits) base = fp_mod(fp_mul(base, base, p), m, p);
    }
    return r;
}

fpvec fp_derivative(const fpvec& a, u64 p) {
    fpvec d;
    for (size_t i = 1; i < a.size(); i++) d.push_back(mulm(a[i], i % p, p));
    fp_trim(d);
    return d;
}

bool fp_irreducible(const fpvec& f, u64 p) {
    // Rabin test: x^(p^s) == x mod f, and x^(p^(s/t)) - x coprime to f for prime t | s
    const int s = (int)f.size() - 1;
    fpvec x{0, 1};
    BigNat ps = BigNat::pow_u64(BigNat(p), (u64)s);
    fpvec xps = fp_powmod(x, ps, f, p);
    fpvec diff = xps;
    // subtract x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = subm(diff[1], 1, p);
    fp_trim(diff);
    if (!diff.empty()) return false;
    for (int t = 2; t <= s; t++) {
        if (s % t != 0) continue;
        bool prime = true;
        for (int u = 2; u * u <= t; u++)
            if (t % u == 0) { prime = false; break; }
        if (!prime) continue;
        BigNat e = BigNat::pow_u64(BigNat(p), (u64)(s / t));
        fpvec xe = fp_powmod(x, e, f, p);
        fpvec d2 = xe;
        if (d2.size() < 2) d2.resize(2, 0);
        d2[1] = subm(d2[1], 1, p);
        fp_trim(d2);
        fpvec g = fp_gcd(f, d2, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

FqCtx::FqCtx(uint64_t p, int s, std::vector<uint64_t> mod)
    : p_(p), s_(s), mod_(std::move(mod)), q_(BigNat::pow_u64(BigNat(p), (u64)s)) {}

std::shared_ptr<const FqCtx> FqCtx::make(uint64_t p, int s) {
    if (s < 1) throw std::invalid_argument("FqCtx: s >= 1 required");
    if (s == 1) return std::shared_ptr<const FqCtx>(new FqCtx(p, 1, {0}));
    // enumerate monic f = x^s + sum c_i x^i by ascending sum c_i p^i
    std::vector<u64> c(s, 0);
    while (true) {
        // bump
        size_t i = 0;
        while (i < c.size()) {
            if (++c[i] < p) break;
            c[i] = 0;
            i++;
        }
        if (i == c.size()) throw std::runtime_error("FqCtx: no irreducible found");
        fpvec f(c.begin(), c.end());
        f.push_back(1);
        if (f[0] != 0 && fp_irreducible(f, p))
            return std::shared_ptr<const FqCtx>(new FqCtx(p, s, c));
    }
}

Fq Fq::one(const FqCtx& ctx) {
    std::vector<u64> c(ctx.s(), 0);
    c[0] = 1;
    return Fq(&ctx, std::move(c));
}

Fq Fq::from_int(const FqCtx& ctx, int64_t v) {
    std::vector<u64> c(ctx.s(), 0);
    int64_t m = v % (int64_t)ctx.p();
    if (m < 0) m += (int64_t)ctx.p();
    c[0] = (u64)m;
    return Fq(&ctx, std::move(c));
}

Fq Fq::gen(const FqCtx& ctx) {
    std::vector<u64> c(ctx.s(), 0);
    if (ctx.s() == 1) throw std::logic_error("Fq::gen: prime field has no generator element x");
    c[1] = 1;
    return Fq(&ctx, std::move(c));
}

bool Fq::is_zero() const {
    for (u64 x : c_)
        if (x) return false;
    return true;
}

uint64_t Fq::index() const {
    u64 idx = 0, pw = 1;
    for (int i = 0; i < ctx_->s(); i++) {
        idx += c_[i] * pw;
        pw *= ctx_->p();
    }
    return idx;
}

Fq operator+(const Fq& a, const Fq& b) {
    Fq r = a;
    for (int i = 0; i < a.ctx_->s(); i++) r.c_[i] = addm(r.c_[i], b.c_[i], a.ctx_->p());
    return r;
}

Fq operator-(const Fq& a, const Fq& b) {
    Fq r = a;
    for (int i = 0; i < a.ctx_->s(); i++) r.c_[i] = subm(r.c_[i], b.c_[i], a.ctx_->p());
    return r;
}

Fq Fq::operator-() const {
    Fq r = *this;
    for (int i = 0; i < ctx_->s(); i++) r.c_[i] = subm(0, c_[i], ctx_->p());
    return r;
}

Fq operator*(const Fq& a, const Fq& b) {
    const FqCtx& ctx = *a.ctx_;
    const u64 p = ctx.p();
    const int s = ctx.s();
    if (s == 1) return Fq(&ctx, {mulm(a.c_[0], b.c_[0], p)});
    std::vector<u64> prod(2 * s - 1, 0);
    for (int i = 0; i < s; i++) {
        if (!a.c_[i]) continue;
        for (int j = 0; j < s; j++)
            prod[i + j] = (u64)(((u128)a.c_[i] * b.c_[j] + prod[i + j]) % p);
    }
    // reduce by x^s = -modulus
    const auto& m = ctx.modulus();
    for (int k = 2 * s - 2; k >= s; k--) {
        u64 top = prod[k];
        if (!top) continue;
        prod[k] = 0;
        for (int i = 0; i < s; i++)
            if (m[i]) prod[k - s + i] = subm(prod[k - s + i], mulm(top, m[i], p), p);
    }
    prod.resize(s);
    return Fq(&ctx, std::move(prod));
}

Fq Fq::inverse() const {
    if (is_zero()) throw std::domain_error("Fq: inverse of zero");
    const u64 p = ctx_->p();
    if (ctx_->s() == 1) return Fq(ctx_, {invm(c_[0], p)});
    // extended Euclid against the modulus in F_p[x]
    fpvec r0 = ctx_->modulus();
    r0.push_back(1);
    fpvec r1(c_.begin(), c_.end());
    fp_trim(r1);
    fpvec t0{}, t1{1};
    while (!r1.empty()) {
        fpvec q, r2;
        fp_divmod(r0, r1, q, r2, p);
        fpvec t2 = t0;
        fpvec qt = fp_mul(q, t1, p);
        size_t n = std::max(t2.size(), qt.size());
        t2.resize(n, 0);
        for (size_t i = 0; i < qt.size(); i++) t2[i] = subm(t2[i], qt[i], p);
        fp_trim(t2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    assert(r0.size() == 1);
    u64 il = invm(r0[0], p);
    std::vector<u64> out(ctx_->s(), 0);
    for (size_t i = 0; i < t0.size(); i++) out[i] = mulm(t0[i], il, p);
    return Fq(ctx_, std::move(out));
}

Fq operator/(const Fq& a, const Fq& b) { return a * b.inverse(); }

Fq Fq::pow(const BigNat& e) const {
    Fq r = Fq::one(*ctx_);
    Fq base = *this;
    size_t nbits = e.bit_length();
    for (size_t i = 0; i < nbits; i++) {
        if ((e.limb(i / 64) >> (i % 64)) & 1) r = r * base;
        if (i + 1 < nbits) base = base * base;
    }
    return r;
}

int Fq::chi() const {
    if (is_zero()) return 0;
    BigNat e = (ctx_->order() - BigNat(1)).shr_bits(1);
    Fq v = pow(e);
    if (v == Fq::one(*ctx_)) return 1;
    return -1;
}

std::string Fq::to_string() const {
    std::string s = "[";
    for (int i = 0; i < ctx_->s(); i++) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + "]";
}

// ---------------------------------------------------------------- polynomials

FqPoly fqpoly_from_int_coeffs(const FqCtx& ctx, const std::vector<BigInt>& c) {
    std::vector<Fq> out;
    out.reserve(c.size());
    for (const auto& x : c) {
        BigInt m = BigInt::mod_euclid(x, BigInt((int64_t)ctx.p()));
        out.push_back(Fq::from_int(ctx, m.to_i64()));
    }
    return FqPoly(std::move(out));
}

bool fqpoly_is_squarefree(const FqPoly& f) {
    if (f.degree() <= 0) return true;
    FqPoly g = poly_gcd(f, f.derivative());
    return g.degree() == 0;
}

namespace {

FqPoly make_monic(const FqPoly& f) {
    return f.scaled(f.lead().inverse());
}

// deterministic xorshift for equal-degree splitting
struct DetRng {
    u64 state = 0x9e3779b97f4a7c15ull;
    u64 next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
};

FqPoly random_poly(DetRng& rng, const FqCtx& ctx, int64_t deg_below) {
    std::vector<Fq> c;
    for (int64_t i = 0; i < deg_below; i++) {
        std::vector<u64> coords(ctx.s());
        for (int j = 0; j < ctx.s(); j++) coords[j] = rng.next() % ctx.p();
        c.emplace_back(&ctx, std::move(coords));
    }
    return FqPoly(std::move(c));
}

FqPoly fq_powmod_poly(const FqPoly& base, const BigNat& e, const FqPoly& m) {
    FqPoly r = FqPoly::constant(Fq::one(*m.lead().ctx()));
    FqPoly b = poly_mod(base, m);
    size_t nbits = e.bit_length();
    for (size_t i = 0; i < nbits; i++) {
        if ((e.limb(i / 64) >> (i % 64)) & 1) r = poly_mod(r * b, m);
        if (i + 1 < nbits) b = poly_mod(b * b, m);
    }
    return r;
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
void edf(const FqPoly& f, int d, DetRng& rng, std::vector<FqPoly>& out) {
    if (f.degree() == d) {
        out.push_back(make_monic(f));
        return;
    }
    const FqCtx& ctx = *f.lead().ctx();
    BigNat qd = BigNat::pow_u64(ctx.order(), (u64)d);
    BigNat e = (qd - BigNat(1)).shr_bits(1);
    while (true) {
        FqPoly h = random_poly(rng, ctx, f.degree());
        if (h.degree() < 1) continue;
        FqPoly g = poly_gcd(f, h);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(poly_divexact(f, g), d, rng, out);
            return;
        }
        FqPoly hq = fq_powmod_poly(h, e, f);
        hq = hq - FqPoly::constant(Fq::one(ctx));
        g = poly_gcd(f, hq);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(poly_divexact(f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FqPoly> factor_squarefree(const FqPoly& f_in) {
    if (f_in.degree() < 1) return {};
    if (!fqpoly_is_squarefree(f_in))
        throw std::runtime_error("factor_squarefree: polynomial not squarefree");
    FqPoly f = make_monic(f_in);
    const FqCtx& ctx = *f.lead().ctx();
    DetRng rng;
    std::vector<FqPoly> out;
    // distinct-degree
    FqPoly x(std::vector<Fq>{Fq::zero(ctx), Fq::one(ctx)});
    FqPoly h = x;
    int d = 0;
    while (f.degree() >= 1) {
        d++;
        if (2 * d > f.degree()) {
            out.push_back(make_monic(f));
            break;
        }
        h = fq_powmod_poly(h, ctx.order(), f);
        FqPoly g = poly_gcd(f, h - x);
        if (g.degree() > 0) {
            edf(g, d, rng, out);
            f = poly_divexact(f, g);
        }
    }
    std::sort(out.begin(), out.end(), [](const FqPoly& a, const FqPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (size_t i = a.size(); i-- > 0;) {
            u64 ia = a[i].index(), ib = b[i].index();
            if (ia != ib) return ia < ib;
        }
        return false;
    });
    return out;
}

std::vector<FqFactor> fq_factorize(const FqPoly& f_in) {
    std::vector<FqFactor> out;
    if (f_in.degree() < 1) return out;
    FqPoly f = make_monic(f_in);
    FqPoly g = poly_gcd(f, f.derivative());
    FqPoly rad = (g.degree() == 0) ? f : poly_divexact(f, g);
    if (rad.degree() < 1)
        throw std::runtime_error("fq_factorize: inseparable polynomial");
    for (auto& irr : factor_squarefree(rad)) {
        int m = 0;
        while (true) {
            FqPoly q, r;
            poly_divmod(f, irr, q, r);
            if (!r.is_zero()) break;
            f = std::move(q);
            m++;
        }
        out.push_back({irr, m});
    }
    if (f.degree() >= 1) throw std::runtime_error("fq_factorize: inseparable residual factor");
    return out;
}

std::vector<Fq> fq_roots(const FqPoly& f) {
    std::vector<Fq> roots;
    if (f.degree() < 1) return roots;
    const FqCtx& ctx = *f.lead().ctx();
    FqPoly x(std::vector<Fq>{Fq::zero(ctx), Fq::one(ctx)});
    FqPoly xq = fq_powmod_poly(x, ctx.order(), f);
    FqPoly lin = poly_gcd(f, xq - x);
    // split the product of linear factors
    std::vector<FqPoly> stack{lin};
    DetRng rng;
    while (!stack.empty()) {
        FqPoly g = stack.back();
        stack.pop_back();
        if (g.degree() < 1) continue;
        if (g.degree() == 1) {
            roots.push_back(-(g[0] / g[1]));
            continue;
        }
        BigNat e = (ctx.order() - BigNat(1)).shr_bits(1);
        while (true) {
            FqPoly h = random_poly(rng, ctx, g.degree());
            if (h.degree() < 0) continue;
            FqPoly hq = fq_powmod_poly(h, e, g) - FqPoly::constant(Fq::one(ctx));
            FqPoly gg = poly_gcd(g, hq);
            if (gg.degree() > 0 && gg.degree() < g.degree()) {
                stack.push_back(gg);
                stack.push_back(poly_divexact(g, gg));
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const Fq& a, const Fq& b) { return a.index() < b.index(); });
    return roots;
}

NodalFiber unique_double_point(const FqPoly& f) {
    const FqCtx& ctx = *f.lead().ctx();
    FqPoly g = poly_gcd(f, f.derivative());
    if (g.degree() != 1) throw std::runtime_error("fiber not nodal: gcd(f, f') not linear");
    Fq alpha = -(g[0] / g[1]);
    // divide (X - alpha)^2 out of f
    FqPoly lin(std::vector<Fq>{-alpha, Fq::one(ctx)});
    FqPoly q1, r1;
    poly_divmod(f, lin, q1, r1);
    if (!r1.is_zero()) throw std::runtime_error("fiber not nodal: double root not a root");
    FqPoly q2, r2;
    poly_divmod(q1, lin, q2, r2);
    if (!r2.is_zero()) throw std::runtime_error("fiber not nodal: root not double");
    FqPoly q3, r3;
    poly_divmod(q2, lin, q3, r3);
    if (r3.is_zero()) throw std::runtime_error("fiber not nodal: root has multiplicity > 2");
    Fq halpha = q2.eval(alpha);
    if (halpha.is_zero()) throw std::runtime_error("fiber not nodal: cofactor vanishes at the node");
    if (!fqpoly_is_squarefree(q2))
        throw std::runtime_error("fiber not nodal: cofactor not squarefree");
    NodalFiber out;
    out.alpha = alpha;
    out.hpoly = q2;
    out.delta = halpha.chi() == 1 ? -1 : 1;
    return out;
}

}  // namespace pzeta
