#include "pzeta/padic.hpp"

#include <algorithm>
#include <cassert>

namespace pzeta {

PadicCtx::PadicCtx(uint64_t p, int64_t max_digits) : p_(p), max_digits_(max_digits) {
    if (p < 3 || !is_prime_u64(p)) throw PadicError("PadicCtx: p must be an odd prime");
    pow_.reserve((size_t)max_digits + 1);
    BigNat cur(1);
    for (int64_t i = 0; i <= max_digits; i++) {
        pow_.push_back(cur);
        cur = cur.mul_u64(p);
    }
}

const BigNat& PadicCtx::pw(int64_t k) const {
    if (k < 0 || k > max_digits_) throw PadicError("PadicCtx: power out of range (raise context cap)");
    return pow_[(size_t)k];
}

BigNat PadicCtx::reduce(const BigNat& x, int64_t k) const {
    if (k <= 0) return BigNat();
    BigNat q, r;
    BigNat::divmod(x, pw(k), q, r);
    return r;
}

void PadicCtx::split(const BigNat& x, int64_t& t, BigNat& u) const {
    assert(!x.is_zero());
    t = 0;
    u = x;
    BigNat q;
    while (true) {
        uint64_t rem = BigNat::divmod_u64(u, p_, q);
        if (rem != 0) return;
        u = q;
        t++;
    }
}

BigNat PadicCtx::unit_inverse(const BigNat& u, int64_t k) const {
    if (k <= 0) return BigNat();
    // inverse mod p by Fermat, then Newton doubling up to p^k
    uint64_t u0 = 0;
    {
        BigNat q, r;
        BigNat::divmod(u, BigNat(p_), q, r);
        u0 = r.to_u64();
    }
    if (u0 == 0) throw PadicError("unit_inverse: not a unit");
    uint64_t inv0 = 1, base = u0 % p_, e = p_ - 2;
    while (e) {
        if (e & 1) inv0 = (uint64_t)(((unsigned __int128)inv0 * base) % p_);
        base = (uint64_t)(((unsigned __int128)base * base) % p_);
        e >>= 1;
    }
    BigNat x(inv0);
    int64_t have = 1;
    const BigNat two(2);
    while (have < k) {
        have = std::min(2 * have, k);
        // x <- x (2 - u x) mod p^have
        BigNat ux = reduce(u * x, have);
        BigNat corr;
        if (two >= ux)
            corr = two - ux;
        else
            corr = pw(have) + two - ux;
        x = reduce(x * corr, have);
    }
    return x;
}

// ---------------------------------------------------------------- PadicApprox

PadicApprox PadicApprox::exact_zero(const PadicCtx& ctx) {
    return PadicApprox(&ctx, kInf, kInf, BigNat());
}

PadicApprox PadicApprox::zero_to_precision(const PadicCtx& ctx, int64_t n) {
    if (n >= kInf) return exact_zero(ctx);
    return PadicApprox(&ctx, n, n, BigNat());
}

PadicApprox PadicApprox::from_integer(const PadicCtx& ctx, const BigInt& x, int64_t rel_digits) {
    if (x.is_zero()) return exact_zero(ctx);
    if (rel_digits < 0) rel_digits = ctx.max_digits() / 2;
    int64_t t;
    BigNat u;
    ctx.split(x.mag(), t, u);
    u = ctx.reduce(u, rel_digits);
    if (x.is_neg() && !u.is_zero()) u = ctx.pw(rel_digits) - u;
    return PadicApprox(&ctx, t, t + rel_digits, std::move(u));
}

PadicApprox PadicApprox::from_rational(const PadicCtx& ctx, const Rational& x, int64_t rel_digits) {
    if (x.is_zero()) return exact_zero(ctx);
    if (rel_digits < 0) rel_digits = ctx.max_digits() / 2;
    PadicApprox num = from_integer(ctx, x.num(), rel_digits);
    PadicApprox den = from_integer(ctx, x.den(), rel_digits);
    return num / den;
}

PadicApprox PadicApprox::from_parts(const PadicCtx& ctx, int64_t v, BigNat unit, int64_t n) {
    return make(ctx, v, n, std::move(unit));
}

// normalize a candidate (v, n, s) where s is known modulo p^(n-v)
PadicApprox PadicApprox::make(const PadicCtx& ctx, int64_t v, int64_t n, BigNat s) {
    if (n >= kInf) n = kInf;
    if (v >= n) return zero_to_precision(ctx, std::min(v, n));
    s = ctx.reduce(s, n - v);
    if (s.is_zero()) return zero_to_precision(ctx, n);
    int64_t t;
    BigNat u;
    ctx.split(s, t, u);
    v += t;
    if (v >= n) return zero_to_precision(ctx, n);
    return PadicApprox(&ctx, v, n, ctx.reduce(u, n - v));
}

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    const PadicCtx& ctx = *a.ctx_;
    int64_t n = std::min(a.n_, b.n_);
    int64_t v0 = std::min(a.v_, b.v_);
    if (v0 >= n) return PadicApprox::zero_to_precision(ctx, n);
    int64_t rel = n - v0;
    BigNat s;
    if (!a.u_.is_zero()) s = s + ctx.reduce(a.u_ * ctx.pw(a.v_ - v0), rel);
    if (!b.u_.is_zero()) s = s + ctx.reduce(b.u_ * ctx.pw(b.v_ - v0), rel);
    return PadicApprox::make(ctx, v0, n, std::move(s));
}

PadicApprox PadicApprox::operator-() const {
    if (!is_regular()) return *this;
    return PadicApprox(ctx_, v_, n_, ctx_->pw(n_ - v_) - u_);
}

PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) { return a + (-b); }

PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return PadicApprox::exact_zero(*(a.ctx_ ? a.ctx_ : b.ctx_));
    const PadicCtx& ctx = *a.ctx_;
    int64_t n = std::min(a.n_ + b.v_, b.n_ + a.v_);
    n = std::min(n, PadicApprox::kInf);
    int64_t v = a.v_ + b.v_;
    if (a.is_zero_to_precision() || b.is_zero_to_precision())
        return PadicApprox::zero_to_precision(ctx, std::min(n, v));
    int64_t rel = n - v;  // == min of the relative precisions
    BigNat u = ctx.reduce(a.u_ * b.u_, rel);
    return PadicApprox(a.ctx_, v, n, std::move(u));
}

PadicApprox operator/(const PadicApprox& a, const PadicApprox& b) {
    if (b.is_exact_zero()) throw PadicError("padic division by exact zero");
    if (b.is_zero_to_precision())
        throw InsufficientPrecision(
            "padic division by zero-to-precision value (divisor " + b.debug_string() +
            ", dividend " + a.debug_string() + ")");
    if (a.is_exact_zero()) return a;
    const PadicCtx& ctx = *a.ctx_;
    int64_t n = std::min(a.n_ - b.v_, b.n_ + a.v_ - 2 * b.v_);
    int64_t v = a.v_ - b.v_;
    if (a.is_zero_to_precision() || v >= n)
        return PadicApprox::zero_to_precision(ctx, std::min(n, v));
    int64_t rel = n - v;
    BigNat u = ctx.reduce(a.u_ * ctx.unit_inverse(b.u_, rel), rel);
    return PadicApprox(a.ctx_, v, n, std::move(u));
}

PadicApprox PadicApprox::mul_exact(const BigInt& k) const {
    if (is_exact_zero() || k.is_zero()) return exact_zero(*ctx_);
    return *this * from_integer(*ctx_, k, std::min(n_ - v_ + 1, ctx_->max_digits() / 2));
}

PadicApprox PadicApprox::div_exact(const BigInt& k) const {
    if (is_exact_zero()) return *this;
    return *this / from_integer(*ctx_, k, std::min(n_ - v_ + 1, ctx_->max_digits() / 2));
}

PadicApprox PadicApprox::shift(int64_t k) const {
    if (is_exact_zero()) return *this;
    return PadicApprox(ctx_, v_ + k, n_ >= kInf ? kInf : n_ + k, u_);
}

PadicApprox PadicApprox::truncated_abs(int64_t n) const {
    if (is_exact_zero() || n >= n_) return *this;
    return make(*ctx_, v_, n, u_);
}

PadicApprox PadicApprox::as_representative(int64_t n_work) const {
    if (is_exact_zero()) return *this;
    if (v_ >= n_work) return zero_to_precision(*ctx_, n_work);
    return make(*ctx_, v_, n_work, ctx_->reduce(u_, n_work - v_));
}

BigNat PadicApprox::residue(int64_t n) const {
    if (is_exact_zero()) return BigNat();
    if (v_ < 0) throw PadicError("residue: negative valuation");
    if (n_ < n) throw InsufficientPrecision("residue: claim below requested precision");
    if (v_ >= n) return BigNat();
    return ctx_->reduce(u_ * ctx_->pw(v_), n);
}

BigInt PadicApprox::symmetric_lift(const BigInt& bound) const {
    const BigInt zero(0);
    if (is_exact_zero()) return zero;
    if (v_ < 0) throw LiftOutOfBounds("symmetric_lift: negative valuation");
    int64_t n = n_;
    if (n >= kInf) n = v_ + (int64_t)u_.bit_length() / 1 + 1;  // exact value: any modulus beyond it
    const BigNat& modulus = ctx_->pw(std::min(n, ctx_->max_digits()));
    BigNat twob = (bound.mag() + bound.mag());
    if (modulus <= twob)
        throw LiftOutOfBounds("symmetric_lift: p^N <= 2*bound, lift not unique");
    BigNat z = residue(std::min(n, ctx_->max_digits()));
    if (z <= bound.mag()) return BigInt(z, false);
    BigNat neg = modulus - z;
    if (neg <= bound.mag()) return BigInt(neg, true);
    throw LiftOutOfBounds("symmetric_lift: no integer within bound (insufficient p-adic precision)");
}

bool PadicApprox::same_value_to(const PadicApprox& b, int64_t n) const {
    PadicApprox d = *this - b;
    if (d.is_exact_zero()) return true;
    return d.valuation() >= std::min(n, d.precision());
}

std::string PadicApprox::debug_string() const {
    if (is_exact_zero()) return "0 (exact)";
    const uint64_t p = ctx_->p();
    if (is_zero_to_precision())
        return "0 mod " + std::to_string(p) + "^" + std::to_string(n_);
    int64_t nprime = n_ - std::min<int64_t>(0, v_);
    return "p^" + std::to_string(v_) + " * " + u_.to_decimal() + " mod " +
           std::to_string(p) + "^" + std::to_string(nprime);
}

// ---------------------------------------------------------------- helpers

int64_t mat_precision_floor(const PadicMat& m) {
    int64_t f = PadicApprox::kInf;
    for (size_t i = 0; i < m.rows(); i++)
        for (size_t j = 0; j < m.cols(); j++)
            f = std::min(f, m.at(i, j).precision());
    return f;
}

int64_t mat_valuation_floor(const PadicMat& m) {
    int64_t f = PadicApprox::kInf;
    for (size_t i = 0; i < m.rows(); i++)
        for (size_t j = 0; j < m.cols(); j++)
            if (!m.at(i, j).is_exact_zero()) f = std::min(f, m.at(i, j).valuation());
    return f;
}

int64_t poly_valuation_floor(const PadicPoly& f) {
    int64_t v = PadicApprox::kInf;
    for (size_t i = 0; i < f.size(); i++)
        if (!f[i].is_exact_zero()) v = std::min(v, f[i].valuation());
    return v;
}

PadicPoly padic_poly_from_qpoly(const PadicCtx& ctx, const QPoly& f, int64_t rel_digits) {
    std::vector<PadicApprox> c;
    c.reserve(f.size());
    for (size_t i = 0; i < f.size(); i++)
        c.push_back(PadicApprox::from_rational(ctx, f[i], rel_digits));
    return PadicPoly(std::move(c));
}

PadicMat padic_mat_from_q(const PadicCtx& ctx, const Mat<Rational>& m, int64_t rel_digits) {
    PadicMat out(m.rows(), m.cols(), PadicApprox::exact_zero(ctx));
    for (size_t i = 0; i < m.rows(); i++)
        for (size_t j = 0; j < m.cols(); j++)
            out.at(i, j) = PadicApprox::from_rational(ctx, m.at(i, j), rel_digits);
    return out;
}

PadicPoly poly_as_representative(const PadicPoly& f, int64_t n_work) {
    std::vector<PadicApprox> c;
    c.reserve(f.size());
    for (size_t i = 0; i < f.size(); i++) c.push_back(f[i].as_representative(n_work));
    return PadicPoly(std::move(c));
}

PadicMat mat_as_representative(const PadicMat& m, int64_t n_work) {
    PadicMat out = m;
    for (size_t i = 0; i < m.rows(); i++)
        for (size_t j = 0; j < m.cols(); j++)
            out.at(i, j) = m.at(i, j).as_representative(n_work);
    return out;
}

PadicPoly poly_truncated_abs(const PadicPoly& f, int64_t n) {
    std::vector<PadicApprox> c;
    c.reserve(f.size());
    for (size_t i = 0; i < f.size(); i++) c.push_back(f[i].truncated_abs(n));
    return PadicPoly(std::move(c));
}

PadicPoly charpoly_division_free(const PadicMat& m) { return charpoly_berkowitz(m); }

PadicPoly padic_poly_divexact(const PadicPoly& a, const PadicPoly& b) {
    PadicPoly q, r;
    poly_divmod(a, b, q, r);
    for (size_t i = 0; i < r.size(); i++)
        if (r[i].is_regular())
            throw PadicError("padic_poly_divexact: remainder not zero to precision");
    return q;
}

}  // namespace pzeta
