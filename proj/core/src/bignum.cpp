#include "pzeta/bignum.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pzeta {

using u64 = uint64_t;
using u128 = unsigned __int128;

BigNat& BigNat::trim() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
    return *this;
}

int BigNat::cmp(const BigNat& o) const {
    if (w_.size() != o.w_.size()) return w_.size() < o.w_.size() ? -1 : 1;
    for (size_t i = w_.size(); i-- > 0;)
        if (w_[i] != o.w_[i]) return w_[i] < o.w_[i] ? -1 : 1;
    return 0;
}

size_t BigNat::bit_length() const {
    if (w_.empty()) return 0;
    u64 top = w_.back();
    size_t b = 64 * (w_.size() - 1);
    while (top) { b++; top >>= 1; }
    return b;
}

BigNat operator+(const BigNat& a, const BigNat& b) {
    BigNat r;
    const size_t n = std::max(a.w_.size(), b.w_.size());
    r.w_.resize(n);
    u64 carry = 0;
    for (size_t i = 0; i < n; i++) {
        u128 s = (u128)a.limb(i) + b.limb(i) + carry;
        r.w_[i] = (u64)s;
        carry = (u64)(s >> 64);
    }
    if (carry) r.w_.push_back(carry);
    return r;
}

BigNat operator-(const BigNat& a, const BigNat& b) {
    assert(a.cmp(b) >= 0);
    BigNat r;
    r.w_.resize(a.w_.size());
    u64 borrow = 0;
    for (size_t i = 0; i < a.w_.size(); i++) {
        u128 d = (u128)a.w_[i] - b.limb(i) - borrow;
        r.w_[i] = (u64)d;
        borrow = (d >> 64) ? 1 : 0;
    }
    assert(borrow == 0);
    return r.trim();
}

BigNat operator*(const BigNat& a, const BigNat& b) {
    if (a.is_zero() || b.is_zero()) return BigNat();
    BigNat r;
    r.w_.assign(a.w_.size() + b.w_.size(), 0);
    for (size_t i = 0; i < a.w_.size(); i++) {
        u64 carry = 0;
        u64 ai = a.w_[i];
        for (size_t j = 0; j < b.w_.size(); j++) {
            u128 cur = (u128)ai * b.w_[j] + r.w_[i + j] + carry;
            r.w_[i + j] = (u64)cur;
            carry = (u64)(cur >> 64);
        }
        r.w_[i + b.w_.size()] += carry;
    }
    return r.trim();
}

BigNat BigNat::mul_u64(uint64_t m) const {
    if (m == 0 || is_zero()) return BigNat();
    BigNat r;
    r.w_.resize(w_.size());
    u64 carry = 0;
    for (size_t i = 0; i < w_.size(); i++) {
        u128 cur = (u128)w_[i] * m + carry;
        r.w_[i] = (u64)cur;
        carry = (u64)(cur >> 64);
    }
    if (carry) r.w_.push_back(carry);
    return r;
}

BigNat BigNat::shl_bits(unsigned s) const {
    if (is_zero() || s == 0) return *this;
    const unsigned limbshift = s / 64, bitshift = s % 64;
    BigNat r;
    r.w_.assign(w_.size() + limbshift + 1, 0);
    for (size_t i = 0; i < w_.size(); i++) {
        r.w_[i + limbshift] |= bitshift ? (w_[i] << bitshift) : w_[i];
        if (bitshift) r.w_[i + limbshift + 1] |= w_[i] >> (64 - bitshift);
    }
    return r.trim();
}

BigNat BigNat::shr_bits(unsigned s) const {
    const unsigned limbshift = s / 64, bitshift = s % 64;
    if (limbshift >= w_.size()) return BigNat();
    BigNat r;
    r.w_.assign(w_.size() - limbshift, 0);
    for (size_t i = 0; i < r.w_.size(); i++) {
        r.w_[i] = w_[i + limbshift] >> bitshift;
        if (bitshift && i + limbshift + 1 < w_.size())
            r.w_[i] |= w_[i + limbshift + 1] << (64 - bitshift);
    }
    return r.trim();
}

uint64_t BigNat::divmod_u64(const BigNat& a, uint64_t b, BigNat& q) {
    assert(b != 0);
    q.w_.assign(a.w_.size(), 0);
    u128 rem = 0;
    for (size_t i = a.w_.size(); i-- > 0;) {
        u128 cur = (rem << 64) | a.w_[i];
        q.w_[i] = (u64)(cur / b);
        rem = cur % b;
    }
    q.trim();
    return (u64)rem;
}

// Knuth TAOCP 4.3.1 Algorithm D.
void BigNat::divmod(const BigNat& a, const BigNat& b, BigNat& q, BigNat& r) {
    if (b.is_zero()) throw std::domain_error("BigNat::divmod: division by zero");
    if (a.cmp(b) < 0) { q = BigNat(); r = a; return; }
    if (b.w_.size() == 1) {
        u64 rem = divmod_u64(a, b.w_[0], q);
        r = BigNat(rem);
        return;
    }
    const unsigned shift = (unsigned)__builtin_clzll(b.w_.back());
    BigNat u = a.shl_bits(shift);
    BigNat v = b.shl_bits(shift);
    const size_t n = v.w_.size();
    const size_t m = u.w_.size() - n;
    u.w_.push_back(0);
    q.w_.assign(m + 1, 0);
    const u64 vtop = v.w_[n - 1];
    const u64 vtop2 = v.w_[n - 2];
    for (size_t j = m + 1; j-- > 0;) {
        u128 num = ((u128)u.w_[j + n] << 64) | u.w_[j + n - 1];
        u128 qhat = num / vtop;
        u128 rhat = num % vtop;
        if (qhat > ~(u64)0) { qhat = ~(u64)0; rhat = num - qhat * vtop; }
        while (rhat <= ~(u64)0 && qhat * vtop2 > ((rhat << 64) | u.w_[j + n - 2])) {
            qhat--;
            rhat += vtop;
        }
        // multiply-subtract
        u128 borrow = 0, carry = 0;
        for (size_t i = 0; i < n; i++) {
            u128 prod = qhat * v.w_[i] + carry;
            carry = prod >> 64;
            u128 sub = (u128)u.w_[i + j] - (u64)prod - borrow;
            u.w_[i + j] = (u64)sub;
            borrow = (sub >> 64) ? 1 : 0;
        }
        u128 subtop = (u128)u.w_[j + n] - carry - borrow;
        u.w_[j + n] = (u64)subtop;
        if (subtop >> 64) {
            // qhat one too large: add back
            qhat--;
            u128 c2 = 0;
            for (size_t i = 0; i < n; i++) {
                u128 sum = (u128)u.w_[i + j] + v.w_[i] + c2;
                u.w_[i + j] = (u64)sum;
                c2 = sum >> 64;
            }
            u.w_[j + n] += (u64)c2;
        }
        q.w_[j] = (u64)qhat;
    }
    q.trim();
    u.w_.resize(n);
    r = u.trim().shr_bits(shift);
}

BigNat BigNat::gcd(BigNat a, BigNat b) {
    while (!b.is_zero()) {
        BigNat q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigNat BigNat::pow_u64(const BigNat& base, uint64_t e) {
    BigNat r(1), b = base;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

BigNat BigNat::mulmod(const BigNat& a, const BigNat& b, const BigNat& m) {
    BigNat q, r;
    divmod(a * b, m, q, r);
    return r;
}

BigNat BigNat::powmod(const BigNat& a, const BigNat& e, const BigNat& m) {
    BigNat r(1), b = a, q, tmp;
    divmod(b, m, q, b);
    const size_t nbits = e.bit_length();
    for (size_t i = 0; i < nbits; i++) {
        if ((e.limb(i / 64) >> (i % 64)) & 1) r = mulmod(r, b, m);
        if (i + 1 < nbits) b = mulmod(b, b, m);
    }
    return r;
}

BigNat BigNat::from_decimal(std::string_view s) {
    BigNat r;
    for (char c : s) {
        if (c == '\'' || c == '_') continue;
        if (c < '0' || c > '9') throw std::invalid_argument("BigNat::from_decimal: bad digit");
        r = r.mul_u64(10) + BigNat((u64)(c - '0'));
    }
    return r;
}

std::string BigNat::to_decimal() const {
    if (is_zero()) return "0";
    std::string out;
    BigNat cur = *this, q;
    while (!cur.is_zero()) {
        u64 rem = divmod_u64(cur, 10000000000000000000ull, q);
        cur = q;
        for (int i = 0; i < 19; i++) {
            out.push_back(char('0' + rem % 10));
            rem /= 10;
        }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- BigInt

BigInt::BigInt(int64_t v) : neg_(v < 0) {
    u64 m = v < 0 ? (u64)(-(v + 1)) + 1 : (u64)v;
    mag_ = BigNat(m);
    fix();
}

int64_t BigInt::to_i64() const {
    int64_t m = (int64_t)mag_.to_u64();
    return neg_ ? -m : m;
}

bool BigInt::fits_i64() const {
    if (mag_.limbs() > 1) return false;
    u64 v = mag_.to_u64();
    return neg_ ? v <= (u64)1 << 63 : v < (u64)1 << 63;
}

int BigInt::cmp(const BigInt& o) const {
    if (sign() != o.sign()) return sign() < o.sign() ? -1 : 1;
    int c = mag_.cmp(o.mag_);
    return neg_ ? -c : c;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.neg_ == b.neg_) return BigInt(a.mag_ + b.mag_, a.neg_);
    int c = a.mag_.cmp(b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) return BigInt(a.mag_ - b.mag_, a.neg_);
    return BigInt(b.mag_ - a.mag_, b.neg_);
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    return BigInt(a.mag_ * b.mag_, a.neg_ != b.neg_);
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    BigNat qm, rm;
    BigNat::divmod(a.mag_, b.mag_, qm, rm);
    q = BigInt(std::move(qm), a.neg_ != b.neg_);
    r = BigInt(std::move(rm), a.neg_);
}

BigInt BigInt::operator/(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return r;
}

BigInt BigInt::mod_euclid(const BigInt& a, const BigInt& b) {
    BigInt r = a % b;
    if (r.is_neg()) r += b.abs();
    return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    return BigInt(BigNat::gcd(a.mag_, b.mag_), false);
}

BigInt BigInt::pow_u64(const BigInt& base, uint64_t e) {
    return BigInt(BigNat::pow_u64(base.mag_, e), base.neg_ && (e & 1));
}

BigInt BigInt::binomial(uint64_t n, uint64_t k) {
    if (k > n) return BigInt();
    if (k > n - k) k = n - k;
    BigInt r(1);
    for (uint64_t i = 1; i <= k; i++) {
        r *= BigInt((int64_t)(n - k + i));
        BigInt q, rem;
        divmod(r, BigInt((int64_t)i), q, rem);
        r = q;
    }
    return r;
}

BigInt BigInt::factorial(uint64_t n) {
    BigInt r(1);
    for (uint64_t i = 2; i <= n; i++) r *= BigInt((int64_t)i);
    return r;
}

BigInt BigInt::from_decimal(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    return BigInt(BigNat::from_decimal(s), neg);
}

std::string BigInt::to_decimal() const {
    return (neg_ ? "-" : "") + mag_.to_decimal();
}

// ---------------------------------------------------------------- misc

int64_t ilog_floor(const BigNat& x, uint64_t p) {
    assert(!x.is_zero());
    int64_t t = 0;
    BigNat pw(p);
    while (pw <= x) { pw = pw.mul_u64(p); t++; }
    return t;
}

int64_t ilog_ceil(const BigNat& x, uint64_t p) {
    assert(!x.is_zero());
    int64_t t = 0;
    BigNat pw(1);
    while (pw < x) { pw = pw.mul_u64(p); t++; }
    return t;
}

int64_t ord_p(const BigNat& x, uint64_t p) {
    assert(!x.is_zero());
    int64_t t = 0;
    BigNat cur = x, q;
    while (true) {
        uint64_t rem = BigNat::divmod_u64(cur, p, q);
        if (rem != 0) return t;
        cur = q;
        t++;
    }
}

int64_t ord_p(const BigInt& x, uint64_t p) { return ord_p(x.mag(), p); }

bool miller_rabin_probable_prime(const BigNat& n) {
    if (n < BigNat(2)) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        BigNat q, r;
        BigNat::divmod(n, BigNat(sp), q, r);
        if (r.is_zero()) return n == BigNat(sp);
    }
    BigNat nm1 = n - BigNat(1);
    BigNat d = nm1;
    uint64_t s = 0;
    while (!d.is_odd()) { d = d.shr_bits(1); s++; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        BigNat x = BigNat::powmod(BigNat(a), d, n);
        if (x.is_one() || x == nm1) continue;
        bool witness = true;
        for (uint64_t i = 1; i < s; i++) {
            x = BigNat::mulmod(x, x, n);
            if (x == nm1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

bool is_prime_u64(uint64_t n) { return miller_rabin_probable_prime(BigNat(n)); }

}  // namespace pzeta
