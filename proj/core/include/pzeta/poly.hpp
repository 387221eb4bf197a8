#ifndef PZETA_POLY_HPP
#define PZETA_POLY_HPP

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pzeta/rational.hpp"

namespace pzeta {

// Ring glue for the generic polynomial / matrix algorithms.  A scalar type
// participates by specializing ring_traits; the default covers types with
// value-semantics constructors from int64_t (BigInt, Rational).
template <class T>
struct ring_traits {
    static T zero_like(const T&) { return T(0); }
    static T one_like(const T&) { return T(1); }
    static bool is_zero(const T& x) { return x.is_zero(); }
    static T mul_small(const T& x, int64_t k) { return x * T(k); }
};

template <class T>
T zero_like(const T& x) { return ring_traits<T>::zero_like(x); }
template <class T>
T one_like(const T& x) { return ring_traits<T>::one_like(x); }
template <class T>
bool ring_is_zero(const T& x) { return ring_traits<T>::is_zero(x); }
template <class T>
T ring_mul_small(const T& x, int64_t k) { return ring_traits<T>::mul_small(x, k); }

// Dense univariate polynomial over a commutative ring T.
// Exact-zero leading coefficients are trimmed; degree() of the zero
// polynomial is reported as -1 (standing in for -infinity).
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }

    int64_t degree() const { return (int64_t)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    size_t size() const { return c_.size(); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](size_t i) const { return c_[i]; }
    T& mut(size_t i) { return c_[i]; }
    const T& lead() const { assert(!c_.empty()); return c_.back(); }

    T coeff_or(size_t i, const T& zero) const { return i < c_.size() ? c_[i] : zero; }

    Poly& trim() {
        while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
        return *this;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::vector<T> c;
        const size_t n = std::max(a.c_.size(), b.c_.size());
        c.reserve(n);
        const T zero = zero_like(a.c_[0]);
        for (size_t i = 0; i < n; i++)
            c.push_back(a.coeff_or(i, zero) + b.coeff_or(i, zero));
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        std::vector<T> c;
        c.reserve(c_.size());
        for (auto& x : c_) c.push_back(-x);
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]) * zero_like(b.c_[0]));
        for (size_t i = 0; i < a.c_.size(); i++)
            for (size_t j = 0; j < b.c_.size(); j++)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }

    Poly scaled(const T& s) const {
        std::vector<T> c;
        c.reserve(c_.size());
        for (auto& x : c_) c.push_back(x * s);
        return Poly(std::move(c));
    }

    Poly shifted(size_t k) const {  // * X^k
        if (is_zero() || k == 0) return *this;
        std::vector<T> c(c_.size() + k, zero_like(c_[0]));
        for (size_t i = 0; i < c_.size(); i++) c[i + k] = c_[i];
        return Poly(std::move(c));
    }

    Poly truncated(size_t n) const {  // mod X^n
        if (c_.size() <= n) return *this;
        return Poly(std::vector<T>(c_.begin(), c_.begin() + n));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> c;
        c.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); i++)
            c.push_back(ring_mul_small(c_[i], (int64_t)i));
        return Poly(std::move(c));
    }

    T eval(const T& x) const {
        if (is_zero()) return zero_like(x);
        T acc = c_.back();
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // reversal: X^n * P(1/X) for the stated n (n >= degree)
    Poly reversed(size_t n) const {
        assert((int64_t)n >= degree());
        if (is_zero()) return Poly();
        std::vector<T> c(n + 1, zero_like(c_[0]));
        for (size_t i = 0; i < c_.size(); i++) c[n - i] = c_[i];
        return Poly(std::move(c));
    }

private:
    std::vector<T> c_;
};

// polynomials over T again form a ring (matrices of polynomials, Berkowitz
// over polynomial entries).  one_like needs a sample coefficient for
// context-carrying scalars; nonzero polynomials provide one.
template <class T>
struct ring_traits<Poly<T>> {
    static Poly<T> zero_like(const Poly<T>&) { return Poly<T>(); }
    static Poly<T> one_like(const Poly<T>& x) {
        if (!x.is_zero()) return Poly<T>::constant(pzeta::one_like(x[0]));
        return Poly<T>::constant(pzeta::one_like(T{}));
    }
    static bool is_zero(const Poly<T>& x) { return x.is_zero(); }
    static Poly<T> mul_small(const Poly<T>& x, int64_t k) {
        if (x.is_zero()) return x;
        return x.scaled(ring_mul_small(pzeta::one_like(x[0]), k));
    }
};

// Euclidean division; requires the leading coefficient of b to be invertible
// (a division by it is performed).  a = q*b + r, deg r < deg b.
template <class T>
void poly_divmod(const Poly<T>& a, const Poly<T>& b, Poly<T>& q, Poly<T>& r) {
    if (b.is_zero()) throw std::domain_error("poly_divmod: zero divisor");
    if (a.degree() < b.degree()) { q = Poly<T>(); r = a; return; }
    const T zero = zero_like(b.lead());
    std::vector<T> rem(a.coeffs());
    std::vector<T> quo(a.degree() - b.degree() + 1, zero);
    const int64_t db = b.degree();
    for (int64_t i = a.degree(); i >= db; i--) {
        if (ring_is_zero(rem[i])) continue;
        T f = rem[i] / b.lead();
        quo[i - db] = f;
        for (int64_t j = 0; j <= db; j++) rem[i - db + j] = rem[i - db + j] - f * b[j];
    }
    // positions >= deg b were eliminated exactly; over approximate scalars
    // they survive only as zero-to-precision markers, so drop them
    // structurally to keep the remainder in canonical degree-< deg b form
    rem.resize((size_t)db);
    q = Poly<T>(std::move(quo));
    r = Poly<T>(std::move(rem));
}

template <class T>
Poly<T> poly_mod(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> q, r;
    poly_divmod(a, b, q, r);
    return r;
}

// Exact division; throws if a nonzero remainder (by ring_is_zero) survives.
template <class T>
Poly<T> poly_divexact(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> q, r;
    poly_divmod(a, b, q, r);
    if (!r.is_zero()) throw std::domain_error("poly_divexact: inexact division");
    return q;
}

// Monic gcd over a field.
template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        Poly<T> r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(one_like(a.lead()) / a.lead());
}

// Series inverse of a with a(0) invertible, modulo X^n.
template <class T>
Poly<T> series_inverse(const Poly<T>& a, size_t n) {
    if (a.is_zero() || ring_is_zero(a[0]))
        throw std::domain_error("series_inverse: constant term not invertible");
    const T one = one_like(a[0]);
    std::vector<T> inv;
    inv.reserve(n);
    inv.push_back(one / a[0]);
    const T zero = zero_like(a[0]);
    for (size_t k = 1; k < n; k++) {
        T acc = zero;
        for (size_t j = 1; j <= k && j < a.size(); j++) acc = acc + a[j] * inv[k - j];
        inv.push_back(-(acc / a[0]));
    }
    return Poly<T>(std::move(inv));
}

using QPoly = Poly<Rational>;
using ZPoly = Poly<BigInt>;

QPoly qpoly_from_int_coeffs(const std::vector<int64_t>& c);
std::string poly_to_string(const ZPoly& f, const std::string& var);

}  // namespace pzeta

#endif
