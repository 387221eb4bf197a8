#include <cassert>

#include "pzeta/polyutil.hpp"

namespace pzeta {

BigInt zpoly_content(const ZPoly& f) {
    BigInt g(0);
    for (size_t i = 0; i < f.size(); i++) g = BigInt::gcd(g, f[i]);
    if (!f.is_zero() && f.lead().is_neg()) g = -g;
    return g;
}

ZPoly zpoly_primitive_part(const ZPoly& f) {
    if (f.is_zero()) return f;
    BigInt c = zpoly_content(f);
    std::vector<BigInt> out;
    out.reserve(f.size());
    for (size_t i = 0; i < f.size(); i++) out.push_back(f[i] / c);
    return ZPoly(std::move(out));
}

namespace {

// pseudo-remainder: lc(b)^(deg a - deg b + 1) a = q b + r, deg r < deg b
ZPoly zpoly_prem(const ZPoly& a, const ZPoly& b) {
    assert(!b.is_zero());
    ZPoly r = a;
    const int64_t db = b.degree();
    int64_t scale_left = a.degree() - db + 1;
    while (!r.is_zero() && r.degree() >= db) {
        int64_t k = r.degree() - db;
        ZPoly t = b.shifted((size_t)k).scaled(r.lead());
        r = r.scaled(b.lead()) - t;
        scale_left--;
    }
    for (; scale_left > 0; scale_left--) r = r.scaled(b.lead());
    return r;
}

BigInt divexact(const BigInt& a, const BigInt& b) {
    BigInt q, rem;
    BigInt::divmod(a, b, q, rem);
    assert(rem.is_zero());
    return q;
}

}  // namespace

ZPoly zpoly_gcd(const ZPoly& a0, const ZPoly& b0) {
    ZPoly a = zpoly_primitive_part(a0), b = zpoly_primitive_part(b0);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        ZPoly r = zpoly_primitive_part(zpoly_prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.lead().is_neg()) a = -a;
    return a;
}

// subresultant PRS resultant; Cohen, Algorithm 3.3.7
BigInt zpoly_resultant(const ZPoly& f0, const ZPoly& g0) {
    if (f0.is_zero() || g0.is_zero()) return BigInt(0);
    ZPoly a = f0, b = g0;
    bool neg = false;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
        std::swap(a, b);
    }
    if (b.degree() == 0) {
        BigInt r = BigInt::pow_u64(b.lead(), (uint64_t)a.degree());
        return neg ? -r : r;
    }
    BigInt g(1), h(1);
    while (true) {
        int64_t delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
        ZPoly r = zpoly_prem(a, b);
        if (r.is_zero()) return BigInt(0);
        BigInt denom = g * BigInt::pow_u64(h, (uint64_t)delta);
        std::vector<BigInt> c;
        c.reserve(r.size());
        for (size_t i = 0; i < r.size(); i++) c.push_back(divexact(r[i], denom));
        a = std::move(b);
        b = ZPoly(std::move(c));
        g = a.lead();
        if (delta >= 1)
            h = divexact(BigInt::pow_u64(g, (uint64_t)delta),
                         BigInt::pow_u64(h, (uint64_t)(delta - 1)));
        if (b.degree() == 0) {
            int64_t da = a.degree();
            BigInt num = BigInt::pow_u64(b.lead(), (uint64_t)da);
            BigInt res = da >= 1 ? divexact(num, BigInt::pow_u64(h, (uint64_t)(da - 1))) : num;
            return neg ? -res : res;
        }
    }
}
QPoly qpoly_from_zpoly(const ZPoly& f) {
    std::vector<Rational> c;
    c.reserve(f.size());
    for (size_t i = 0; i < f.size(); i++) c.emplace_back(f[i]);
    return QPoly(std::move(c));
}

void qpoly_clear_denominators(const QPoly& f, ZPoly& num, BigInt& den) {
    den = BigInt(1);
    for (size_t i = 0; i < f.size(); i++) {
        BigInt g = BigInt::gcd(den, f[i].den());
        den = den * (f[i].den() / g);
    }
    std::vector<BigInt> c;
    c.reserve(f.size());
    for (size_t i = 0; i < f.size(); i++) c.push_back(f[i].num() * (den / f[i].den()));
    num = ZPoly(std::move(c));
}

ZPoly zpoly_from_int_coeffs(const std::vector<int64_t>& c) {
    std::vector<BigInt> out;
    out.reserve(c.size());
    for (int64_t v : c) out.emplace_back(v);
    return ZPoly(std::move(out));
}

QPoly qpoly_from_int_coeffs(const std::vector<int64_t>& c) {
    std::vector<Rational> out;
    out.reserve(c.size());
    for (int64_t v : c) out.emplace_back(v);
    return QPoly(std::move(out));
}

std::string poly_to_string(const ZPoly& f, const std::string& var) {
    return zpoly_to_string(f, var);
}

std::string zpoly_to_string(const ZPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t i = f.size(); i-- > 0;) {
        if (f[i].is_zero()) continue;
        bool neg = f[i].is_neg();
        std::string mag = f[i].abs().to_decimal();
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0 || mag != "1") out += mag;
        if (i >= 1) {
            if (mag != "1") out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace pzeta
