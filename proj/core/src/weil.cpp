#include "pzeta/weil.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace pzeta {

namespace {

QPoly qpoly_derivative(const QPoly& f) { return f.derivative(); }

int sign_at(const QPoly& f, const Rational& x) { return f.eval(x).sign(); }

// primitive-normalized Sturm chain (signs preserved)
std::vector<QPoly> sturm_chain(const QPoly& f) {
    std::vector<QPoly> chain;
    QPoly a = f, b = qpoly_derivative(f);
    chain.push_back(a);
    while (!b.is_zero()) {
        chain.push_back(b);
        QPoly q, r;
        poly_divmod(a, b, q, r);
        r = -r;
        // normalize by a positive rational content to tame coefficient growth
        if (!r.is_zero()) {
            Rational big(0);
            for (size_t i = 0; i < r.size(); i++)
                if (r[i].abs() > big) big = r[i].abs();
            if (!big.is_zero()) r = r.scaled(big.inv());
        }
        a = std::move(b);
        b = std::move(r);
    }
    return chain;
}

int64_t sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
    int64_t changes = 0;
    int prev = 0;
    for (auto& f : chain) {
        int s = sign_at(f, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) changes++;
        prev = s;
    }
    return changes;
}

}  // namespace

int64_t sturm_count_open(const QPoly& f, const Rational& a, const Rational& b) {
    if (f.is_zero()) return 0;
    QPoly g = f;
    // remove roots exactly at the endpoints so the (a, b] convention reads as (a, b)
    QPoly lin_a(std::vector<Rational>{-a, Rational(1)});
    QPoly lin_b(std::vector<Rational>{-b, Rational(1)});
    while (!g.is_zero() && g.eval(a).is_zero()) g = poly_divexact(g, lin_a);
    while (!g.is_zero() && g.eval(b).is_zero()) g = poly_divexact(g, lin_b);
    if (g.degree() < 1) return 0;
    std::vector<QPoly> chain = sturm_chain(g);
    return sign_changes(chain, a) - sign_changes(chain, b);
}

bool weight2_circle_test(const ZPoly& w, uint64_t q) {
    if (w.is_zero() || w[0] != BigInt(1)) return false;
    const int64_t D = w.degree();
    if (D == 0) return true;
    // W(z) = sum a_i q^(D-i) z^i has the roots z = q T_0; want |z| = 1
    std::vector<BigInt> wc;
    wc.reserve((size_t)D + 1);
    for (int64_t i = 0; i <= D; i++)
        wc.push_back(w[(size_t)i] * BigInt::pow_u64(BigInt((int64_t)q), (uint64_t)(D - i)));
    ZPoly W(std::move(wc));
    if (W.degree() != D) return false;  // a_D vanished: roots off the circle
    // self-inversive sign
    int eps = 0;
    bool plus = true, minus = true;
    for (int64_t i = 0; i <= D; i++) {
        if (W[(size_t)i] != W[(size_t)(D - i)]) plus = false;
        if (W[(size_t)i] != -W[(size_t)(D - i)]) minus = false;
    }
    if (plus) eps = 1;
    else if (minus) eps = -1;
    else return false;

    ZPoly V = W;
    auto divide_linear = [&](int64_t root_sign) {
        // divide by (z - root_sign)
        ZPoly lin(std::vector<BigInt>{BigInt(-root_sign), BigInt(1)});
        ZPoly qq, rr;
        poly_divmod(V, lin, qq, rr);
        if (!rr.is_zero()) return false;
        V = qq;
        return true;
    };
    if (eps == -1) {
        if (!divide_linear(1)) return false;  // z = 1 is forced
    }
    if (V.degree() % 2 == 1) {
        if (!divide_linear(-1)) return false;  // z = -1 is forced
    }
    // V should now be palindromic of even degree
    const int64_t n = V.degree();
    if (n % 2 != 0) return false;
    for (int64_t i = 0; i <= n; i++)
        if (V[(size_t)i] != V[(size_t)(n - i)]) return false;
    const int64_t e = n / 2;
    // g(x) with V(z) = z^e g(z + 1/z): Dickson basis G_0 = 2, G_1 = x,
    // G_k = x G_(k-1) - G_(k-2)
    std::vector<ZPoly> dick;
    dick.push_back(ZPoly(std::vector<BigInt>{BigInt(2)}));
    dick.push_back(ZPoly(std::vector<BigInt>{BigInt(0), BigInt(1)}));
    for (int64_t k = 2; k <= e; k++)
        dick.push_back(dick[(size_t)k - 1].shifted(1) - dick[(size_t)k - 2]);
    ZPoly g = ZPoly(std::vector<BigInt>{V[(size_t)e]});
    for (int64_t k = 1; k <= e; k++) g = g + dick[(size_t)k].scaled(V[(size_t)(e + k)]);
    if (e == 0) return true;
    if (g.degree() != e) return false;
    // all roots of g must be real in [-2, 2]
    QPoly gq = qpoly_from_zpoly(g);
    QPoly sq = poly_gcd(gq, gq.derivative());
    QPoly gsf = sq.degree() > 0 ? poly_divexact(gq, sq) : gq;
    // deflate the endpoint roots x = +-2 (z = +-1 double roots of V)
    int64_t deflated = 0;
    for (int64_t rs : {2, -2}) {
        QPoly lin(std::vector<Rational>{Rational(-rs), Rational(1)});
        while (!gsf.is_zero() && gsf.eval(Rational(rs)).is_zero()) {
            gsf = poly_divexact(gsf, lin);
            deflated++;
        }
    }
    (void)deflated;
    if (gsf.degree() < 1) return true;
    int64_t inside = sturm_count_open(gsf, Rational(-2), Rational(2));
    return inside == gsf.degree();
}

std::vector<std::complex<double>> complex_roots(const std::vector<double>& coeffs) {
    // Durand-Kerner; adequate for the small fibre numerators
    int n = (int)coeffs.size() - 1;
    while (n > 0 && coeffs[(size_t)n] == 0.0) n--;
    std::vector<std::complex<double>> z((size_t)n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> cur(1.0, 0.0);
    for (int i = 0; i < n; i++) {
        cur *= seed;
        z[(size_t)i] = cur;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc(0.0, 0.0);
        for (int i = n; i >= 0; i--) acc = acc * x + coeffs[(size_t)i];
        return acc;
    };
    const double lead = coeffs[(size_t)n];
    for (int iter = 0; iter < 500; iter++) {
        double moved = 0;
        for (int i = 0; i < n; i++) {
            std::complex<double> denom(lead, 0.0);
            for (int j = 0; j < n; j++)
                if (j != i) denom *= z[(size_t)i] - z[(size_t)j];
            std::complex<double> delta = eval(z[(size_t)i]) / denom;
            z[(size_t)i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

}  // namespace pzeta
