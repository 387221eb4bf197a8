#include "pzeta/intfactor.hpp"

#include <algorithm>
#include <map>

namespace pzeta {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)(((unsigned __int128)a * b) % m);
}

// Pollard rho (Brent) on 64-bit values
uint64_t pollard_rho(uint64_t n, uint64_t seed) {
    if (n % 2 == 0) return 2;
    uint64_t x = seed % n, y = x, c = (seed >> 17 | 1) % n, d = 1;
    for (uint64_t i = 0; d == 1 && i < 2000000; i++) {
        x = (mulmod_u64(x, x, n) + c) % n;
        y = (mulmod_u64(y, y, n) + c) % n;
        y = (mulmod_u64(y, y, n) + c) % n;
        uint64_t diff = x > y ? x - y : y - x;
        if (diff == 0) return 0;
        d = (uint64_t)BigNat::gcd(BigNat(diff), BigNat(n)).to_u64();
    }
    return d == n ? 0 : d;
}

void factor_u64(uint64_t n, std::map<uint64_t, int>& out) {
    if (n <= 1) return;
    if (is_prime_u64(n)) {
        out[n]++;
        return;
    }
    for (uint64_t seed = 3; seed < 40; seed += 2) {
        uint64_t d = pollard_rho(n, seed);
        if (d > 1 && d < n) {
            factor_u64(d, out);
            factor_u64(n / d, out);
            return;
        }
    }
    out[n]++;  // give up; caller marks it uncertified
}

}  // namespace

std::vector<PrimePower> factor_integer(const BigNat& n0) {
    std::vector<PrimePower> out;
    if (n0.is_zero() || n0.is_one()) return out;
    BigNat n = n0;
    std::map<uint64_t, int> small;
    // trial division
    for (uint64_t d = 2; d < 100000 && !n.is_one(); d = d == 2 ? 3 : d + 2) {
        BigNat q;
        while (true) {
            uint64_t rem = BigNat::divmod_u64(n, d, q);
            if (rem != 0) break;
            small[d]++;
            n = q;
        }
        if (n.fits_u64() && n.to_u64() < d * d) break;
    }
    if (!n.is_one()) {
        if (n.fits_u64()) {
            factor_u64(n.to_u64(), small);
            n = BigNat(1);
        } else if (miller_rabin_probable_prime(n)) {
            out.push_back({n, 1, true});
            n = BigNat(1);
        }
    }
    for (auto& [prime, exp] : small)
        out.push_back({BigNat(prime), exp, is_prime_u64(prime)});
    if (!n.is_one()) out.push_back({n, 1, false});
    std::sort(out.begin(), out.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return out;
}

std::string factored_string(const BigInt& n) {
    if (n.is_zero()) return "0";
    std::string out = n.is_neg() ? "-" : "";
    if (n.mag().is_one()) return out + "1";
    auto fac = factor_integer(n.mag());
    for (size_t i = 0; i < fac.size(); i++)
        out += fac[i].prime.to_decimal() + "^{" + std::to_string(fac[i].exp) + "}";
    return out;
}

std::string factored_poly_string(const ZPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < f.size(); i++) {
        const BigInt& c = f[i];
        if (c.is_zero()) continue;
        if (i == 0) {
            out += c.to_decimal();
            continue;
        }
        out += c.is_neg() ? "-" : "+";
        std::string mag = factored_string(c.abs());
        out += mag + var + "^{" + std::to_string(i) + "}";
    }
    return out;
}

}  // namespace pzeta
