#ifndef PZETA_FQ_HPP
#define PZETA_FQ_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pzeta/bignum.hpp"
#include "pzeta/poly.hpp"

namespace pzeta {

// F_{p^s} with a fixed deterministic modulus: the lexicographically least
// monic irreducible of degree s (coefficient vectors ordered by their value
// sum c_i p^i), so fixtures are reproducible across runs.
class FqCtx {
public:
    static std::shared_ptr<const FqCtx> make(uint64_t p, int s);

    uint64_t p() const { return p_; }
    int s() const { return s_; }
    const std::vector<uint64_t>& modulus() const { return mod_; }  // c_0..c_{s-1}, x^s + sum c_i x^i
    const BigNat& order() const { return q_; }                     // p^s
    bool order_fits_u64() const { return q_.fits_u64(); }

private:
    uint64_t p_;
    int s_;
    std::vector<uint64_t> mod_;
    BigNat q_;
    FqCtx(uint64_t p, int s, std::vector<uint64_t> mod);
};

class Fq {
public:
    Fq() : ctx_(nullptr) {}
    Fq(const FqCtx* ctx, std::vector<uint64_t> c) : ctx_(ctx), c_(std::move(c)) {}
    static Fq zero(const FqCtx& ctx) { return Fq(&ctx, std::vector<uint64_t>(ctx.s(), 0)); }
    static Fq one(const FqCtx& ctx);
    static Fq from_int(const FqCtx& ctx, int64_t v);
    static Fq gen(const FqCtx& ctx);  // the class of x

    const FqCtx* ctx() const { return ctx_; }
    const std::vector<uint64_t>& coords() const { return c_; }
    bool is_zero() const;
    uint64_t index() const;  // sum c_i p^i (for table lookups; requires it fits)

    friend Fq operator+(const Fq& a, const Fq& b);
    friend Fq operator-(const Fq& a, const Fq& b);
    friend Fq operator*(const Fq& a, const Fq& b);
    friend Fq operator/(const Fq& a, const Fq& b);
    Fq operator-() const;
    bool operator==(const Fq& o) const { return c_ == o.c_; }
    bool operator!=(const Fq& o) const { return c_ != o.c_; }

    Fq inverse() const;
    Fq pow(const BigNat& e) const;
    // quadratic character: 0 for zero, +1 square, -1 non-square
    int chi() const;
    std::string to_string() const;

private:
    const FqCtx* ctx_;
    std::vector<uint64_t> c_;
};

template <>
struct ring_traits<Fq> {
    static Fq zero_like(const Fq& x) { return Fq::zero(*x.ctx()); }
    static Fq one_like(const Fq& x) { return Fq::one(*x.ctx()); }
    static bool is_zero(const Fq& x) { return x.is_zero(); }
    static Fq mul_small(const Fq& x, int64_t k) { return x * Fq::from_int(*x.ctx(), k); }
};

using FqPoly = Poly<Fq>;

FqPoly fqpoly_from_int_coeffs(const FqCtx& ctx, const std::vector<BigInt>& c);
bool fqpoly_is_squarefree(const FqPoly& f);

struct FqFactor {
    FqPoly factor;  // monic irreducible
    int multiplicity;
};

// full monic factorization (distinct-degree + equal-degree splitting with a
// deterministic seed); input need not be squarefree
std::vector<FqFactor> fq_factorize(const FqPoly& f);

// factorization of a squarefree polynomial; throws if gcd(f, f') != 1
std::vector<FqPoly> factor_squarefree(const FqPoly& f);

// roots of f lying in the coefficient field
std::vector<Fq> fq_roots(const FqPoly& f);

struct NodalFiber {
    Fq alpha;     // the unique double root
    FqPoly hpoly; // cofactor H with f = (X-alpha)^2 H, H(alpha) != 0
    int delta;    // -1 if H(alpha) is a square, +1 otherwise
};

// decomposes f = (X-alpha)^2 H(X) with H(alpha) != 0 and H squarefree;
// throws PencilError-style runtime_error "fiber not nodal" otherwise
NodalFiber unique_double_point(const FqPoly& f);

}  // namespace pzeta

#endif
