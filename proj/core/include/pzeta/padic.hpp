#ifndef PZETA_PADIC_HPP
#define PZETA_PADIC_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pzeta/bignum.hpp"
#include "pzeta/matrix.hpp"
#include "pzeta/poly.hpp"
#include "pzeta/rational.hpp"

namespace pzeta {

struct PadicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientPrecision : PadicError {
    using PadicError::PadicError;
};
struct LiftOutOfBounds : PadicError {
    using PadicError::PadicError;
};

// Shared per-run context: the prime and a table of its powers.  Immutable
// after construction, safe to share between workers.
class PadicCtx {
public:
    PadicCtx(uint64_t p, int64_t max_digits);

    uint64_t p() const { return p_; }
    int64_t max_digits() const { return max_digits_; }
    const BigNat& pw(int64_t k) const;

    // x mod p^k
    BigNat reduce(const BigNat& x, int64_t k) const;
    // strips the p-part of a nonzero x: x = p^t * u with p coprime to u
    void split(const BigNat& x, int64_t& t, BigNat& u) const;
    // inverse of a p-unit modulo p^k (Hensel lifting from mod p)
    BigNat unit_inverse(const BigNat& u, int64_t k) const;

private:
    uint64_t p_;
    int64_t max_digits_;
    std::vector<BigNat> pow_;
};

// A p^N-approximation of a p-adic number: the triple (precision N,
// valuation v, unit residue).  States:
//   regular           v < N, unit a p-unit stored modulo p^(N-v)
//   zero to precision v == N, unit empty ("the value is 0 modulo p^N")
//   exact zero        v = +infinity
// The represented value a always satisfies ord_p(a - lift) >= N.
class PadicApprox {
public:
    static constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

    PadicApprox() : ctx_(nullptr), v_(kInf), n_(kInf) {}

    static PadicApprox exact_zero(const PadicCtx& ctx);
    static PadicApprox zero_to_precision(const PadicCtx& ctx, int64_t n);
    // exact inputs enter at the stated relative precision (defaults to the
    // context cap)
    static PadicApprox from_integer(const PadicCtx& ctx, const BigInt& x, int64_t rel_digits = -1);
    static PadicApprox from_rational(const PadicCtx& ctx, const Rational& x, int64_t rel_digits = -1);
    static PadicApprox from_parts(const PadicCtx& ctx, int64_t v, BigNat unit, int64_t n);

    const PadicCtx* ctx() const { return ctx_; }
    bool is_exact_zero() const { return v_ >= kInf; }
    bool is_zero_to_precision() const { return !is_exact_zero() && v_ == n_; }
    bool is_regular() const { return ctx_ && v_ < n_; }
    int64_t valuation() const { return v_; }
    int64_t precision() const { return n_; }
    const BigNat& unit() const { return u_; }

    friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b);
    friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b);
    friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b);
    friend PadicApprox operator/(const PadicApprox& a, const PadicApprox& b);
    PadicApprox operator-() const;
    PadicApprox& operator+=(const PadicApprox& b) { *this = *this + b; return *this; }
    PadicApprox& operator-=(const PadicApprox& b) { *this = *this - b; return *this; }
    PadicApprox& operator*=(const PadicApprox& b) { *this = *this * b; return *this; }

    PadicApprox mul_exact(const BigInt& k) const;
    PadicApprox div_exact(const BigInt& k) const;
    // multiply by p^k (exact valuation shift)
    PadicApprox shift(int64_t k) const;

    // Lower the absolute precision claim to at most n (drops digits).
    PadicApprox truncated_abs(int64_t n) const;

    // Representative mode: truncate storage at absolute precision n_work and
    // *declare* the result known modulo p^n_work.  This deliberately ignores
    // the interval claim: it is only valid inside a stage whose output
    // accuracy is certified by an external bound (the ODE-truncation bound
    // for the recurrence, the form-growth bound for cohomology reduction),
    // and callers must relabel the stage output with that certified
    // precision before anything downstream consumes it.
    PadicApprox as_representative(int64_t n_work) const;

    // canonical residue of the value in [0, p^n); requires v >= 0, N >= n
    BigNat residue(int64_t n) const;

    // unique integer z with |z| <= bound and z = value mod p^N;
    // requires v >= 0 and p^N > 2*bound
    BigInt symmetric_lift(const BigInt& bound) const;

    // `p^v * u mod p^N'` in base-10 digits (N' = N - min(0, v))
    std::string debug_string() const;

    bool same_value_to(const PadicApprox& b, int64_t n) const;

private:
    const PadicCtx* ctx_;
    int64_t v_;  // valuation
    int64_t n_;  // absolute precision claim
    BigNat u_;   // unit part, reduced mod p^(n-v)
    PadicApprox(const PadicCtx* c, int64_t v, int64_t n, BigNat u)
        : ctx_(c), v_(v), n_(n), u_(std::move(u)) {}
    static PadicApprox make(const PadicCtx& ctx, int64_t v, int64_t n, BigNat s);
};

template <>
struct ring_traits<PadicApprox> {
    static PadicApprox zero_like(const PadicApprox& x) {
        return PadicApprox::exact_zero(*x.ctx());
    }
    static PadicApprox one_like(const PadicApprox& x) {
        return PadicApprox::from_integer(*x.ctx(), BigInt(1));
    }
    static bool is_zero(const PadicApprox& x) { return x.is_exact_zero(); }
    static PadicApprox mul_small(const PadicApprox& x, int64_t k) {
        return x.mul_exact(BigInt(k));
    }
};

using PadicPoly = Poly<PadicApprox>;
using PadicMat = Mat<PadicApprox>;

// min over entries of the precision claim (the matrix-level floor)
int64_t mat_precision_floor(const PadicMat& m);
// min over entries of the valuation (exact zeros ignored)
int64_t mat_valuation_floor(const PadicMat& m);
int64_t poly_valuation_floor(const PadicPoly& f);

PadicPoly padic_poly_from_qpoly(const PadicCtx& ctx, const QPoly& f, int64_t rel_digits = -1);
PadicMat padic_mat_from_q(const PadicCtx& ctx, const Mat<Rational>& m, int64_t rel_digits = -1);
PadicPoly poly_as_representative(const PadicPoly& f, int64_t n_work);
PadicMat mat_as_representative(const PadicMat& m, int64_t n_work);
PadicPoly poly_truncated_abs(const PadicPoly& f, int64_t n);

// division-free characteristic polynomial det(T*I - M)
PadicPoly charpoly_division_free(const PadicMat& m);

// exact division: remainder must vanish to its precision, else throws
PadicPoly padic_poly_divexact(const PadicPoly& a, const PadicPoly& b);

}  // namespace pzeta

#endif
