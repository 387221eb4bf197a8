#ifndef PZETA_BIGNUM_HPP
#define PZETA_BIGNUM_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pzeta {

// Arbitrary-precision unsigned integer, little-endian 64-bit limbs with no
// trailing zero limbs.  Schoolbook arithmetic throughout; operand sizes in
// this project stay in the tens of limbs.
class BigNat {
public:
    BigNat() = default;
    explicit BigNat(uint64_t v) { if (v) w_.push_back(v); }

    static BigNat from_decimal(std::string_view s);
    std::string to_decimal() const;

    bool is_zero() const { return w_.empty(); }
    bool is_one() const { return w_.size() == 1 && w_[0] == 1; }
    bool is_odd() const { return !w_.empty() && (w_[0] & 1); }
    size_t limbs() const { return w_.size(); }
    uint64_t limb(size_t i) const { return i < w_.size() ? w_[i] : 0; }
    size_t bit_length() const;
    uint64_t to_u64() const { return w_.empty() ? 0 : w_[0]; }
    bool fits_u64() const { return w_.size() <= 1; }

    int cmp(const BigNat& o) const;
    bool operator==(const BigNat& o) const { return w_ == o.w_; }
    bool operator!=(const BigNat& o) const { return w_ != o.w_; }
    bool operator<(const BigNat& o) const { return cmp(o) < 0; }
    bool operator<=(const BigNat& o) const { return cmp(o) <= 0; }
    bool operator>(const BigNat& o) const { return cmp(o) > 0; }
    bool operator>=(const BigNat& o) const { return cmp(o) >= 0; }

    friend BigNat operator+(const BigNat& a, const BigNat& b);
    // requires a >= b
    friend BigNat operator-(const BigNat& a, const BigNat& b);
    friend BigNat operator*(const BigNat& a, const BigNat& b);

    BigNat& operator+=(const BigNat& b) { *this = *this + b; return *this; }
    BigNat& operator-=(const BigNat& b) { *this = *this - b; return *this; }
    BigNat& operator*=(const BigNat& b) { *this = *this * b; return *this; }

    // a = q*b + r with 0 <= r < b; b must be nonzero.
    static void divmod(const BigNat& a, const BigNat& b, BigNat& q, BigNat& r);
    // division by a single limb; returns remainder.
    static uint64_t divmod_u64(const BigNat& a, uint64_t b, BigNat& q);

    static BigNat gcd(BigNat a, BigNat b);
    static BigNat pow_u64(const BigNat& base, uint64_t e);

    BigNat mul_u64(uint64_t m) const;
    BigNat shl_bits(unsigned s) const;
    BigNat shr_bits(unsigned s) const;

    // this mod 2 / lowest limb helpers for Miller-Rabin etc.
    static BigNat mulmod(const BigNat& a, const BigNat& b, const BigNat& m);
    static BigNat powmod(const BigNat& a, const BigNat& e, const BigNat& m);

private:
    std::vector<uint64_t> w_;
    BigNat& trim();
    friend struct BigNatOps;
};

// Signed arbitrary-precision integer.
class BigInt {
public:
    BigInt() : neg_(false) {}
    BigInt(int64_t v);
    explicit BigInt(BigNat m, bool neg = false) : neg_(neg), mag_(std::move(m)) { fix(); }

    static BigInt from_decimal(std::string_view s);
    std::string to_decimal() const;

    bool is_zero() const { return mag_.is_zero(); }
    bool is_neg() const { return neg_; }
    bool is_one() const { return !neg_ && mag_.is_one(); }
    const BigNat& mag() const { return mag_; }
    int sign() const { return mag_.is_zero() ? 0 : (neg_ ? -1 : 1); }
    int64_t to_i64() const;
    bool fits_i64() const;

    int cmp(const BigInt& o) const;
    bool operator==(const BigInt& o) const { return neg_ == o.neg_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const { return cmp(o) < 0; }
    bool operator<=(const BigInt& o) const { return cmp(o) <= 0; }
    bool operator>(const BigInt& o) const { return cmp(o) > 0; }
    bool operator>=(const BigInt& o) const { return cmp(o) >= 0; }

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt operator-() const { return BigInt(mag_, !neg_); }

    BigInt& operator+=(const BigInt& b) { *this = *this + b; return *this; }
    BigInt& operator-=(const BigInt& b) { *this = *this - b; return *this; }
    BigInt& operator*=(const BigInt& b) { *this = *this * b; return *this; }

    // truncated toward zero
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& b) const;
    BigInt operator%(const BigInt& b) const;

    // euclidean: remainder in [0, |b|)
    static BigInt mod_euclid(const BigInt& a, const BigInt& b);

    static BigInt gcd(const BigInt& a, const BigInt& b);
    static BigInt pow_u64(const BigInt& base, uint64_t e);
    static BigInt binomial(uint64_t n, uint64_t k);
    static BigInt factorial(uint64_t n);

    BigInt abs() const { return BigInt(mag_, false); }

private:
    bool neg_;
    BigNat mag_;
    void fix() { if (mag_.is_zero()) neg_ = false; }
};

// floor(log_p(x)) for x >= 1; exact integer powering, no floats.
int64_t ilog_floor(const BigNat& x, uint64_t p);
// smallest N with p^N >= x (x >= 1)
int64_t ilog_ceil(const BigNat& x, uint64_t p);
// largest t with p^t | x (x nonzero)
int64_t ord_p(const BigNat& x, uint64_t p);
int64_t ord_p(const BigInt& x, uint64_t p);

bool miller_rabin_probable_prime(const BigNat& n);
bool is_prime_u64(uint64_t n);

}  // namespace pzeta

#endif
