#ifndef PZETA_INTFACTOR_HPP
#define PZETA_INTFACTOR_HPP

#include <string>
#include <vector>

#include "pzeta/bignum.hpp"
#include "pzeta/poly.hpp"

namespace pzeta {

struct PrimePower {
    BigNat prime;  // prime (or, rarely, an unsplit composite cofactor)
    int exp;
    bool certified_prime;
};

// trial division + Pollard rho with a bounded effort; an unfactored cofactor
// is reported as a single term with certified_prime = false
std::vector<PrimePower> factor_integer(const BigNat& n);

// `2^{3}` style display of one coefficient
std::string factored_string(const BigInt& n);
// the paper-style display of a polynomial: 1+2^{3}T^{1}+...
std::string factored_poly_string(const ZPoly& f, const std::string& var);

}  // namespace pzeta

#endif
