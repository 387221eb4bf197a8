#ifndef PZETA_COUNTING_HPP
#define PZETA_COUNTING_HPP

#include <cstdint>
#include <vector>

#include "pzeta/bignum.hpp"
#include "pzeta/fq.hpp"
#include "pzeta/poly.hpp"

namespace pzeta {

// A bivariate polynomial with integer coefficients: sum of c * X^a * G^b.
struct BivariateTerm {
    BigInt c;
    int a;  // X exponent
    int b;  // Gamma exponent
};
using Bivariate = std::vector<BivariateTerm>;

// Rational function in T over the integers, N(0)=D(0)=1 for zeta functions.
struct RationalFunction {
    ZPoly num;
    ZPoly den;
};

struct EnumerationTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exact |{(x, gamma, z) in F_{p^s}^3 : z^2 = Q(x, gamma)}|
// guard: at most `guard` field-element evaluations (default 10^9)
BigInt count_affine_surface(const Bivariate& q, uint64_t p, int s,
                            uint64_t guard = 1000000000ull, int threads = 1);

// same count restricted to gamma with rbar(gamma) != 0
BigInt count_affine_surface_off_locus(const Bivariate& q, const std::vector<BigInt>& rbar,
                                      uint64_t p, int s, uint64_t guard = 1000000000ull,
                                      int threads = 1);

// coefficients of T d/dT log Z(T) for s = 1..s_max; throws "inconsistent zeta"
// if a non-integer or negative count appears
std::vector<BigInt> counts_from_zeta(const RationalFunction& z, int s_max);

// exp(sum counts[s-1] T^s / s) as a rational power series mod T^(s_max+1)
std::vector<Rational> zeta_series_from_counts(const std::vector<BigInt>& counts, int s_max);

// series expansion of z mod T^(n+1) over Q
std::vector<Rational> rational_function_series(const RationalFunction& z, int n);

}  // namespace pzeta

#endif
