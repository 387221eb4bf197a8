#ifndef PZETA_POLYUTIL_HPP
#define PZETA_POLYUTIL_HPP

#include "pzeta/poly.hpp"

namespace pzeta {

// content (gcd of coefficients, sign of the leading coefficient)
BigInt zpoly_content(const ZPoly& f);
ZPoly zpoly_primitive_part(const ZPoly& f);
// gcd by the primitive pseudo-remainder sequence; result primitive with
// positive leading coefficient
ZPoly zpoly_gcd(const ZPoly& a, const ZPoly& b);
// Sylvester-style resultant via the subresultant PRS (exact over Z)
BigInt zpoly_resultant(const ZPoly& a, const ZPoly& b);

QPoly qpoly_from_zpoly(const ZPoly& f);
// clears denominators: f = (num / den) with num primitive-ish integral
void qpoly_clear_denominators(const QPoly& f, ZPoly& num, BigInt& den);

ZPoly zpoly_from_int_coeffs(const std::vector<int64_t>& c);
std::string zpoly_to_string(const ZPoly& f, const std::string& var);

}  // namespace pzeta

#endif
