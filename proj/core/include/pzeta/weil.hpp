#ifndef PZETA_WEIL_HPP
#define PZETA_WEIL_HPP

#include <complex>
#include <vector>

#include "pzeta/polyutil.hpp"

namespace pzeta {

// Decides whether every complex root of w lies on |T| = 1/q, i.e. whether w
// is the reciprocal of a weight-2 Weil polynomial w.r.t. q.  Exact: the
// self-inversive normalization is transformed through x = z + 1/z and the
// real-rootedness in [-2, 2] is decided by Sturm chains over Q.  (Stricter
// than any fixed floating tolerance.)
bool weight2_circle_test(const ZPoly& w, uint64_t q);

// count of distinct real roots of f in the open interval (a, b), by Sturm
int64_t sturm_count_open(const QPoly& f, const Rational& a, const Rational& b);

// small-degree complex roots by Durand-Kerner (double precision); used for
// the numerical Weil sanity checks on fibre numerators
std::vector<std::complex<double>> complex_roots(const std::vector<double>& coeffs);

}  // namespace pzeta

#endif
