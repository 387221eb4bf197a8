#ifndef PZETA_KEDLAYA_HPP
#define PZETA_KEDLAYA_HPP

#include "pzeta/fq.hpp"
#include "pzeta/padic.hpp"
#include "pzeta/polyutil.hpp"

namespace pzeta {

// Action of the p-power Frobenius on H^1 of the fibre curve y^2 = Q(x, 0),
// on the basis x^i dx/y, 0 <= i < 2g.
struct FiberFrobenius {
    PadicMat f0;
    int64_t n1 = 0;  // certified absolute precision of the entries
    int64_t g = 0;
};

// working-precision requirements of the fibre computation
struct KedlayaBudget {
    int64_t series_len = 0;   // number of series terms kept
    int64_t top_level = 0;    // deepest y-pole level
    int64_t division_slack = 0;  // bound on the total ord_p of divisions
    int64_t cap = 0;          // working absolute precision
};
KedlayaBudget kedlaya_budget(uint64_t p, int64_t n1, int64_t g);

// Kedlaya's algorithm for the odd part of Monsky-Washnitzer H^1 of
// y^2 = q0(x), q0 monic of degree 2g+1 and squarefree mod p.
FiberFrobenius kedlaya_fiber(const ZPoly& q0, const PadicCtx& ctx, int64_t n1);

// numerator of the zeta function of the genus g-1 curve Z^2 = H(X) over the
// coefficient field of H (counting path; g <= 2)
ZPoly reduced_fiber_numerator(const FqPoly& h, int64_t g, uint64_t guard = 1000000000ull);

}  // namespace pzeta

#endif
