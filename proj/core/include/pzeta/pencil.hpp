#ifndef PZETA_PENCIL_HPP
#define PZETA_PENCIL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pzeta/counting.hpp"
#include "pzeta/fq.hpp"
#include "pzeta/matrix.hpp"
#include "pzeta/polyutil.hpp"
#include "pzeta/rational.hpp"

namespace pzeta {

struct PencilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Z^2 = Q(X, Gamma) over F_p, Q integral, monic in X of odd degree 2g+1.
struct SurfaceInput {
    uint64_t p = 0;
    Bivariate terms;
    int64_t g = 0;          // genus of the generic fibre
    int64_t h = 0;          // deg_Gamma Q
    int64_t delta_x = 0;    // 2g + 1

    // Q as a polynomial in X with Z[Gamma] coefficients
    std::vector<ZPoly> x_coeffs;  // index = X power, length delta_x + 1
};

// structural validation (prime p, monic odd X-degree >= 3, integral terms);
// arithmetic assumptions are the gate's job
SurfaceInput make_surface_input(uint64_t p, Bivariate terms);

struct ExponentReport {
    std::vector<Rational> e_inf;   // eigenvalues of -b_{d-1}, with multiplicity
    bool finite_nilpotent = false; // charpoly(b mod r) == T^{2g}
    bool inf_rational = false;     // charpoly of -b_{d-1} splits over Q
    bool prepared = true;          // no two exponents at one point differ by a positive integer
    bool inf_has_zero = false;
    bool inf_has_positive_integer = false;
    int64_t rho = 1;
    int64_t delta_bound = 0;  // minimal integer >= |lambda| over all exponents
    int64_t nden = 1;         // lcm of exponent denominators
};

struct ConnectionData {
    Mat<QPoly> b;      // numerator matrix, 2g x 2g, p-integral coefficients
    QPoly r;           // monic denominator, degree d
    ZPoly res;         // the full Sylvester resultant
    int64_t d = 0;     // deg r
    int64_t adj_deg = 0;  // deg_Gamma Adj(M)
    Mat<Rational> b_top;  // coefficient of Gamma^(d-1) in b
    ExponentReport exponents;
    Rational adj_ratio;  // deg Adj(M) / deg res
    Rational r_ratio;    // deg_Gamma R / (p deg res), R the Frobenius error term
};

// the Sylvester matrix of Q and dQ/dX w.r.t. X, and its determinant
void sylvester_and_resultant(const SurfaceInput& s, Mat<ZPoly>& m, ZPoly& res);

// Gauss-Manin connection nabla = d/dGamma + b/r on the basis X^i dX / sqrt(Q)
ConnectionData connection_matrix(const SurfaceInput& s);

ExponentReport local_exponent_data(const Mat<QPoly>& b, const QPoly& r);

// data of one singular fibre of the pencil
struct SingularFiber {
    int64_t deg = 0;                     // d_i = degree of the residue field over F_p
    std::shared_ptr<const FqCtx> field;  // F_{p^{d_i}}
    Fq gamma;                            // chosen root of the rbar-factor
    Fq alpha;                            // the unique double root of Qbar(X, gamma)
    FqPoly hpoly;                        // cofactor: Qbar(X, gamma) = (X-alpha)^2 H
    int delta = 0;                       // -1 iff H(alpha) is a square
};

std::vector<SingularFiber> analyze_singular_fibers(const SurfaceInput& s, const ConnectionData& c);

struct GateReport {
    std::vector<std::string> violations;  // machine-readable codes; empty = pass
    std::vector<std::string> warnings;
    bool pass() const { return violations.empty(); }
};

GateReport assumption_gate(const SurfaceInput& s, const ConnectionData& c);

// Q(X, 0) as an integral univariate polynomial
ZPoly fiber_polynomial_at_zero(const SurfaceInput& s);
// reduction of Q mod p as data for the counting oracle
Bivariate surface_terms(const SurfaceInput& s);

}  // namespace pzeta

#endif
