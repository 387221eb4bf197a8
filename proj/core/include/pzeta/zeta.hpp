#ifndef PZETA_ZETA_HPP
#define PZETA_ZETA_HPP

#include "pzeta/counting.hpp"
#include "pzeta/padic.hpp"
#include "pzeta/pencil.hpp"
#include "pzeta/plan.hpp"

namespace pzeta {

struct WeilDisambiguationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionRerunNeeded : std::runtime_error {
    int64_t suggested_n3;
    PrecisionRerunNeeded(const std::string& msg, int64_t n3)
        : std::runtime_error(msg), suggested_n3(n3) {}
};

// per-fibre zeta data entering the compactification formulas
struct FiberZeta {
    int64_t deg = 0;       // d_i
    int delta = 0;         // -1 iff H_i(alpha_i) is a square
    ZPoly numerator;       // P_i(T) over F_{p^{d_i}}
};

struct ZetaFactorization {
    ZPoly w2;               // the completed weight-2 factor, degree d - 2g
    int epsilon = 0;        // sign in the functional equation
    ZPoly p2_compact;       // (1 - qT) w2
    ZPoly p2_open;          // w2 * prod P_i(T^d_i)(1 + delta_i T^d_i)
    std::vector<FiberZeta> fibers;
    RationalFunction z_compact;  // 1 / ((1-T) p2_compact (1 - q^2 T))
    RationalFunction z_open;     // prod (1-(qT)^d_i) / (p2_open (1 - q^2 T))
    RationalFunction z_curves;   // Eqn for Z(C, T)
};

// P2(X, T) = C(q^2 T) / C(0) from the characteristic polynomial C = det(TI - F)
PadicPoly p2_open(const PadicMat& f, uint64_t q);

// zeta of the open surface from the (exact, reconstructed) P2 and the fibre degrees
RationalFunction zeta_open(const ZPoly& p2, const std::vector<int64_t>& fiber_degs, uint64_t q);

RationalFunction zeta_curves(const std::vector<FiberZeta>& fibers, uint64_t q);

// recovers (w2, epsilon, P2 compact) from the reversed characteristic
// polynomial det(I - TF) known modulo p^N and the exact fibre factors
struct WeilCompletion {
    ZPoly w2;
    int epsilon;
    ZPoly p2_compact;
};
WeilCompletion complete_weil(const PadicPoly& cstar_series, const std::vector<FiberZeta>& fibers,
                             uint64_t q, const PrecisionPlan& plan);

// full assembly from the H^2 Frobenius matrix
ZetaFactorization assemble_zeta(const PadicMat& h2, const std::vector<FiberZeta>& fibers,
                                uint64_t q, const PrecisionPlan& plan);

// exact Lefschetz verification against the enumeration oracle
struct LefschetzReport {
    bool pass = true;
    int s_failed = 0;
    std::vector<BigInt> zeta_counts;
    std::vector<BigInt> oracle_counts;
};
LefschetzReport verify_lefschetz(const RationalFunction& z_compact, int s_max,
                                 const Bivariate& surface, uint64_t p,
                                 uint64_t guard = 1000000000ull, int threads = 1);

// fibre zeta data from the singular-fibre analysis (counting path for g = 2)
std::vector<FiberZeta> fiber_zeta_data(const std::vector<SingularFiber>& fibers, int64_t g,
                                       uint64_t guard = 1000000000ull);

}  // namespace pzeta

#endif
