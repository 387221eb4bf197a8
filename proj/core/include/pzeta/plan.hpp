#ifndef PZETA_PLAN_HPP
#define PZETA_PLAN_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "pzeta/bignum.hpp"
#include "pzeta/rational.hpp"

namespace pzeta {

// floor/ceil log_p on machine integers, exact powering only
int64_t ilog_floor_u64(uint64_t x, uint64_t p);
int64_t ilog_ceil_u64(uint64_t x, uint64_t p);

// Christol-Dwork constant B_{m,p} = m-1 + ord_p((m-1)!) + min{m-1, ord_p prod C(m,j)}
int64_t christol_dwork_bound(int64_t m, uint64_t p);

struct GrowthConstants {
    int64_t alpha;   // coefficient of floor(log_p(pole order))
    Rational beta;   // additive part (rational; integer logs rounded up)
    int64_t alpha2;
    Rational beta2;
};

// The explicit constants chain for the form-growth bound.  `nilpotent`
// selects the zero-eigenvalue case; otherwise Delta bounds |eigenvalue| and
// nden is a common denominator, both as verified by the exponent report.
GrowthConstants growth_constants(int64_t m, uint64_t p, int64_t delta_bound, int64_t nden,
                                 bool nilpotent);

// Certified lower bounds on ord_p of the r-adic coefficients f_k of the
// relative Frobenius matrix.
struct DecayFloor {
    uint64_t p = 0;
    Rational adj_ratio;  // deg_G Adj(M) / deg_G res
    Rational r_ratio;    // deg_G R / (p deg_G res)
    bool infinity_side_finite = false;  // adj_ratio + r_ratio <= 1: pole at infinity certified finite
    int64_t zero_beyond = -1;           // if finite: f_k = 0 for k > zero_beyond

    int64_t floor_fin(int64_t k_abs) const;  // k < 0 side, |k| = k_abs
    int64_t ell_inf(int64_t k) const;        // the series index driving the k >= 0 bound
    int64_t floor_inf(int64_t k) const;      // k >= 0 side
};

DecayFloor make_decay_floor(uint64_t p, int64_t deg_adj, int64_t deg_res, int64_t deg_r_frob);

struct PrecisionPlan {
    // the bracket [N, N3, N2fin, N2inf, N1; NGfin, NGinf]
    int64_t n_final = 0;   // integer-recovery precision N
    int64_t n3 = 0;        // target H^2 precision
    int64_t n2_fin = 0;
    int64_t n2_inf = 0;
    int64_t n1 = 0;
    int64_t ng_fin = 0;
    int64_t ng_inf = 0;

    int64_t x_fin = 0;
    int64_t x_inf = 0;
    int64_t n2 = 0;  // max(n2_fin, n2_inf)
    int64_t ng = 0;  // ng_fin + ng_inf

    int64_t d_r = 0;          // deg r
    int64_t genus = 0;
    int64_t bmp = 0;          // B_{2g,p}
    int64_t alpha_prime = 0;  // 2 B + 1 (ODE truncation-loss coefficient)
    int64_t alpha_fin = 0;    // 2 B + 2g (finite-side growth coefficient)
    GrowthConstants inf_growth;
    DecayFloor floors;
    bool conjecture_mode = false;
    int64_t ord_f0_used = 0;

    std::string bracket() const;
};

struct PlanInput {
    int64_t g = 0;
    int64_t h = 0;
    int64_t d = 0;  // deg r
    uint64_t p = 0;
    bool conjecture = false;
    int64_t n3_override = 0;  // 0: use N from the functional-equation bound
    int64_t ord_f0 = 0;       // min(ord_p F(0), 0) enters N1
    DecayFloor floors;
    int64_t delta_inf = 0;  // exponent bound at infinity
    int64_t nden_inf = 1;   // common denominator at infinity
    bool inf_prepared = true;  // growth chain at infinity available
};

PrecisionPlan make_plan(const PlanInput& in);

// degree of P2 of the smooth toric compactification, by lattice-point
// counting on the Newton simplex; equals the middle Betti number.
int64_t betti_degree(int64_t g, int64_t h);
// geometric genus h^{2,0} = interior points of the simplex
int64_t hodge_h20(int64_t g, int64_t h);

// smallest N with p^N >= 2 q^e binom(D, e), e = floor(D/2)  (the final
// integer-recovery precision)
int64_t final_accuracy(uint64_t p, int64_t d, int64_t g);

}  // namespace pzeta

#endif
