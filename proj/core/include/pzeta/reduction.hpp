#ifndef PZETA_REDUCTION_HPP
#define PZETA_REDUCTION_HPP

#include "pzeta/deformation.hpp"
#include "pzeta/matrix.hpp"
#include "pzeta/padic.hpp"
#include "pzeta/plan.hpp"

namespace pzeta {

// ---- generic reduction steps (instantiated p-adically and, in the tests,
// ---- over exact rationals as the shadow arithmetic)

// matrix (of polynomials mod r) times polynomial vector, reduced mod r
template <class T>
std::vector<Poly<T>> matvec_mod(const Mat<Poly<T>>& a, const std::vector<Poly<T>>& v,
                                const Poly<T>& r) {
    std::vector<Poly<T>> out(a.rows());
    for (size_t i = 0; i < a.rows(); i++) {
        Poly<T> acc;
        for (size_t j = 0; j < a.cols(); j++) {
            if (a.at(i, j).is_zero() || v[j].is_zero()) continue;
            acc = acc + a.at(i, j) * v[j];
        }
        out[i] = acc.is_zero() ? acc : poly_mod(acc, r);
    }
    return out;
}

// U / r^(l+1) dG = nabla(V / r^l) + W / r^l dG:
//   V solves (-l r' I + b) V = U mod r (via the precomputed inverse),
//   X = ((-l r' I + b) V - U) / r exactly, W = -X - V'.
// The exact division is checked by the supplied `divexact`.
template <class T, class DivExact>
void reduce_finite_pole_step_core(const std::vector<Poly<T>>& u, int64_t ell,
                                  const Mat<Poly<T>>& inv_mod_r, const Mat<Poly<T>>& b,
                                  const Poly<T>& r, const Poly<T>& rprime, DivExact divexact,
                                  std::vector<Poly<T>>& v, std::vector<Poly<T>>& w) {
    const size_t m = b.rows();
    std::vector<Poly<T>> u_mod(m);
    for (size_t i = 0; i < m; i++) u_mod[i] = u[i].is_zero() ? u[i] : poly_mod(u[i], r);
    v = matvec_mod(inv_mod_r, u_mod, r);
    // lhs = (-l r' I + b) V - U, then X = lhs / r
    w.assign(m, Poly<T>());
    for (size_t i = 0; i < m; i++) {
        Poly<T> lhs;
        for (size_t j = 0; j < m; j++)
            if (!b.at(i, j).is_zero() && !v[j].is_zero()) lhs = lhs + b.at(i, j) * v[j];
        if (!v[i].is_zero())
            lhs = lhs + (rprime * v[i]).scaled(ring_mul_small(one_like(r.lead()), -ell));
        lhs = lhs - u[i];
        Poly<T> x = lhs.is_zero() ? lhs : divexact(lhs, r);
        w[i] = -(x + v[i].derivative());
    }
}

// U / r dG = nabla(V Gamma^a r^j) + W / r dG with l = a + j d chosen from the
// leading coefficient; returns the exponent l used.  rho = 1 production form.
template <class T>
int64_t reduce_infinity_step_core(const std::vector<Poly<T>>& u, const Mat<T>& inv_inf_l,
                                  int64_t ell, const Mat<Poly<T>>& b, const Poly<T>& r,
                                  const Poly<T>& rprime, std::vector<T>& v,
                                  std::vector<Poly<T>>& w) {
    const size_t m = b.rows();
    const int64_t d = r.degree();
    const int64_t deg_u = ell - 1 + d;  // deg U = l - 1 + rho d, rho = 1
    // leading coefficients
    std::vector<T> lead(m, zero_like(r.lead()));
    for (size_t i = 0; i < m; i++)
        if (u[i].degree() == deg_u) lead[i] = u[i].lead();
    v = inv_inf_l.mul_vec(lead);
    const int64_t j = ell / d, a = ell % d;
    // W = U - [a V G^(a-1) r^(j+1) + j V G^a r^j r' + V G^a r^j b]
    // (as polynomials; the digit-wise form lives in reduce_to_basis)
    Poly<T> rj = Poly<T>::constant(one_like(r.lead()));
    for (int64_t t = 0; t < j; t++) rj = rj * r;
    w.assign(m, Poly<T>());
    for (size_t i = 0; i < m; i++) {
        Poly<T> sub;
        if (a > 0 && !ring_is_zero(v[i]))
            sub = sub + (rj * r).shifted((size_t)(a - 1)).scaled(ring_mul_small(v[i], a));
        if (j > 0 && !ring_is_zero(v[i]))
            sub = sub + (rj * rprime).shifted((size_t)a).scaled(ring_mul_small(v[i], j));
        for (size_t k = 0; k < m; k++)
            if (!b.at(i, k).is_zero() && !ring_is_zero(v[k]))
                sub = sub + (rj * b.at(i, k)).shifted((size_t)a).scaled(v[k]);
        w[i] = u[i] - sub;
    }
    return ell;
}

// ---- p-adic production path

struct OneForm {
    int64_t lo = 0;
    // digits[t][e]: entry e of the coefficient of r^(lo+t); polynomials of degree < d
    std::vector<std::vector<PadicPoly>> digits;
};

struct ReductionTables {
    PadicPoly r, rprime;
    Mat<PadicPoly> b;
    PadicMat b_top;
    std::vector<Mat<PadicPoly>> inv_finite;  // (-(l) r' I + b)^{-1} mod r, index l-1
    std::vector<PadicMat> inv_inf;           // (l I + b_top)^{-1}, index l
    int64_t n_work = 0;
    int64_t d = 0;
    size_t m = 0;
};

ReductionTables build_reduction_tables(const Mat<QPoly>& b, const QPoly& r, const PadicCtx& ctx,
                                       int64_t l_fin_max, int64_t l_inf_max, int64_t n_work);

// p-adic wrappers around the generic cores, using the tables
void reduce_finite_pole_step(const std::vector<PadicPoly>& u, int64_t ell,
                             const ReductionTables& t, std::vector<PadicPoly>& v,
                             std::vector<PadicPoly>& w);
int64_t reduce_infinity_step(const std::vector<PadicPoly>& u, const ReductionTables& t,
                             std::vector<PadicApprox>& v, std::vector<PadicPoly>& w);

// full reduction of a windowed form to the basis {Gamma^i / r dG e_k},
// 0 <= i <= d-2; coordinates indexed i*m + k
std::vector<PadicApprox> reduce_to_basis(const OneForm& form, const ReductionTables& t);

// matrix of F on H^2: column (i,k) = reduce(G e_k p Gamma^(p(i+1)-1) dG)
PadicMat frobenius_on_h2(const RSeriesMat& g, const ReductionTables& t,
                         const PrecisionPlan& plan, const PadicCtx& ctx, int threads = 1);

}  // namespace pzeta

#endif
