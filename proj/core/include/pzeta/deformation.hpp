#ifndef PZETA_DEFORMATION_HPP
#define PZETA_DEFORMATION_HPP

#include "pzeta/matrix.hpp"
#include "pzeta/padic.hpp"
#include "pzeta/plan.hpp"
#include "pzeta/polyutil.hpp"

namespace pzeta {

// Gamma-adic expansion of a matrix of local analytic functions, each
// coefficient truncated at absolute precision n1 (the approximate-solution
// model: truncation errors propagate with at most logarithmic loss).
struct LocalSeriesMatrix {
    std::vector<PadicMat> coeff;
    int64_t n1 = 0;
    bool certified = true;  // method 2 has no proven loss bound
    size_t dim() const { return coeff.empty() ? 0 : coeff[0].rows(); }
};

enum class SolutionSide { left, dual };

// Fundamental solution of r C' + b C = 0 (left) or r C~' - C~ b = 0 with b
// acting on the right (dual), C(0) = I, by the linear recurrence on
// Gamma-adic coefficients; each step divides by r(0) * l and is then
// truncated modulo p^n1.
LocalSeriesMatrix local_fundamental_solution(const Mat<QPoly>& b, const QPoly& r,
                                             const PadicCtx& ctx, int64_t n_gamma, int64_t n1,
                                             SolutionSide side);

// F(Gamma) = C(Gamma) F(0) C~(Gamma^p) mod Gamma^n_gamma (prime base field:
// sigma acts on coefficients trivially and on Gamma as Gamma -> Gamma^p)
LocalSeriesMatrix deform_frobenius_local(const LocalSeriesMatrix& c,
                                         const LocalSeriesMatrix& c_dual, const PadicMat& f0,
                                         uint64_t p, int64_t n_gamma, int threads = 1);

// direct recurrence on r r^sigma F' + r^sigma b F = p Gamma^(p-1) r F b^sigma;
// lower memory, no certified loss bound (output flagged accordingly)
LocalSeriesMatrix method2_frobenius_local(const Mat<QPoly>& b, const QPoly& r,
                                          const PadicMat& f0, const PadicCtx& ctx,
                                          int64_t n_gamma, int64_t n1);

// windowed r-adic series of a matrix: digit i is the coefficient of
// r(Gamma)^(lo+i), an m x m matrix of polynomials of degree < d
struct RSeriesMat {
    int64_t lo = 0;
    std::vector<Mat<PadicPoly>> digits;
    int64_t hi() const { return lo + (int64_t)digits.size(); }
    size_t dim() const { return digits.empty() ? 0 : digits[0].rows(); }
};

// balanced divide-and-conquer radix conversion: f = sum digits[t] r^t
std::vector<PadicPoly> radix_convert(const PadicPoly& f, const PadicPoly& r);

// G = F(Gamma) / r^sigma(Gamma^p) as a windowed r-adic series on
// [-x_fin - p, x_inf); dropped digits are checked against the decay floors
RSeriesMat analytic_continuation(const LocalSeriesMatrix& f_local, const QPoly& r,
                                 const PrecisionPlan& plan, const PadicCtx& ctx,
                                 int threads = 1);

// reconstruction of the Gamma-adic expansion (for round-trip checks)
PadicPoly rseries_entry_to_poly(const RSeriesMat& s, size_t i, size_t j, const PadicPoly& r,
                                int64_t n_gamma);

}  // namespace pzeta

#endif
