#include "pzeta/deformation.hpp"

#include <algorithm>
#include <cassert>
#include <future>

namespace pzeta {

namespace {

std::vector<PadicMat> coeff_mats_of(const Mat<QPoly>& b, const PadicCtx& ctx, int64_t rel) {
    int64_t deg = -1;
    for (size_t i = 0; i < b.rows(); i++)
        for (size_t j = 0; j < b.cols(); j++) deg = std::max(deg, b.at(i, j).degree());
    std::vector<PadicMat> out;
    for (int64_t k = 0; k <= deg; k++) {
        PadicMat mk(b.rows(), b.cols(), PadicApprox::exact_zero(ctx));
        for (size_t i = 0; i < b.rows(); i++)
            for (size_t j = 0; j < b.cols(); j++)
                mk.at(i, j) = PadicApprox::from_rational(
                    ctx, b.at(i, j).coeff_or((size_t)k, Rational(0)), rel);
        out.push_back(std::move(mk));
    }
    if (out.empty()) out.emplace_back(b.rows(), b.cols(), PadicApprox::exact_zero(ctx));
    return out;
}

std::vector<PadicApprox> coeffs_of(const QPoly& r, const PadicCtx& ctx, int64_t rel) {
    std::vector<PadicApprox> out;
    out.reserve(r.size());
    for (size_t i = 0; i < r.size(); i++)
        out.push_back(PadicApprox::from_rational(ctx, r[i], rel));
    return out;
}

}  // namespace

LocalSeriesMatrix local_fundamental_solution(const Mat<QPoly>& b, const QPoly& r,
                                             const PadicCtx& ctx, int64_t n_gamma, int64_t n1,
                                             SolutionSide side) {
    const size_t m = b.rows();
    const int64_t rel = n1 + 4;
    std::vector<PadicMat> bk = coeff_mats_of(b, ctx, rel);
    std::vector<PadicApprox> rk = coeffs_of(r, ctx, rel);
    const int64_t degb = (int64_t)bk.size() - 1;
    const int64_t degr = (int64_t)rk.size() - 1;
    if (rk.empty() || rk[0].valuation() != 0)
        throw PadicError("fundamental solution: r(0) is not a p-adic unit");

    LocalSeriesMatrix out;
    out.n1 = n1;
    out.coeff.reserve((size_t)n_gamma);
    out.coeff.push_back(PadicMat::identity(m, PadicApprox::from_integer(ctx, BigInt(1), rel)));
    for (int64_t l = 1; l < n_gamma; l++) {
        PadicMat acc(m, m, PadicApprox::exact_zero(ctx));
        for (int64_t i = 0; i <= degb && i <= l - 1; i++) {
            const PadicMat& c = out.coeff[(size_t)(l - 1 - i)];
            acc = acc + (side == SolutionSide::left ? bk[(size_t)i] * c : c * bk[(size_t)i]);
        }
        if (side == SolutionSide::dual) acc = -acc;
        for (int64_t i = 1; i <= degr && i <= l; i++) {
            PadicApprox w = rk[(size_t)i].mul_exact(BigInt(l - i));
            acc = acc + out.coeff[(size_t)(l - i)].scaled(w);
        }
        // left:  C_l  = -(sum b_i C_(l-1-i) + sum r_i (l-i) C_(l-i)) / (r_0 l)
        // dual:  C~_l = +(sum C~_(l-1-i) b_i - sum r_i (l-i) C~_(l-i)) / (r_0 l)
        PadicApprox denom = rk[0].mul_exact(BigInt(l));
        PadicApprox scale = -(PadicApprox::from_integer(ctx, BigInt(1), rel) / denom);
        acc = acc.scaled(scale);
        out.coeff.push_back(mat_as_representative(acc, n1));
    }
    return out;
}

LocalSeriesMatrix deform_frobenius_local(const LocalSeriesMatrix& c,
                                         const LocalSeriesMatrix& c_dual, const PadicMat& f0,
                                         uint64_t p, int64_t n_gamma, int threads) {
    const int64_t n1 = c.n1;
    // A_l = C_l F(0)
    std::vector<PadicMat> a;
    a.reserve(c.coeff.size());
    for (auto& cl : c.coeff) a.push_back(cl * f0);
    // valuation floors for pruning the convolution
    auto floors = [&](const std::vector<PadicMat>& v) {
        std::vector<int64_t> f(v.size());
        for (size_t i = 0; i < v.size(); i++) f[i] = mat_valuation_floor(v[i]);
        return f;
    };
    std::vector<int64_t> va = floors(a), vd = floors(c_dual.coeff);

    LocalSeriesMatrix out;
    out.n1 = n1;
    out.certified = c.certified && c_dual.certified;
    out.coeff.resize((size_t)n_gamma);
    auto work = [&](int64_t lo, int64_t hi) {
        for (int64_t n = lo; n < hi; n++) {
            PadicMat g(a[0].rows(), a[0].cols(), PadicApprox::exact_zero(*a[0].at(0, 0).ctx()));
            for (int64_t j = 0; (int64_t)p * j <= n; j++) {
                int64_t i = n - (int64_t)p * j;
                if (i >= (int64_t)a.size() || j >= (int64_t)c_dual.coeff.size()) continue;
                if (va[(size_t)i] + vd[(size_t)j] >= n1) continue;
                g = g + a[(size_t)i] * c_dual.coeff[(size_t)j];
            }
            out.coeff[(size_t)n] = mat_as_representative(g, n1);
        }
    };
    threads = std::max(1, threads);
    if (threads == 1 || n_gamma < 256) {
        work(0, n_gamma);
    } else {
        std::vector<std::future<void>> futs;
        int64_t chunk = (n_gamma + threads - 1) / threads;
        for (int t = 0; t < threads; t++) {
            int64_t lo = std::min<int64_t>(n_gamma, t * chunk);
            int64_t hi = std::min<int64_t>(n_gamma, lo + chunk);
            futs.push_back(std::async(std::launch::async, work, lo, hi));
        }
        for (auto& f : futs) f.get();
    }
    return out;
}

LocalSeriesMatrix method2_frobenius_local(const Mat<QPoly>& b, const QPoly& r,
                                          const PadicMat& f0, const PadicCtx& ctx,
                                          int64_t n_gamma, int64_t n1) {
    const size_t m = b.rows();
    const int64_t rel = n1 + 4;
    std::vector<PadicMat> bk = coeff_mats_of(b, ctx, rel);
    std::vector<PadicApprox> rk = coeffs_of(r, ctx, rel);
    const int64_t degb = (int64_t)bk.size() - 1;
    const int64_t degr = (int64_t)rk.size() - 1;
    const int64_t ip = (int64_t)ctx.p();

    // rho = r(Gamma) r(Gamma^p): scalar coefficients
    std::vector<PadicApprox> rho((size_t)(degr + ip * degr + 1), PadicApprox::exact_zero(ctx));
    for (int64_t i = 0; i <= degr; i++)
        for (int64_t j = 0; j <= degr; j++)
            rho[(size_t)(i + ip * j)] = rho[(size_t)(i + ip * j)] + rk[(size_t)i] * rk[(size_t)j];
    // s = r(Gamma^p) b(Gamma): matrix coefficients
    std::vector<PadicMat> sk((size_t)(degb + ip * degr + 1),
                             PadicMat(m, m, PadicApprox::exact_zero(ctx)));
    for (int64_t j = 0; j <= degr; j++)
        for (int64_t i = 0; i <= degb; i++)
            sk[(size_t)(i + ip * j)] = sk[(size_t)(i + ip * j)] + bk[(size_t)i].scaled(rk[(size_t)j]);

    LocalSeriesMatrix out;
    out.n1 = n1;
    out.certified = false;  // no proven propagation bound for this route
    out.coeff.reserve((size_t)n_gamma);
    out.coeff.push_back(f0);
    PadicApprox punit = PadicApprox::from_integer(ctx, BigInt(ip), rel);
    for (int64_t l = 1; l < n_gamma; l++) {
        PadicMat acc(m, m, PadicApprox::exact_zero(ctx));
        // RHS: p [Gamma^(p-1) r F b^sigma]_{l-1} = p [r F b^sigma]_{l-p}
        int64_t target = l - ip;
        if (target >= 0) {
            for (int64_t k = 0; k <= degb; k++) {
                int64_t rem = target - ip * k;
                if (rem < 0) break;
                for (int64_t i = 0; i <= degr && i <= rem; i++) {
                    int64_t jj = rem - i;
                    if (jj >= (int64_t)out.coeff.size()) continue;
                    acc = acc + (out.coeff[(size_t)jj] * bk[(size_t)k]).scaled(rk[(size_t)i] * punit);
                }
            }
        }
        // move the known LHS terms across
        for (int64_t i = 1; i <= (int64_t)rho.size() - 1 && i <= l; i++) {
            if (rho[(size_t)i].is_exact_zero()) continue;
            acc = acc - out.coeff[(size_t)(l - i)].scaled(rho[(size_t)i].mul_exact(BigInt(l - i)));
        }
        for (int64_t i = 0; i <= (int64_t)sk.size() - 1 && i <= l - 1; i++)
            acc = acc - sk[(size_t)i] * out.coeff[(size_t)(l - 1 - i)];
        PadicApprox denom = rho[0].mul_exact(BigInt(l));
        acc = acc.scaled(PadicApprox::from_integer(ctx, BigInt(1), rel) / denom);
        out.coeff.push_back(mat_as_representative(acc, n1));
    }
    return out;
}

// ---------------------------------------------------------------- continuation

std::vector<PadicPoly> radix_convert(const PadicPoly& f, const PadicPoly& r) {
    const int64_t d = r.degree();
    assert(d >= 1);
    if (f.degree() < d) return {f};
    // power tree r^(2^t)
    std::vector<PadicPoly> pw{r};
    while (pw.back().degree() <= f.degree()) pw.push_back(pw.back() * pw.back());
    std::vector<PadicPoly> digits;
    auto rec = [&](auto&& self, const PadicPoly& g, int64_t level) -> std::vector<PadicPoly> {
        if (level == 0) {
            if (g.degree() < d) return {g};
            PadicPoly q, rem;
            poly_divmod(g, r, q, rem);
            return {rem, q};
        }
        if (g.degree() < pw[(size_t)level].degree()) return self(self, g, level - 1);
        PadicPoly q, rem;
        poly_divmod(g, pw[(size_t)level], q, rem);
        std::vector<PadicPoly> lo = self(self, rem, level - 1);
        lo.resize((size_t)1 << level, PadicPoly());
        std::vector<PadicPoly> hi = self(self, q, level - 1);
        for (auto& x : hi) lo.push_back(std::move(x));
        return lo;
    };
    int64_t level = (int64_t)pw.size() - 1;
    digits = rec(rec, f, level);
    while (!digits.empty() && digits.back().is_zero()) digits.pop_back();
    return digits;
}

namespace {

// scalar r-adic series with digit renormalization
struct RScalarSeries {
    int64_t lo = 0;
    std::vector<PadicPoly> digits;
};

// multiply two digit polynomials and split the product deg <= 2d-2 as
// c0 + c1 r with deg c0 < d
void digit_split(const PadicPoly& prod, const PadicPoly& r, PadicPoly& c0, PadicPoly& c1) {
    poly_divmod(prod, r, c1, c0);
}

RScalarSeries rscalar_mul(const RScalarSeries& a, const RScalarSeries& b, const PadicPoly& r,
                          int64_t n_work) {
    RScalarSeries out;
    out.lo = a.lo + b.lo;
    out.digits.assign(a.digits.size() + b.digits.size(), PadicPoly());
    for (size_t i = 0; i < a.digits.size(); i++) {
        if (a.digits[i].is_zero()) continue;
        for (size_t j = 0; j < b.digits.size(); j++) {
            if (b.digits[j].is_zero()) continue;
            PadicPoly prod = a.digits[i] * b.digits[j];
            PadicPoly c0, c1;
            digit_split(prod, r, c0, c1);
            out.digits[i + j] = (out.digits[i + j] + c0).trim();
            out.digits[i + j + 1] = (out.digits[i + j + 1] + c1).trim();
        }
    }
    for (auto& dgt : out.digits) dgt = poly_as_representative(dgt, n_work);
    while (!out.digits.empty() && out.digits.back().is_zero()) out.digits.pop_back();
    return out;
}

}  // namespace

RSeriesMat analytic_continuation(const LocalSeriesMatrix& f_local, const QPoly& r,
                                 const PrecisionPlan& plan, const PadicCtx& ctx, int threads) {
    const size_t m = f_local.dim();
    const int64_t n_work = f_local.n1;
    const int64_t d = r.degree();
    const int64_t ip = (int64_t)ctx.p();
    const int64_t n_gamma = (int64_t)f_local.coeff.size();
    const int64_t rel = n_work + 4;
    PadicPoly rp = padic_poly_from_qpoly(ctx, r, rel);

    // r^x_fin mod Gamma^n_gamma
    auto trunc_mul = [&](const PadicPoly& a, const PadicPoly& b) {
        return poly_as_representative((a * b).truncated((size_t)n_gamma), n_work);
    };
    PadicPoly rxf = PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1), rel));
    {
        PadicPoly base = rp;
        int64_t e = plan.x_fin;
        while (e) {
            if (e & 1) rxf = trunc_mul(rxf, base);
            e >>= 1;
            if (e) base = trunc_mul(base, base);
        }
    }

    // per-entry: radix digits of (F * r^x_fin mod Gamma^n_gamma), shifted by -x_fin
    RSeriesMat fr;
    fr.lo = -plan.x_fin;
    int64_t width = plan.x_fin + plan.x_inf;
    fr.digits.assign((size_t)width + 2, Mat<PadicPoly>(m, m, PadicPoly()));
    auto entry_work = [&](size_t i, size_t j) {
        std::vector<PadicApprox> c;
        c.reserve((size_t)n_gamma);
        for (int64_t l = 0; l < n_gamma; l++) c.push_back(f_local.coeff[(size_t)l].at(i, j));
        PadicPoly fe = PadicPoly(std::move(c));
        PadicPoly w = trunc_mul(fe, rxf);
        std::vector<PadicPoly> digits = radix_convert(w, rp);
        for (size_t t = 0; t < digits.size(); t++) {
            if ((int64_t)t >= width + 2) {
                if (!digits[t].is_zero())
                    throw PadicError("continuation: radix digit beyond the resolvable window");
                continue;
            }
            fr.digits[t].at(i, j) = std::move(digits[t]);
        }
    };
    {
        std::vector<std::future<void>> futs;
        int launched = 0;
        for (size_t i = 0; i < m; i++)
            for (size_t j = 0; j < m; j++) {
                if (threads > 1 && launched < threads - 1 && m * m > 1) {
                    futs.push_back(std::async(std::launch::async, entry_work, i, j));
                    launched++;
                } else {
                    entry_work(i, j);
                }
            }
        for (auto& f : futs) f.get();
    }

    // S = (r(Gamma^p) - r(Gamma)^p) / p, as r-adic digits
    RScalarSeries s_r;
    {
        PadicPoly rsig;
        {
            std::vector<PadicApprox> c((size_t)(ip * d) + 1, PadicApprox::exact_zero(ctx));
            for (int64_t i = 0; i <= d; i++)
                c[(size_t)(ip * i)] = PadicApprox::from_rational(ctx, r[(size_t)i], rel);
            rsig = PadicPoly(std::move(c)).trim();
        }
        PadicPoly rpow = rp;
        for (int64_t i = 1; i < ip; i++) rpow = poly_as_representative(rpow * rp, n_work + 2);
        PadicPoly diff = rsig - rpow;
        std::vector<PadicApprox> c;
        c.reserve(diff.size());
        for (size_t i = 0; i < diff.size(); i++) {
            if (diff[i].is_exact_zero()) {
                c.push_back(diff[i]);
                continue;
            }
            if (diff[i].valuation() < 1)
                throw PadicError("continuation: r^sigma - r^p not divisible by p");
            c.push_back(diff[i].shift(-1));
        }
        s_r.lo = 0;
        s_r.digits = radix_convert(PadicPoly(std::move(c)), rp);
    }

    // inv = 1 / r^sigma(Gamma^p) = r^-p  sum_j (-p)^j S^j r^(-pj)
    RScalarSeries inv;
    inv.lo = -ip;
    inv.digits.assign(1, PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1), rel)));
    {
        RScalarSeries spow = s_r;
        PadicApprox minus_p = PadicApprox::from_integer(ctx, BigInt(-ip), rel);
        PadicApprox pj = minus_p;
        for (int64_t j = 1; j <= n_work; j++) {
            // accumulate (-p)^j S^j r^(-p(j+1))
            RScalarSeries term = spow;
            term.lo = spow.lo - ip * (j + 1);
            int64_t off = term.lo - inv.lo;
            if (off < 0) {
                inv.digits.insert(inv.digits.begin(), (size_t)(-off), PadicPoly());
                inv.lo = term.lo;
                off = 0;
            }
            if (inv.digits.size() < (size_t)off + term.digits.size())
                inv.digits.resize((size_t)off + term.digits.size(), PadicPoly());
            for (size_t t = 0; t < term.digits.size(); t++)
                inv.digits[(size_t)off + t] =
                    poly_as_representative((inv.digits[(size_t)off + t] + term.digits[t].scaled(pj)).trim(),
                                           n_work);
            if (j < n_work) {
                spow = rscalar_mul(spow, s_r, rp, n_work);
                pj = pj * minus_p;
            }
        }
    }

    // G = fr * inv, kept on the window [-x_fin - p, x_inf)
    const int64_t keep_lo = -plan.x_fin - ip;
    const int64_t keep_hi = plan.x_inf;
    RSeriesMat out;
    out.lo = keep_lo;
    out.digits.assign((size_t)(keep_hi - keep_lo), Mat<PadicPoly>(m, m, PadicPoly()));
    // observed valuation floor of each fr digit for pruning
    std::vector<int64_t> vfr(fr.digits.size(), PadicApprox::kInf);
    for (size_t t = 0; t < fr.digits.size(); t++)
        for (size_t i = 0; i < m; i++)
            for (size_t j = 0; j < m; j++)
                vfr[t] = std::min(vfr[t], poly_valuation_floor(fr.digits[t].at(i, j)));
    std::vector<int64_t> vinv(inv.digits.size(), PadicApprox::kInf);
    for (size_t t = 0; t < inv.digits.size(); t++)
        vinv[t] = poly_valuation_floor(inv.digits[t]);

    auto col_work = [&](int64_t klo, int64_t khi) {
        for (int64_t k = klo; k < khi; k++) {
            Mat<PadicPoly> acc(m, m, PadicPoly());
            // c0 parts of products landing at k, c1 carries of products at k-1
            for (int base = 0; base < 2; base++) {
                for (size_t ta = 0; ta < fr.digits.size(); ta++) {
                    int64_t ka = fr.lo + (int64_t)ta;
                    int64_t tb = (k - base) - ka - inv.lo;
                    if (tb < 0 || tb >= (int64_t)inv.digits.size()) continue;
                    if (vfr[ta] + vinv[(size_t)tb] >= n_work) continue;
                    const PadicPoly& s = inv.digits[(size_t)tb];
                    if (s.is_zero()) continue;
                    for (size_t i = 0; i < m; i++)
                        for (size_t j = 0; j < m; j++) {
                            const PadicPoly& a = fr.digits[ta].at(i, j);
                            if (a.is_zero()) continue;
                            PadicPoly c0, c1;
                            digit_split(a * s, rp, c0, c1);
                            acc.at(i, j) = (acc.at(i, j) + (base == 0 ? c0 : c1)).trim();
                        }
                }
            }
            for (size_t i = 0; i < m; i++)
                for (size_t j = 0; j < m; j++)
                    out.digits[(size_t)(k - keep_lo)].at(i, j) =
                        poly_as_representative(acc.at(i, j), n_work);
        }
    };
    threads = std::max(1, threads);
    if (threads == 1 || keep_hi - keep_lo < 64) {
        col_work(keep_lo, keep_hi);
    } else {
        std::vector<std::future<void>> futs;
        int64_t span = keep_hi - keep_lo, chunk = (span + threads - 1) / threads;
        for (int t = 0; t < threads; t++) {
            int64_t lo = std::min(keep_hi, keep_lo + t * chunk);
            int64_t hi = std::min(keep_hi, lo + chunk);
            futs.push_back(std::async(std::launch::async, col_work, lo, hi));
        }
        for (auto& f : futs) f.get();
    }

    // dropped digits must clear the side budgets; a cheap per-contribution
    // floor first, and the actual digit sum when that is inconclusive (the
    // sum can cancel even when single products do not clear the budget)
    {
        int64_t drop_lo = fr.lo + inv.lo;
        int64_t drop_hi = (fr.lo + (int64_t)fr.digits.size()) +
                          (inv.lo + (int64_t)inv.digits.size()) + 1;
        for (int64_t k = drop_lo; k < drop_hi; k++) {
            if (k >= keep_lo && k < keep_hi) continue;
            int64_t budget = k < keep_lo ? plan.n2_fin : plan.n2_inf;
            int64_t cheap = PadicApprox::kInf;
            for (int base = 0; base < 2; base++)
                for (size_t ta = 0; ta < fr.digits.size(); ta++) {
                    int64_t tb = (k - base) - (fr.lo + (int64_t)ta) - inv.lo;
                    if (tb < 0 || tb >= (int64_t)inv.digits.size()) continue;
                    cheap = std::min(cheap, vfr[ta] + vinv[(size_t)tb]);
                }
            if (cheap >= budget) continue;
            // aggregate the digit and test its true observed floor
            Mat<PadicPoly> acc(m, m, PadicPoly());
            for (int base = 0; base < 2; base++)
                for (size_t ta = 0; ta < fr.digits.size(); ta++) {
                    int64_t tb = (k - base) - (fr.lo + (int64_t)ta) - inv.lo;
                    if (tb < 0 || tb >= (int64_t)inv.digits.size()) continue;
                    if (vfr[ta] + vinv[(size_t)tb] >= n_work) continue;
                    const PadicPoly& s = inv.digits[(size_t)tb];
                    if (s.is_zero()) continue;
                    for (size_t i = 0; i < m; i++)
                        for (size_t j = 0; j < m; j++) {
                            const PadicPoly& a = fr.digits[ta].at(i, j);
                            if (a.is_zero()) continue;
                            PadicPoly c0, c1;
                            digit_split(a * s, rp, c0, c1);
                            acc.at(i, j) = (acc.at(i, j) + (base == 0 ? c0 : c1)).trim();
                        }
                }
            for (size_t i = 0; i < m; i++)
                for (size_t j = 0; j < m; j++) {
                    PadicPoly e = poly_as_representative(acc.at(i, j), n_work);
                    if (poly_valuation_floor(e) < std::min(budget, n_work))
                        throw PadicError(
                            "continuation: window too small (dropped digit above budget)");
                }
        }
    }
    return out;
}

PadicPoly rseries_entry_to_poly(const RSeriesMat& s, size_t i, size_t j, const PadicPoly& r,
                                int64_t n_gamma) {
    const PadicCtx& ctx = *r.lead().ctx();
    const PadicPoly one = PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1)));
    PadicPoly acc;
    // nonnegative powers
    PadicPoly rk = one;
    int64_t cur = 0;
    for (int64_t k = std::max<int64_t>(s.lo, 0); k < s.hi(); k++) {
        while (cur < k) {
            rk = (rk * r).truncated((size_t)n_gamma);
            cur++;
        }
        acc = (acc + s.digits[(size_t)(k - s.lo)].at(i, j) * rk).truncated((size_t)n_gamma);
    }
    // negative powers via the series inverse of r (r(0) is a unit)
    if (s.lo < 0) {
        PadicPoly rinv = series_inverse(r, (size_t)n_gamma);
        PadicPoly rik = one;
        int64_t icur = 0;
        for (int64_t e = 1; e <= -s.lo; e++) {
            while (icur < e) {
                rik = (rik * rinv).truncated((size_t)n_gamma);
                icur++;
            }
            int64_t k = -e;
            if (k >= s.lo && k < s.hi())
                acc = (acc + s.digits[(size_t)(k - s.lo)].at(i, j) * rik).truncated((size_t)n_gamma);
        }
    }
    return acc;
}

}  // namespace pzeta
