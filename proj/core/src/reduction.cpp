#include "pzeta/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <future>

#include "pzeta/fq.hpp"

namespace pzeta {

namespace {

PadicPoly lift_qpoly(const QPoly& f, const PadicCtx& ctx, int64_t rel) {
    return padic_poly_from_qpoly(ctx, f, rel);
}

// inverse of a unit u of (Z/p^k)[G]/(rbar-lift): Hensel lift of the inverse
// mod (p, rbar)
PadicPoly invert_unit_mod(const PadicPoly& u, const PadicPoly& r, const PadicCtx& ctx,
                          int64_t k) {
    const uint64_t p = ctx.p();
    // inverse mod p via F_p[G] extended Euclid
    auto fp = FqCtx::make(p, 1);
    std::vector<BigInt> uc, rc;
    for (size_t i = 0; i < u.size(); i++) {
        if (u[i].is_exact_zero() || u[i].is_zero_to_precision() || u[i].valuation() > 0) {
            uc.emplace_back(0);
        } else {
            uc.push_back(BigInt(u[i].residue(1), false));
        }
    }
    for (size_t i = 0; i < r.size(); i++) rc.push_back(BigInt(r[i].residue(1), false));
    FqPoly ubar = fqpoly_from_int_coeffs(*fp, uc);
    FqPoly rbar = fqpoly_from_int_coeffs(*fp, rc);
    // extended Euclid for ubar^{-1} mod rbar
    FqPoly r0 = rbar, r1 = ubar;
    FqPoly t0, t1 = FqPoly::constant(Fq::one(*fp));
    while (!r1.is_zero()) {
        FqPoly q, r2;
        poly_divmod(r0, r1, q, r2);
        FqPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0)
        throw PadicError("reduction table: determinant not invertible mod (p, r)");
    FqPoly inv0 = t0.scaled(r0[0].inverse());
    // lift to a PadicPoly and Newton-iterate: x <- x(2 - u x) mod (r, p^k)
    std::vector<PadicApprox> c;
    for (size_t i = 0; i <= (size_t)inv0.degree(); i++)
        c.push_back(PadicApprox::from_integer(ctx, BigInt((int64_t)inv0[i].coords()[0]), k + 2));
    PadicPoly x(std::move(c));
    const PadicPoly two = PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(2), k + 2));
    int64_t have = 1;
    while (have < k) {
        have = std::min(2 * have, k);
        PadicPoly ux = poly_mod(u * x, r);
        x = poly_mod(x * (two - ux), r);
        x = poly_as_representative(x, have);
    }
    return x;
}

}  // namespace

ReductionTables build_reduction_tables(const Mat<QPoly>& b, const QPoly& r, const PadicCtx& ctx,
                                       int64_t l_fin_max, int64_t l_inf_max, int64_t n_work) {
    ReductionTables t;
    t.n_work = n_work;
    t.d = r.degree();
    t.m = b.rows();
    const int64_t rel = n_work + 8;
    t.r = lift_qpoly(r, ctx, rel);
    t.rprime = t.r.derivative();
    t.b = Mat<PadicPoly>(t.m, t.m, PadicPoly());
    for (size_t i = 0; i < t.m; i++)
        for (size_t j = 0; j < t.m; j++) t.b.at(i, j) = lift_qpoly(b.at(i, j), ctx, rel);
    t.b_top = PadicMat(t.m, t.m, PadicApprox::exact_zero(ctx));
    for (size_t i = 0; i < t.m; i++)
        for (size_t j = 0; j < t.m; j++)
            t.b_top.at(i, j) = PadicApprox::from_rational(
                ctx, b.at(i, j).coeff_or((size_t)(t.d - 1), Rational(0)), rel);

    // finite tables: inverse of A_l = (-l r' I + b) mod r by adjugate over the
    // polynomial ring, then one division by det
    for (int64_t l = 1; l <= l_fin_max; l++) {
        Mat<PadicPoly> a(t.m, t.m, PadicPoly());
        for (size_t i = 0; i < t.m; i++)
            for (size_t j = 0; j < t.m; j++) {
                PadicPoly e = t.b.at(i, j);
                if (i == j)
                    e = e + t.rprime.scaled(PadicApprox::from_integer(ctx, BigInt(-l), rel));
                a.at(i, j) = poly_mod(e, t.r);
            }
        // Berkowitz over the mod-r ring realized on raw polys with explicit mod
        // (m <= 4: direct cofactor-free route via charpoly of a "wrapped" ring
        // is overkill; use iterated adjugate construction)
        // adj via the Faddeev-LeVerrier-free route: for m <= 4 expand cofactors
        Mat<PadicPoly> adj(t.m, t.m, PadicPoly());
        PadicPoly det;
        if (t.m == 1) {
            adj.at(0, 0) = PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1), rel));
            det = a.at(0, 0);
        } else {
            // cofactor expansion (m is 2g <= 8 in practice; mod-r arithmetic)
            auto minor_det = [&](auto&& self, std::vector<size_t> rows,
                                 std::vector<size_t> cols) -> PadicPoly {
                if (rows.size() == 1) return a.at(rows[0], cols[0]);
                PadicPoly acc;
                for (size_t k = 0; k < cols.size(); k++) {
                    const PadicPoly& e = a.at(rows[0], cols[k]);
                    if (e.is_zero()) continue;
                    std::vector<size_t> r2(rows.begin() + 1, rows.end());
                    std::vector<size_t> c2;
                    for (size_t x = 0; x < cols.size(); x++)
                        if (x != k) c2.push_back(cols[x]);
                    PadicPoly sub = self(self, r2, c2);
                    PadicPoly term = poly_mod(e * sub, t.r);
                    acc = (k % 2 == 0) ? acc + term : acc - term;
                }
                return poly_as_representative(acc, rel);
            };
            std::vector<size_t> all(t.m);
            for (size_t i = 0; i < t.m; i++) all[i] = i;
            det = minor_det(minor_det, all, all);
            for (size_t i = 0; i < t.m; i++)
                for (size_t j = 0; j < t.m; j++) {
                    std::vector<size_t> r2, c2;
                    for (size_t x = 0; x < t.m; x++) {
                        if (x != j) r2.push_back(x);
                        if (x != i) c2.push_back(x);
                    }
                    PadicPoly mdet = t.m == 1 ? PadicPoly() : minor_det(minor_det, r2, c2);
                    adj.at(i, j) = ((i + j) % 2 == 0) ? mdet : -mdet;
                }
        }
        // det = p^s * unit: strip the p-power, invert the unit, shift back
        int64_t s = poly_valuation_floor(det);
        if (s >= PadicApprox::kInf)
            throw PadicError("reduction table: singular system (integer exponent hit)");
        PadicPoly unit;
        {
            std::vector<PadicApprox> c;
            c.reserve(det.size());
            for (size_t i = 0; i < det.size(); i++) c.push_back(det[i].shift(-s));
            unit = PadicPoly(std::move(c));
        }
        PadicPoly unit_inv = invert_unit_mod(unit, t.r, ctx, n_work + (int64_t)s + 4);
        Mat<PadicPoly> inv(t.m, t.m, PadicPoly());
        for (size_t i = 0; i < t.m; i++)
            for (size_t j = 0; j < t.m; j++) {
                if (adj.at(i, j).is_zero()) continue;
                PadicPoly e = poly_mod(adj.at(i, j) * unit_inv, t.r);
                std::vector<PadicApprox> c;
                c.reserve(e.size());
                for (size_t x = 0; x < e.size(); x++) c.push_back(e[x].shift(-s));
                inv.at(i, j) = poly_as_representative(PadicPoly(std::move(c)), n_work);
            }
        t.inv_finite.push_back(std::move(inv));
    }

    // infinity tables: (l I + b_top)^{-1} over scalars
    for (int64_t l = 0; l <= l_inf_max; l++) {
        PadicMat a = t.b_top;
        for (size_t i = 0; i < t.m; i++)
            a.at(i, i) = a.at(i, i) + PadicApprox::from_integer(ctx, BigInt(l), rel);
        PadicPoly cp = charpoly_division_free(a);
        PadicApprox det = mat_det_from_charpoly(cp, t.m);
        if (det.is_exact_zero() || det.is_zero_to_precision())
            throw PadicError("reduction table: l I + b_top singular");
        PadicMat adj = adjugate(a, cp);
        PadicMat inv(t.m, t.m, PadicApprox::exact_zero(ctx));
        for (size_t i = 0; i < t.m; i++)
            for (size_t j = 0; j < t.m; j++)
                inv.at(i, j) = (adj.at(i, j) / det).as_representative(n_work + 4);
        t.inv_inf.push_back(std::move(inv));
    }

    // spot-check: A A^{-1} = I at the stored precision (first, middle, last)
    for (int64_t l : std::vector<int64_t>{1, std::max<int64_t>(1, l_fin_max / 2), l_fin_max}) {
        if (l < 1 || l > l_fin_max) continue;
        Mat<PadicPoly> a(t.m, t.m, PadicPoly());
        for (size_t i = 0; i < t.m; i++)
            for (size_t j = 0; j < t.m; j++) {
                PadicPoly e = t.b.at(i, j);
                if (i == j)
                    e = e + t.rprime.scaled(PadicApprox::from_integer(ctx, BigInt(-l), rel));
                a.at(i, j) = poly_mod(e, t.r);
            }
        const Mat<PadicPoly>& inv = t.inv_finite[(size_t)(l - 1)];
        for (size_t i = 0; i < t.m; i++)
            for (size_t j = 0; j < t.m; j++) {
                PadicPoly acc;
                for (size_t k = 0; k < t.m; k++)
                    if (!a.at(i, k).is_zero() && !inv.at(k, j).is_zero())
                        acc = acc + a.at(i, k) * inv.at(k, j);
                acc = acc.is_zero() ? acc : poly_mod(acc, t.r);
                if (i == j)
                    acc = acc - PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1), rel));
                int64_t v = poly_valuation_floor(acc);
                if (v < t.n_work - 2 * ilog_floor_u64((uint64_t)std::max<int64_t>(l, 2), ctx.p()) - 4)
                    throw PadicError("reduction table: inverse verification failed");
            }
    }
    return t;
}

void reduce_finite_pole_step(const std::vector<PadicPoly>& u, int64_t ell,
                             const ReductionTables& t, std::vector<PadicPoly>& v,
                             std::vector<PadicPoly>& w) {
    if (ell < 1 || ell > (int64_t)t.inv_finite.size())
        throw PadicError("reduce_finite_pole_step: table index out of range");
    // the inverse tables are representatives modulo p^n_work, so the exact
    // division leaves noise of size about p^(n_work - ord det); anything
    // above that threshold is a genuine failure
    const uint64_t p = t.r.lead().ctx()->p();
    int64_t threshold =
        t.n_work - (int64_t)t.m * ilog_floor_u64((uint64_t)(ell + 1), p) - 6;
    auto divexact = [&](const PadicPoly& a, const PadicPoly& b2) {
        PadicPoly q, r;
        poly_divmod(a, b2, q, r);
        for (size_t i = 0; i < r.size(); i++)
            if (r[i].is_regular() && r[i].valuation() < threshold)
                throw PadicError("reduce_finite_pole_step: division remainder above noise level");
        return q;
    };
    reduce_finite_pole_step_core(u, ell, t.inv_finite[(size_t)(ell - 1)], t.b, t.r, t.rprime,
                                 divexact, v, w);
    for (auto& x : v) x = poly_as_representative(x, t.n_work);
    for (auto& x : w) x = poly_as_representative(x, t.n_work);
}

int64_t reduce_infinity_step(const std::vector<PadicPoly>& u, const ReductionTables& t,
                             std::vector<PadicApprox>& v, std::vector<PadicPoly>& w) {
    // effective degree, skipping coefficients that are zero to precision
    int64_t deg_u = -1;
    for (auto& e : u)
        for (size_t i = e.size(); i-- > 0;) {
            if (e[i].is_regular()) {
                deg_u = std::max(deg_u, (int64_t)i);
                break;
            }
        }
    int64_t ell = deg_u - t.d + 1;
    if (ell < 1) {
        w = u;
        v.clear();
        return 0;
    }
    if (ell >= (int64_t)t.inv_inf.size())
        throw PadicError("reduce_infinity_step: table index out of range");
    // assemble leading coefficients at the effective degree
    std::vector<PadicPoly> u_trim = u;
    for (auto& e : u_trim)
        if (e.degree() > deg_u) {
            std::vector<PadicApprox> c(e.coeffs().begin(), e.coeffs().begin() + deg_u + 1);
            e = PadicPoly(std::move(c));
        }
    int64_t used = reduce_infinity_step_core(u_trim, t.inv_inf[(size_t)ell], ell, t.b, t.r,
                                             t.rprime, v, w);
    for (auto& x : w) x = poly_as_representative(x, t.n_work);
    return used;
}

std::vector<PadicApprox> reduce_to_basis(const OneForm& form, const ReductionTables& t) {
    const size_t m = t.m;
    const int64_t d = t.d;
    const PadicCtx& ctx = *t.r.lead().ctx();
    const PadicApprox zero = PadicApprox::exact_zero(ctx);

    // working copy of the digits, indexed by k via (k - lo)
    int64_t lo = form.lo;
    std::vector<std::vector<PadicPoly>> dig = form.digits;
    if (lo > -1) {
        // ensure the k = -1 slot exists
        dig.insert(dig.begin(), (size_t)(lo - (-1)), std::vector<PadicPoly>(m));
        lo = -1;
    }
    auto digit = [&](int64_t k) -> std::vector<PadicPoly>& {
        return dig[(size_t)(k - lo)];
    };
    int64_t hi = lo + (int64_t)dig.size();  // exclusive

    // stage 1: finite poles, deepest first
    for (int64_t k = lo; k <= -2; k++) {
        std::vector<PadicPoly>& u = digit(k);
        bool empty = true;
        for (auto& e : u)
            if (!e.is_zero() && poly_valuation_floor(e) < t.n_work) empty = false;
        if (empty) continue;
        std::vector<PadicPoly> v, w;
        reduce_finite_pole_step(u, -k - 1, t, v, w);
        std::vector<PadicPoly>& nxt = digit(k + 1);
        for (size_t e = 0; e < m; e++) nxt[e] = poly_as_representative((nxt[e] + w[e]).trim(), t.n_work);
        u.assign(m, PadicPoly());
    }

    // stage 2: pole at infinity, digit-wise from the top power of r
    for (int64_t y = hi - 1; y >= 0; y--) {
        while (true) {
            std::vector<PadicPoly>& fy = digit(y);
            int64_t e_deg = -1;
            for (auto& e : fy)
                for (size_t i = e.size(); i-- > 0;) {
                    if (e[i].is_regular()) {
                        e_deg = std::max(e_deg, (int64_t)i);
                        break;
                    }
                }
            if (e_deg < 0) break;
            int64_t ell = d * y + e_deg + 1;
            int64_t j = ell / d, a = ell % d;
            if (ell >= (int64_t)t.inv_inf.size())
                throw PadicError("reduce_to_basis: infinity table too small");
            std::vector<PadicApprox> lead(m, zero);
            for (size_t e = 0; e < m; e++)
                lead[e] = fy[e].coeff_or((size_t)e_deg, zero);
            std::vector<PadicApprox> v = t.inv_inf[(size_t)ell].mul_vec(lead);
            // subtract nabla(V Gamma^a r^j):
            //   a > 0 (j = y):   digit y -= a V Gamma^(a-1) + carry,  digit y-1 -= low part
            //   a = 0 (j = y+1): digit y -= (j r' + b) V  (no carry, degree < d)
            for (size_t e = 0; e < m; e++) {
                PadicPoly acc = t.rprime.scaled(v[e].mul_exact(BigInt(j)));
                for (size_t k2 = 0; k2 < m; k2++)
                    if (!t.b.at(e, k2).is_zero() && !v[k2].is_exact_zero())
                        acc = acc + t.b.at(e, k2).scaled(v[k2]);
                PadicPoly t1 = acc.shifted((size_t)a);
                PadicPoly c1, c0;
                poly_divmod(t1, t.r, c1, c0);
                if (a > 0) {
                    std::vector<PadicPoly>& dj = digit(j);
                    PadicPoly da =
                        PadicPoly::constant(v[e].mul_exact(BigInt(a))).shifted((size_t)(a - 1));
                    dj[e] = poly_as_representative((dj[e] - da - c1).trim(), t.n_work);
                    std::vector<PadicPoly>& djm = digit(j - 1);
                    djm[e] = poly_as_representative((djm[e] - c0).trim(), t.n_work);
                } else {
                    if (!c1.is_zero() && poly_valuation_floor(c1) < t.n_work)
                        throw PadicError("reduce_to_basis: unexpected carry at a = 0");
                    std::vector<PadicPoly>& djm = digit(j - 1);
                    djm[e] = poly_as_representative((djm[e] - c0).trim(), t.n_work);
                }
            }
        }
    }

    // stage 3: eliminate the Gamma^(d-1) / r component with the l = 0 solve
    {
        std::vector<PadicPoly>& fm1 = digit(-1);
        std::vector<PadicApprox> lead(m, zero);
        for (size_t e = 0; e < m; e++) lead[e] = fm1[e].coeff_or((size_t)(d - 1), zero);
        bool nz = false;
        for (auto& x : lead)
            if (!x.is_exact_zero() && x.is_regular()) nz = true;
        if (nz) {
            std::vector<PadicApprox> v = t.inv_inf[0].mul_vec(lead);
            for (size_t e = 0; e < m; e++) {
                PadicPoly acc;
                for (size_t k2 = 0; k2 < m; k2++)
                    if (!t.b.at(e, k2).is_zero() && !v[k2].is_exact_zero())
                        acc = acc + t.b.at(e, k2).scaled(v[k2]);
                fm1[e] = poly_as_representative((fm1[e] - acc).trim(), t.n_work);
            }
        }
        // the top coefficient must now vanish to working precision
        for (size_t e = 0; e < m; e++) {
            PadicApprox top = fm1[e].coeff_or((size_t)(d - 1), zero);
            if (top.is_regular() && top.valuation() < t.n_work - 1)
                throw PadicError("reduce_to_basis: cokernel step failed to cancel");
        }
    }

    std::vector<PadicApprox> out((size_t)((d - 1) * (int64_t)m), zero);
    const std::vector<PadicPoly>& fm1 = digit(-1);
    for (int64_t i = 0; i <= d - 2; i++)
        for (size_t k = 0; k < m; k++)
            out[(size_t)i * m + k] = fm1[k].coeff_or((size_t)i, zero);
    return out;
}

PadicMat frobenius_on_h2(const RSeriesMat& g, const ReductionTables& t,
                         const PrecisionPlan& plan, const PadicCtx& ctx, int threads) {
    const size_t m = t.m;
    const int64_t d = t.d;
    const int64_t ip = (int64_t)ctx.p();
    const size_t dim = (size_t)(d - 1) * m;
    PadicMat out(dim, dim, PadicApprox::exact_zero(ctx));
    const PadicApprox pfac = PadicApprox::from_integer(ctx, BigInt(ip), t.n_work + 4);

    // radix digits of Gamma^(p(i+1)-1) for i = 0..d-2
    std::vector<std::vector<PadicPoly>> gdig((size_t)(d - 1));
    for (int64_t i = 0; i <= d - 2; i++) {
        PadicPoly mono =
            PadicPoly::constant(PadicApprox::from_integer(ctx, BigInt(1), t.n_work + 4))
                .shifted((size_t)(ip * (i + 1) - 1));
        gdig[(size_t)i] = radix_convert(mono, t.r);
    }

    auto col_work = [&](size_t col_lo, size_t col_hi) {
        for (size_t col = col_lo; col < col_hi; col++) {
            int64_t i = (int64_t)(col / m);
            size_t k = col % m;
            // form = G e_k * p Gamma^(p(i+1)-1) dG
            OneForm form;
            const auto& mul = gdig[(size_t)i];
            form.lo = g.lo;
            form.digits.assign(g.digits.size() + mul.size(), std::vector<PadicPoly>(m));
            for (size_t tg = 0; tg < g.digits.size(); tg++) {
                for (size_t tm = 0; tm < mul.size(); tm++) {
                    if (mul[tm].is_zero()) continue;
                    for (size_t e = 0; e < m; e++) {
                        const PadicPoly& a = g.digits[tg].at(e, k);
                        if (a.is_zero()) continue;
                        PadicPoly c1, c0;
                        poly_divmod(a * mul[tm], t.r, c1, c0);
                        auto& slot0 = form.digits[tg + tm][e];
                        slot0 = (slot0 + c0).trim();
                        auto& slot1 = form.digits[tg + tm + 1][e];
                        slot1 = (slot1 + c1).trim();
                    }
                }
            }
            for (auto& dgt : form.digits)
                for (auto& e : dgt) e = poly_as_representative(e.scaled(pfac), t.n_work);
            std::vector<PadicApprox> coords = reduce_to_basis(form, t);
            for (size_t row = 0; row < dim; row++)
                out.at(row, col) = coords[row].truncated_abs(plan.n3);
        }
    };
    threads = std::max(1, threads);
    if (threads == 1 || dim < 4) {
        col_work(0, dim);
    } else {
        std::vector<std::future<void>> futs;
        size_t chunk = (dim + threads - 1) / threads;
        for (int t2 = 0; t2 < threads; t2++) {
            size_t lo = std::min(dim, (size_t)t2 * chunk);
            size_t hi = std::min(dim, lo + chunk);
            futs.push_back(std::async(std::launch::async, col_work, lo, hi));
        }
        for (auto& f : futs) f.get();
    }
    return out;
}

}  // namespace pzeta
