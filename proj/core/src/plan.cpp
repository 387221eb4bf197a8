#include "pzeta/plan.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pzeta {

int64_t ilog_floor_u64(uint64_t x, uint64_t p) {
    if (x == 0) return 0;  // the papers' convention: log_p(0) reads as 0
    int64_t t = 0;
    unsigned __int128 pw = p;
    while (pw <= x) { pw *= p; t++; }
    return t;
}

int64_t ilog_ceil_u64(uint64_t x, uint64_t p) {
    if (x <= 1) return 0;
    int64_t t = 0;
    unsigned __int128 pw = 1;
    while (pw < x) { pw *= p; t++; }
    return t;
}

int64_t christol_dwork_bound(int64_t m, uint64_t p) {
    assert(m >= 1);
    BigInt fact = BigInt::factorial((uint64_t)(m - 1));
    int64_t t1 = fact.is_one() ? 0 : ord_p(fact, p);
    BigInt prod(1);
    for (int64_t j = 1; j <= m; j++) prod *= BigInt::binomial((uint64_t)m, (uint64_t)j);
    int64_t t2 = std::min<int64_t>(m - 1, ord_p(prod, p));
    return m - 1 + t1 + t2;
}

GrowthConstants growth_constants(int64_t m, uint64_t p, int64_t delta_bound, int64_t nden,
                                 bool nilpotent) {
    GrowthConstants out;
    int64_t a2;
    Rational b2;
    if (nilpotent) {
        a2 = christol_dwork_bound(m, p);
        b2 = Rational(0);
        delta_bound = 0;
        nden = 1;
    } else if ((int64_t)p > std::max<int64_t>(m, 2 * nden)) {
        a2 = m * m - 1;
        b2 = Rational(2 * m * m - m - 1);
    } else {
        int64_t lg = ilog_ceil_u64((uint64_t)(2 * nden), p);
        a2 = m * (m - 1) * (1 + lg) + 3 * m - 3;
        b2 = Rational(2 * m * (m - 1) * (1 + lg) + 3 * m - 3);
    }
    Rational b3 = Rational(m * m) *
                  (Rational(delta_bound, 1) / Rational((int64_t)p - 1) +
                   Rational(4 * ilog_ceil_u64((uint64_t)(delta_bound + 1), p)) +
                   Rational(2 * ilog_ceil_u64((uint64_t)(2 * nden), p)));
    Rational b1 = Rational(a2 * ilog_ceil_u64((uint64_t)(2 * delta_bound + 1), p)) + b2 + b3;
    out.alpha2 = a2;
    out.beta2 = b2;
    out.alpha = 2 * a2 + m;
    Rational beta = Rational(2) * b1 +
                    Rational(m) * Rational(ilog_ceil_u64((uint64_t)nden, p) +
                                           ilog_ceil_u64((uint64_t)(2 * delta_bound + 2), p));
    out.beta = Rational(beta.ceil());
    return out;
}

int64_t DecayFloor::floor_fin(int64_t k_abs) const {
    assert(k_abs >= 1);
    // (l+1) - floor(log_p(p(2l+1))) with l = floor((2|k| - p + 1) / 2p); this
    // form is nondecreasing in |k| (the simplified |k|/p - log display dips
    // where 2|k|+1 crosses a power of p)
    int64_t ell = (2 * k_abs - (int64_t)p + 1) / (2 * (int64_t)p);
    if (ell < 0) ell = 0;
    return (ell + 1) - ilog_floor_u64(p * (uint64_t)(2 * ell + 1), p);
}

int64_t DecayFloor::ell_inf(int64_t k) const {
    // smallest series index whose reduction reaches r-degree k; the floor of
    // (2k - (p-1)(adj_ratio - 1)) / (2p (adj_ratio + r_ratio - 1)), clamped at 0
    Rational num = Rational(2 * k) - Rational((int64_t)p - 1) * (adj_ratio - Rational(1));
    Rational den = Rational(2 * (int64_t)p) * (adj_ratio + r_ratio - Rational(1));
    if (den.sign() <= 0) return 0;  // infinity side certified finite; callers gate on that flag
    BigInt fl = (num / den).floor();
    if (fl.is_neg()) return 0;
    return fl.to_i64();
}

int64_t DecayFloor::floor_inf(int64_t k) const {
    int64_t ell = ell_inf(k);
    return (ell + 1) - ilog_floor_u64((uint64_t)p * (uint64_t)(2 * ell + 1), p);
}

DecayFloor make_decay_floor(uint64_t p, int64_t deg_adj, int64_t deg_res, int64_t deg_r_frob) {
    DecayFloor f;
    f.p = p;
    f.adj_ratio = Rational(deg_adj) / Rational(deg_res);
    f.r_ratio = Rational(deg_r_frob) / (Rational((int64_t)p) * Rational(deg_res));
    if (f.adj_ratio + f.r_ratio <= Rational(1)) {
        f.infinity_side_finite = true;
        // kappa(ell) is nonincreasing: every reduced term stays below the
        // starting degree bound
        Rational kmax = (Rational((int64_t)p - 1) / Rational(2)) * (f.adj_ratio - Rational(1));
        if (kmax.sign() < 0) kmax = Rational(0);
        f.zero_beyond = kmax.ceil().to_i64() + 1;
    }
    return f;
}

int64_t final_accuracy(uint64_t p, int64_t d, int64_t g) {
    int64_t D = d - 2 * g;
    if (D < 0) throw std::domain_error("final_accuracy: d < 2g");
    if (D == 0) return 1;
    int64_t e = D / 2;
    BigInt bound = BigInt(2) * BigInt::pow_u64(BigInt((int64_t)p), (uint64_t)e) *
                   BigInt::binomial((uint64_t)D, (uint64_t)e);
    return ilog_ceil(bound.mag(), p);
}

namespace {

int64_t fin_lhs(int64_t x, uint64_t p, int64_t alpha_fin) {
    return x / (int64_t)p - ilog_floor_u64((uint64_t)(2 * x + 1), p) -
           alpha_fin * ilog_floor_u64((uint64_t)x, p);
}

}  // namespace

PrecisionPlan make_plan(const PlanInput& in) {
    PrecisionPlan plan;
    const uint64_t p = in.p;
    const int64_t m = 2 * in.g;
    plan.d_r = in.d;
    plan.genus = in.g;
    plan.bmp = christol_dwork_bound(m, p);
    plan.alpha_prime = 2 * plan.bmp + 1;
    plan.alpha_fin = 2 * plan.bmp + m;
    plan.conjecture_mode = in.conjecture;
    plan.floors = in.floors;

    plan.n_final = final_accuracy(p, in.d, in.g);
    plan.n3 = in.n3_override > 0 ? in.n3_override : plan.n_final;
    if (plan.n3 < plan.n_final)
        throw std::domain_error("make_plan: N3 override below the recovery precision N");

    // finite side: smallest x such that every k >= x clears N3, i.e. the
    // suffix minimum of
    //   floor(k/p) - floor(log_p(2k+1)) - (2B + 2g) floor(log_p k)
    // stays >= N3.  (The display is not monotone: both log terms jump at
    // powers of p, so the pointwise smallest solution may be followed by a
    // dip; the dropped-tail argument needs the whole suffix.)
    {
        int64_t k_end = (int64_t)p * (int64_t)p * (plan.n3 + plan.alpha_fin + 44);
        while (true) {
            // beyond k_end the linear term dominates every later decade:
            // per decade k -> p k the penalty grows by at most alpha_fin + 1
            // while floor(k/p) at least triples, so once floor(k_end/p)
            // exceeds twice the total penalty budget the suffix stays clear
            int64_t penalty = (plan.alpha_fin + 1) * (ilog_floor_u64((uint64_t)k_end, p) + 2);
            if (k_end / (int64_t)p >= 2 * (penalty + plan.n3 + 4) &&
                fin_lhs(k_end, p, plan.alpha_fin) >= plan.n3 + plan.alpha_fin + 2)
                break;
            k_end *= 2;
        }
        std::vector<int64_t> suff((size_t)k_end + 2, 0);
        suff[(size_t)k_end + 1] = plan.n3 + 100;
        for (int64_t k = k_end; k >= 1; k--)
            suff[(size_t)k] = std::min(fin_lhs(k, p, plan.alpha_fin), suff[(size_t)k + 1]);
        int64_t x = 1;
        while (suff[(size_t)x] < plan.n3) x++;
        plan.x_fin = x;
    }
    plan.n2_fin = plan.x_fin / (int64_t)p -
                  ilog_floor_u64((uint64_t)(2 * plan.x_fin + 1), p);
    plan.ng_fin = in.d * plan.x_fin;

    // infinity side
    plan.inf_growth = growth_constants(m, p, in.delta_inf, in.nden_inf, false);
    if (in.conjecture) {
        plan.n2_inf = plan.n2_fin;
        plan.ng_inf = 100;  // the conjecture-mode default allowance
        plan.x_inf = (plan.ng_inf + in.d - 1) / in.d;
    } else if (!in.inf_prepared) {
        throw std::runtime_error(
            "make_plan: exponents at infinity are not prepared, so no certified growth "
            "chain exists there; rerun with the finite-pole conjecture");
    } else if (in.floors.infinity_side_finite) {
        plan.x_inf = in.floors.zero_beyond + 1;
        plan.n2_inf = plan.n2_fin;
        plan.ng_inf = in.d * plan.x_inf;
    } else {
        auto inf_lhs = [&](int64_t k) {
            Rational a = Rational(plan.inf_growth.alpha *
                                  ilog_floor_u64((uint64_t)(k * in.d), p)) +
                         plan.inf_growth.beta;
            return (Rational(in.floors.floor_inf(k)) - a - Rational(plan.n3)).floor().to_i64();
        };
        int64_t beta_ceil = plan.inf_growth.beta.ceil().to_i64();
        int64_t k_end = (int64_t)p * (int64_t)p *
                        (plan.n3 + beta_ceil + plan.inf_growth.alpha + 44);
        while (true) {
            int64_t slack = plan.inf_growth.alpha + 2;
            int64_t ell_end = in.floors.ell_inf(k_end);
            int64_t penalty = (plan.inf_growth.alpha + 2) *
                              (ilog_floor_u64((uint64_t)(k_end * in.d), p) + 2);
            if (ell_end / 2 >= penalty + plan.n3 + beta_ceil + 4 && inf_lhs(k_end) >= slack)
                break;
            k_end *= 2;
        }
        std::vector<int64_t> suff((size_t)k_end + 2, 0);
        suff[(size_t)k_end + 1] = 100;
        for (int64_t k = k_end; k >= 1; k--)
            suff[(size_t)k] = std::min(inf_lhs(k), suff[(size_t)k + 1]);
        int64_t x = 1;
        while (suff[(size_t)x] < 0) x++;
        plan.x_inf = x;
        plan.n2_inf = in.floors.floor_inf(plan.x_inf);
        plan.ng_inf = in.d * plan.x_inf;
    }

    plan.n2 = std::max(plan.n2_fin, plan.n2_inf);
    plan.ng = plan.ng_fin + plan.ng_inf;
    plan.ord_f0_used = std::min<int64_t>(in.ord_f0, 0);
    plan.n1 = plan.n2 + (3 * plan.bmp + 1) * ilog_floor_u64((uint64_t)plan.ng, p) - plan.bmp -
              plan.ord_f0_used;

    if (!(plan.n3 >= plan.n_final && plan.n1 > plan.n2 && plan.n2 >= plan.n2_fin &&
          plan.n2_fin >= plan.n3 && plan.ng_fin == in.d * plan.x_fin))
        throw std::runtime_error("make_plan: precision-plan invariants violated");
    return plan;
}

std::string PrecisionPlan::bracket() const {
    return "[" + std::to_string(n_final) + "," + std::to_string(n3) + "," +
           std::to_string(n2_fin) + "," + std::to_string(n2_inf) + "," + std::to_string(n1) +
           ";" + std::to_string(ng_fin) + "," + std::to_string(ng_inf) + "]";
}

// ---------------------------------------------------------------- lattice counts

namespace {

// interior lattice points of t * Delta, Delta the simplex with vertices
// 0, (2g+1,0,0), (0,h,0), (0,0,2):  2h x + 2(2g+1) y + (2g+1)h z < 2h(2g+1) t
int64_t interior_points_3d(int64_t g, int64_t h, int64_t t) {
    const int64_t A = 2 * h, B = 2 * (2 * g + 1), C = (2 * g + 1) * h;
    const int64_t rhs = 2 * h * (2 * g + 1) * t;
    int64_t count = 0;
    for (int64_t z = 1; C * z < rhs; z++)
        for (int64_t x = 1; A * x + C * z < rhs; x++) {
            int64_t rem = rhs - A * x - C * z;  // need B y < rem, y >= 1
            int64_t ymax = (rem - 1) / B;
            if (ymax >= 1) count += ymax;
        }
    return count;
}

// interior points of the triangle with legs (a, 0), (0, b):  b x + a y < a b
int64_t interior_points_leg_triangle(int64_t a, int64_t b) {
    int64_t count = 0;
    for (int64_t x = 1; b * x < a * b; x++) {
        int64_t rem = a * b - b * x;
        int64_t ymax = (rem - 1) / a;
        if (ymax >= 1) count += ymax;
    }
    return count;
}

// interior points of the outer face: 2h x + 2(2g+1) y + (2g+1)h z = 2h(2g+1),
// x, y, z >= 1
int64_t interior_points_outer_face(int64_t g, int64_t h) {
    const int64_t A = 2 * h, B = 2 * (2 * g + 1), C = (2 * g + 1) * h;
    const int64_t rhs = 2 * h * (2 * g + 1);
    int64_t count = 0;
    for (int64_t z = 1; C * z < rhs; z++)
        for (int64_t x = 1; A * x + C * z < rhs; x++) {
            int64_t rem = rhs - A * x - C * z;
            if (rem % B == 0 && rem / B >= 1) count++;
        }
    return count;
}

}  // namespace

int64_t hodge_h20(int64_t g, int64_t h) { return interior_points_3d(g, h, 1); }

int64_t betti_degree(int64_t g, int64_t h) {
    const int64_t delta_x = 2 * g + 1;
    int64_t l_star_2 = interior_points_3d(g, h, 2);
    int64_t l_star_1 = interior_points_3d(g, h, 1);
    // two-dimensional faces of the simplex
    int64_t f_z0 = interior_points_leg_triangle(delta_x, h);  // span(X, Gamma)
    int64_t f_y0 = interior_points_leg_triangle(delta_x, 2);  // span(X, Z)
    int64_t f_x0 = interior_points_leg_triangle(h, 2);        // span(Gamma, Z)
    int64_t f_out = interior_points_outer_face(g, h);
    int64_t face_sum = (f_z0 - 1) + (f_y0 - 1) + (f_x0 - 1) + (f_out - 1);
    // h^{1,1} from the toric Hodge-number count, plus 2 h^{2,0} for the full
    // middle Betti number (matches d - 2g + 1 on pencils with squarefree
    // resultant of full degree)
    return l_star_2 - 4 * l_star_1 - 3 - face_sum + 2 * l_star_1;
}

}  // namespace pzeta
