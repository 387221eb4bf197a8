#include <doctest.h>

#include "pzeta/plan.hpp"

using namespace pzeta;

namespace {
// plan inputs shaped like the worked examples (exponent data per the
// observed infinity sets, floors from the generic degree bounds)
PlanInput example_input(int64_t g, int64_t h, int64_t d, uint64_t p, bool conjecture) {
    PlanInput in;
    in.g = g;
    in.h = h;
    in.d = d;
    in.p = p;
    in.conjecture = conjecture;
    in.delta_inf = (h * (2 * g - 1) + 2 * (2 * g + 1) - 1) / (2 * (2 * g + 1));
    in.nden_inf = 2 * (2 * g + 1);
    in.floors = make_decay_floor(p, /*deg_adj=*/2 * g * h, /*deg_res=*/d,
                                 /*deg_r_frob=*/(int64_t)p * h - 1);
    return in;
}
}  // namespace

TEST_CASE("Christol-Dwork bound") {
    CHECK(christol_dwork_bound(2, 17) == 1);
    CHECK(christol_dwork_bound(2, 3) == 1);   // ord_3(C(2,1) C(2,2)) = 0
    CHECK(christol_dwork_bound(2, 2) == 2);          // 1 + 0 + min{1, ord_2(2)} = 2
    CHECK(christol_dwork_bound(4, 2) == 3 + 1 + 3);  // ord_2(3!) = 1; min{3, ord_2(96) = 5} = 3
    for (int64_t m : {2, 3, 4})
        for (uint64_t p : {11ull, 13ull, 31ull})
            if ((int64_t)p >= m) CHECK(christol_dwork_bound(m, p) == m - 1);
}

TEST_CASE("growth constants: nilpotent case") {
    GrowthConstants gc = growth_constants(2, 17, 0, 1, true);
    CHECK(gc.alpha2 == 1);
    CHECK(gc.beta2 == Rational(0));
    CHECK(gc.alpha == 4);  // ceil(2*1 + 2)
}

TEST_CASE("growth constants: large p case") {
    GrowthConstants gc = growth_constants(2, 17, 3, 6, false);
    CHECK(gc.alpha2 == 2 * 2 - 1);
    CHECK(gc.beta2 == Rational(2 * 4 - 2 - 1));
    CHECK(gc.alpha == 2 * 3 + 2);
}

TEST_CASE("decay floor, finite side") {
    DecayFloor f = make_decay_floor(17, 26, 26, 17 * 13 - 1);
    // k = -p: floor = 1 - 1 = 0
    CHECK(f.floor_fin(17) == 0);
    // Ex audit: x_fin = 476 gives 28 - 2 = 26
    CHECK(f.floor_fin(476) == 26);
    // monotone in |k|
    int64_t prev = f.floor_fin(1);
    for (int64_t k = 2; k <= 10000; k++) {
        int64_t cur = f.floor_fin(k);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("conjecture-mode plan reproduces the p=17 bracket") {
    PrecisionPlan plan = make_plan(example_input(1, 13, 26, 17, true));
    CHECK(plan.bracket() == "[18,18,26,26,37;12376,100]");
    CHECK(plan.x_fin == 476);
    CHECK(plan.alpha_fin == 4);  // (2 B_{2g,p} + 2g)
    CHECK(plan.n1 > plan.n2);
    CHECK(plan.n2 >= plan.n2_fin);
    CHECK(plan.n2_fin >= plan.n3);
}

TEST_CASE("final accuracy N for the worked examples") {
    CHECK(final_accuracy(17, 26, 1) == 18);
    CHECK(final_accuracy(5, 62, 1) == 55);
    CHECK(final_accuracy(11, 28, 2) == 19);
}

TEST_CASE("betti degree fixtures") {
    CHECK(betti_degree(1, 13) == 25);
    CHECK(betti_degree(1, 31) == 61);
    CHECK(betti_degree(2, 7) == 25);
    CHECK(hodge_h20(1, 13) == 2);
    CHECK(hodge_h20(1, 31) == 5);
    CHECK(hodge_h20(2, 7) == 2);
    // cross-check d - 2g + 1 with d = 2gh
    for (auto [g, h] : std::vector<std::pair<int64_t, int64_t>>{{1, 3}, {1, 5}, {1, 9}, {2, 3}})
        CHECK(betti_degree(g, h) == 2 * g * h - 2 * g + 1);
}

TEST_CASE("plan monotonicity in N3") {
    PlanInput in = example_input(1, 3, 6, 7, true);
    PrecisionPlan base = make_plan(in);
    in.n3_override = base.n3 + 5;
    PrecisionPlan bumped = make_plan(in);
    CHECK(bumped.n3 == base.n3 + 5);
    CHECK(bumped.x_fin >= base.x_fin);
    CHECK(bumped.n2_fin >= base.n2_fin);
    CHECK(bumped.n1 >= base.n1);
    CHECK(bumped.ng >= base.ng);
}

TEST_CASE("smallest-solution property of x_fin") {
    for (uint64_t p : {5ull, 7ull, 11ull, 17ull}) {
        PrecisionPlan plan = make_plan(example_input(1, 3, 6, p, true));
        auto lhs = [&](int64_t x) {
            return x / (int64_t)p - ilog_floor_u64((uint64_t)(2 * x + 1), p) -
                   plan.alpha_fin * ilog_floor_u64((uint64_t)x, p);
        };
        CHECK(lhs(plan.x_fin) >= plan.n3);
        CHECK(lhs(plan.x_fin - 1) < plan.n3);
    }
}

TEST_CASE("unconditional plan differs only on the infinity side") {
    PlanInput in = example_input(1, 13, 26, 17, false);
    PrecisionPlan plan = make_plan(in);
    CHECK(plan.n_final == 18);
    CHECK(plan.n2_fin == 26);
    CHECK(plan.ng_fin == 12376);
    CHECK(plan.n2_inf >= plan.n2_fin);
    CHECK(plan.x_inf >= 1);
}

TEST_CASE("infinity floor formula") {
    DecayFloor f = make_decay_floor(17, 26, 26, 17 * 13 - 1);
    // adj_ratio = 1, r_ratio = (221-1+1)/..., ell at k = 0 clamps to 0
    CHECK(f.floor_inf(0) == 1 - 1);
    CHECK(f.floor_inf(10000) > 0);
    int64_t prev = f.floor_inf(0);
    for (int64_t k = 1; k < 5000; k++) {
        int64_t cur = f.floor_inf(k);
        CHECK(cur >= prev);
        prev = cur;
    }
}
