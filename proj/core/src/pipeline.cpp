#include "pzeta/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pzeta/deformation.hpp"
#include "pzeta/intfactor.hpp"
#include "pzeta/kedlaya.hpp"
#include "pzeta/reduction.hpp"

namespace pzeta {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

ordered_json zpoly_json(const ZPoly& f) {
    ordered_json a = ordered_json::array();
    for (size_t i = 0; i < f.size(); i++) a.push_back(f[i].to_decimal());
    return a;
}

ordered_json rational_function_json(const RationalFunction& z) {
    return ordered_json{{"num", zpoly_json(z.num)}, {"den", zpoly_json(z.den)}};
}

void dump_gamma_series(const std::string& dir, const LocalSeriesMatrix& f) {
    std::ofstream out(dir + "/gamma_series.txt");
    out << "# entry i j | l | coeff (p^v * u mod p^N)\n";
    for (size_t l = 0; l < f.coeff.size(); l++)
        for (size_t i = 0; i < f.coeff[l].rows(); i++)
            for (size_t j = 0; j < f.coeff[l].cols(); j++)
                out << "entry " << i << " " << j << " | " << l << " | "
                    << f.coeff[l].at(i, j).debug_string() << "\n";
}

void dump_rseries(const std::string& dir, const RSeriesMat& g) {
    std::ofstream out(dir + "/radic_series.txt");
    out << "# entry i j | k | coeff-vector (ascending Gamma powers)\n";
    for (size_t t = 0; t < g.digits.size(); t++) {
        int64_t k = g.lo + (int64_t)t;
        for (size_t i = 0; i < g.digits[t].rows(); i++)
            for (size_t j = 0; j < g.digits[t].cols(); j++) {
                out << "entry " << i << " " << j << " | " << k << " |";
                const PadicPoly& e = g.digits[t].at(i, j);
                for (size_t c = 0; c < e.size(); c++) out << " " << e[c].debug_string();
                out << "\n";
            }
    }
}

void dump_f0(const std::string& dir, const PadicMat& f0) {
    std::ofstream out(dir + "/fiber_frobenius.txt");
    out << "# entry i j | coeff\n";
    for (size_t i = 0; i < f0.rows(); i++)
        for (size_t j = 0; j < f0.cols(); j++)
            out << "entry " << i << " " << j << " | " << f0.at(i, j).debug_string() << "\n";
}

}  // namespace

PipelineResult run_pipeline(const SurfaceInput& surface, const PipelineOptions& opt) {
    PipelineResult res;
    std::map<std::string, double>& tm = res.timings_ms;
    const uint64_t p = surface.p;

    try {
        // ------------------------------------------------ gate
        Stopwatch sw_gate;
        ConnectionData conn = connection_matrix(surface);
        res.gate = assumption_gate(surface, conn);
        tm["gate"] = sw_gate.ms();
        if (!res.gate.pass()) {
            res.code = ExitCode::gate_violation;
            std::string codes;
            for (auto& v : res.gate.violations) codes += (codes.empty() ? "" : ", ") + v;
            res.message = "assumption gate violated: " + codes;
            return res;
        }

        // ------------------------------------------------ plan
        Stopwatch sw_plan;
        PlanInput pin;
        pin.g = surface.g;
        pin.h = surface.h;
        pin.d = conn.d;
        pin.p = p;
        pin.conjecture = opt.conjecture_finite_poles;
        pin.n3_override = opt.n3_override;
        pin.ord_f0 = 0;
        pin.floors = make_decay_floor(p, conn.adj_deg, conn.res.degree(),
                                      (int64_t)p * surface.h - 1);
        pin.delta_inf = conn.exponents.delta_bound;
        pin.nden_inf = conn.exponents.nden;
        pin.inf_prepared = conn.exponents.prepared;
        res.plan = make_plan(pin);
        res.have_plan = true;
        tm["plan"] = sw_plan.ms();

        // ------------------------------------------------ context sizing
        auto build_ctx = [&](const PrecisionPlan& plan) {
            KedlayaBudget kb = kedlaya_budget(p, plan.n1, surface.g);
            int64_t digits = std::max<int64_t>(2 * kb.cap + 32, 3 * plan.n1 + 64);
            return std::make_shared<PadicCtx>(p, digits);
        };
        std::shared_ptr<PadicCtx> ctx = build_ctx(res.plan);

        // ------------------------------------------------ fibre Frobenius
        Stopwatch sw_fiber;
        ZPoly q0 = fiber_polynomial_at_zero(surface);
        FiberFrobenius fib = kedlaya_fiber(q0, *ctx, res.plan.n1);
        int64_t ord_f0 = mat_valuation_floor(fib.f0);
        if (ord_f0 < 0) {
            // N1 depends on min(ord F(0), 0): replan and rerun the fibre once
            pin.ord_f0 = ord_f0;
            res.plan = make_plan(pin);
            ctx = build_ctx(res.plan);
            fib = kedlaya_fiber(q0, *ctx, res.plan.n1);
        }
        tm["fiber_frobenius"] = sw_fiber.ms();

        // ------------------------------------------------ deformation
        Stopwatch sw_def;
        LocalSeriesMatrix f_local;
        if (opt.use_method2) {
            f_local = method2_frobenius_local(conn.b, conn.r, fib.f0, *ctx, res.plan.ng,
                                              res.plan.n1);
            res.certified = false;
        } else {
            LocalSeriesMatrix c = local_fundamental_solution(conn.b, conn.r, *ctx, res.plan.ng,
                                                             res.plan.n1, SolutionSide::left);
            int64_t ng_dual = (res.plan.ng + (int64_t)p - 1) / (int64_t)p + 1;
            LocalSeriesMatrix c_dual = local_fundamental_solution(conn.b, conn.r, *ctx, ng_dual,
                                                                  res.plan.n1, SolutionSide::dual);
            f_local = deform_frobenius_local(c, c_dual, fib.f0, p, res.plan.ng, opt.threads);
        }
        tm["deformation"] = sw_def.ms();
        if (!opt.dump_dir.empty()) {
            std::filesystem::create_directories(opt.dump_dir);
            dump_f0(opt.dump_dir, fib.f0);
            dump_gamma_series(opt.dump_dir, f_local);
        }

        // ------------------------------------------------ analytic continuation
        Stopwatch sw_cont;
        RSeriesMat g = analytic_continuation(f_local, conn.r, res.plan, *ctx, opt.threads);
        f_local.coeff.clear();
        f_local.coeff.shrink_to_fit();
        tm["continuation"] = sw_cont.ms();
        if (!opt.dump_dir.empty()) dump_rseries(opt.dump_dir, g);

        // ------------------------------------------------ reduction
        Stopwatch sw_red;
        int64_t l_fin_max = res.plan.x_fin + (int64_t)p + 2;
        int64_t l_inf_max = conn.d * (res.plan.x_inf + (int64_t)p + 3) + conn.d;
        ReductionTables tables = build_reduction_tables(conn.b, conn.r, *ctx, l_fin_max,
                                                        l_inf_max, res.plan.n2 + 8);
        PadicMat h2 = frobenius_on_h2(g, tables, res.plan, *ctx, opt.threads);
        res.h2_dim = (int64_t)h2.rows();
        tm["reduction"] = sw_red.ms();

        // ------------------------------------------------ zeta assembly
        Stopwatch sw_zeta;
        std::vector<SingularFiber> sing = analyze_singular_fibers(surface, conn);
        std::vector<FiberZeta> fz = fiber_zeta_data(sing, surface.g, opt.enumeration_guard);
        res.zeta = assemble_zeta(h2, fz, p, res.plan);
        res.have_zeta = true;
        tm["zeta_assembly"] = sw_zeta.ms();

        // ------------------------------------------------ verification
        if (opt.verify_smax > 0) {
            Stopwatch sw_ver;
            res.lefschetz = verify_lefschetz(res.zeta.z_compact, opt.verify_smax, surface.terms,
                                             p, opt.enumeration_guard, opt.threads);
            res.verified = true;
            tm["verification"] = sw_ver.ms();
            if (!res.lefschetz.pass) {
                res.code = ExitCode::verify_mismatch;
                res.message = "point-count verification failed at s = " +
                              std::to_string(res.lefschetz.s_failed);
            }
        }
        if (res.code != ExitCode::verify_mismatch) {
            res.code = ExitCode::ok;
            res.message = "ok";
        }
    } catch (const PrecisionRerunNeeded& e) {
        res.code = ExitCode::precision_rerun_needed;
        res.message = std::string(e.what()) + "; rerun with --precision-override \"N3=" +
                      std::to_string(e.suggested_n3) + "\"";
        return res;
    } catch (const WeilDisambiguationError& e) {
        res.code = ExitCode::weil_ambiguous;
        res.message = e.what();
        return res;
    } catch (const std::exception& e) {
        res.code = ExitCode::internal_error;
        res.message = e.what();
        return res;
    }

    // ------------------------------------------------ reports
    ordered_json j;
    j["input"] = ordered_json::object();
    j["input"]["p"] = p;
    j["input"]["genus"] = surface.g;
    j["input"]["h"] = surface.h;
    {
        ordered_json terms = ordered_json::array();
        for (auto& t : surface.terms)
            terms.push_back(ordered_json{{"c", t.c.to_decimal()}, {"a", t.a}, {"b", t.b}});
        j["input"]["terms"] = terms;
    }
    j["plan"] = ordered_json::object();
    j["plan"]["bracket"] = res.plan.bracket();
    j["plan"]["d"] = res.plan.d_r;
    j["plan"]["x_fin"] = res.plan.x_fin;
    j["plan"]["x_inf"] = res.plan.x_inf;
    j["plan"]["bmp"] = res.plan.bmp;
    j["plan"]["betti_degree"] = betti_degree(surface.g, surface.h);
    j["plan"]["hodge_h20"] = hodge_h20(surface.g, surface.h);
    j["gate"] = ordered_json::object();
    j["gate"]["pass"] = res.gate.pass();
    j["gate"]["warnings"] = res.gate.warnings;
    j["provenance"] = ordered_json::object();
    j["provenance"]["conjecture_finite_poles"] = opt.conjecture_finite_poles;
    j["provenance"]["certified"] =
        res.certified && !opt.conjecture_finite_poles
            ? "provable"
            : (res.certified ? "conditional on the finite-pole conjecture" : "plausible");
    j["provenance"]["method"] = opt.use_method2 ? "method2" : "method1";
    if (res.have_zeta) {
        j["zeta"] = ordered_json::object();
        j["zeta"]["dim_h2_open"] = res.h2_dim;
        j["zeta"]["w2"] = zpoly_json(res.zeta.w2);
        j["zeta"]["epsilon"] = res.zeta.epsilon;
        j["zeta"]["p2_compact"] = zpoly_json(res.zeta.p2_compact);
        j["zeta"]["p2_compact_factored"] = factored_poly_string(res.zeta.p2_compact, "T");
        ordered_json fj = ordered_json::array();
        for (auto& f : res.zeta.fibers)
            fj.push_back(ordered_json{{"deg", f.deg},
                                      {"delta", f.delta},
                                      {"numerator", zpoly_json(f.numerator)}});
        j["zeta"]["fibers"] = fj;
        j["zeta"]["z_compact"] = rational_function_json(res.zeta.z_compact);
        j["zeta"]["z_open"] = rational_function_json(res.zeta.z_open);
        j["zeta"]["z_curves"] = rational_function_json(res.zeta.z_curves);
        // Newton-vs-Hodge report (informational)
        ordered_json nd = ordered_json::array();
        for (size_t i = 0; i < res.zeta.p2_compact.size(); i++) {
            const BigInt& c = res.zeta.p2_compact[i];
            nd.push_back(c.is_zero() ? ordered_json(nullptr)
                                     : ordered_json(ord_p(c, p)));
        }
        j["zeta"]["p2_compact_ord_p"] = nd;
    }
    if (res.verified) {
        j["verification"] = ordered_json::object();
        j["verification"]["pass"] = res.lefschetz.pass;
        j["verification"]["s_max"] = opt.verify_smax;
        ordered_json zc = ordered_json::array(), oc = ordered_json::array();
        for (auto& c : res.lefschetz.zeta_counts) zc.push_back(c.to_decimal());
        for (auto& c : res.lefschetz.oracle_counts) oc.push_back(c.to_decimal());
        j["verification"]["zeta_counts"] = zc;
        j["verification"]["oracle_counts"] = oc;
    }
    j["status"] = ordered_json::object();
    j["status"]["code"] = (int)res.code;
    j["status"]["message"] = res.message;
    // timings are excluded from the determinism contract
    ordered_json tj = ordered_json::object();
    for (auto& [k, v] : tm) tj[k] = v;
    j["timings"] = tj;
    res.report_json = j.dump(2);

    std::ostringstream txt;
    txt << "surface: Z^2 = Q(X,Gamma) over F_" << p << ", g = " << surface.g
        << ", h = " << surface.h << "\n";
    txt << "plan:    " << res.plan.bracket() << "  (d = " << res.plan.d_r << ")\n";
    if (res.have_zeta) {
        txt << "P2(Xbar, T) = " << factored_poly_string(res.zeta.p2_compact, "T") << "\n";
        txt << "Z(Xbar, T) = 1 / ((1 - T) * P2 * (1 - " << p * p << " T)),  epsilon = "
            << res.zeta.epsilon << "\n";
    }
    if (res.verified)
        txt << "verification: " << (res.lefschetz.pass ? "counts match" : "MISMATCH") << " up to s = "
            << opt.verify_smax << "\n";
    txt << "status: " << res.message << "\n";
    res.report_text = txt.str();
    return res;
}

}  // namespace pzeta
