#ifndef PZETA_PIPELINE_HPP
#define PZETA_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <string>

#include "pzeta/manifest.hpp"
#include "pzeta/pencil.hpp"
#include "pzeta/plan.hpp"
#include "pzeta/zeta.hpp"

namespace pzeta {

enum class ExitCode : int {
    ok = 0,
    internal_error = 1,
    manifest_error = 2,
    gate_violation = 3,
    precision_rerun_needed = 4,
    weil_ambiguous = 5,
    verify_mismatch = 6,
};

struct PipelineOptions {
    bool conjecture_finite_poles = false;
    int verify_smax = 0;       // 0: skip the Lefschetz verification
    int threads = 1;
    int64_t n3_override = 0;   // from --precision-override "N3=.."
    bool use_method2 = false;  // opt-in, non-certified deformation route
    std::string dump_dir;      // --dump-intermediates
    uint64_t enumeration_guard = 1000000000ull;
};

struct PipelineResult {
    ExitCode code = ExitCode::internal_error;
    std::string message;
    GateReport gate;
    PrecisionPlan plan;
    bool have_plan = false;
    ZetaFactorization zeta;
    bool have_zeta = false;
    LefschetzReport lefschetz;
    bool verified = false;
    bool certified = true;  // false on the method-2 route
    int64_t h2_dim = 0;
    std::map<std::string, double> timings_ms;
    // machine-readable report (deterministic except for the timings object)
    std::string report_json;
    std::string report_text;
};

PipelineResult run_pipeline(const SurfaceInput& surface, const PipelineOptions& opt);

}  // namespace pzeta

#endif
