#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "pzeta/pipeline.hpp"

using namespace pzeta;

int main(int argc, char** argv) {
    CLI::App app{"pzeta: zeta functions of compactified surfaces Z^2 = Q(X,Gamma) over F_p"};

    std::string manifest_path;
    std::string report_path;
    std::string precision_override;
    PipelineOptions opt;
    app.add_option("--manifest", manifest_path, "surface manifest file")->required();
    app.add_flag("--conjecture-finite-poles", opt.conjecture_finite_poles,
                 "assume the Frobenius matrix has a finite-order pole at infinity "
                 "(results flagged conditional)");
    app.add_option("--verify", opt.verify_smax,
                   "verify the zeta function against exhaustive point counts up to F_{p^S}");
    app.add_option("--threads", opt.threads, "worker threads for stage-internal parallelism");
    app.add_option("--dump-intermediates", opt.dump_dir,
                   "directory for the Gamma-adic and r-adic matrix dumps");
    app.add_option("--precision-override", precision_override, "e.g. \"N3=25\"");
    app.add_option("--report", report_path, "write the machine-readable JSON report here");
    app.add_flag("--method2", opt.use_method2,
                 "use the direct-recurrence deformation (lower memory, no certified bound)");
    app.add_option("--guard", opt.enumeration_guard, "enumeration guard (field evaluations)");

    CLI11_PARSE(app, argc, argv);

    if (!precision_override.empty()) {
        auto eq = precision_override.find('=');
        std::string key = precision_override.substr(0, eq == std::string::npos ? precision_override.size() : eq);
        if (eq == std::string::npos || key != "N3") {
            std::cerr << "error: --precision-override expects \"N3=<value>\"\n";
            return (int)ExitCode::manifest_error;
        }
        try {
            opt.n3_override = std::stoll(precision_override.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "error: bad N3 value in --precision-override\n";
            return (int)ExitCode::manifest_error;
        }
    }

    SurfaceInput surface;
    try {
        surface = surface_from_manifest(load_manifest(manifest_path));
    } catch (const std::exception& e) {
        std::cerr << "manifest error: " << e.what() << "\n";
        return (int)ExitCode::manifest_error;
    }

    PipelineResult res = run_pipeline(surface, opt);
    std::cout << res.report_text;
    if (res.code != ExitCode::ok) std::cerr << "error: " << res.message << "\n";
    if (!report_path.empty() && !res.report_json.empty()) {
        std::ofstream out(report_path);
        out << res.report_json << "\n";
    }
    return (int)res.code;
}
