#ifndef PZETA_MANIFEST_HPP
#define PZETA_MANIFEST_HPP

#include <string>

#include "pzeta/pencil.hpp"

namespace pzeta {

struct ManifestError : std::runtime_error {
    int line;
    ManifestError(const std::string& msg, int line_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

// Text format:
//   # comment
//   p = <prime>
//   term <c> <a> <b>      meaning  c * X^a * Gamma^b
struct Manifest {
    uint64_t p = 0;
    Bivariate terms;
};

Manifest parse_manifest_text(const std::string& text);
Manifest load_manifest(const std::string& path);
SurfaceInput surface_from_manifest(const Manifest& m);

}  // namespace pzeta

#endif
