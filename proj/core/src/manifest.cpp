#include "pzeta/manifest.hpp"

#include <fstream>
#include <sstream>

namespace pzeta {

Manifest parse_manifest_text(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_p = false;
    while (std::getline(in, line)) {
        lineno++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "p") {
            std::string eq;
            uint64_t p = 0;
            if (!(ls >> eq >> p) || eq != "=")
                throw ManifestError("expected `p = <prime>`", lineno);
            if (!is_prime_u64(p) || p < 3)
                throw ManifestError("p must be an odd prime", lineno);
            m.p = p;
            saw_p = true;
        } else if (tok == "term") {
            std::string c;
            int64_t a = -1, b = -1;
            if (!(ls >> c >> a >> b) || a < 0 || b < 0)
                throw ManifestError("expected `term <c> <a> <b>`", lineno);
            BigInt coeff;
            try {
                coeff = BigInt::from_decimal(c);
            } catch (const std::exception&) {
                throw ManifestError("bad coefficient `" + c + "`", lineno);
            }
            if (!coeff.is_zero()) m.terms.push_back({coeff, (int)a, (int)b});
        } else {
            throw ManifestError("unknown directive `" + tok + "`", lineno);
        }
    }
    if (!saw_p) throw ManifestError("missing `p = <prime>` line", 0);
    if (m.terms.empty()) throw ManifestError("no terms", 0);
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ManifestError("cannot open manifest `" + path + "`", 0);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_manifest_text(ss.str());
}

SurfaceInput surface_from_manifest(const Manifest& m) {
    return make_surface_input(m.p, m.terms);
}

}  // namespace pzeta
