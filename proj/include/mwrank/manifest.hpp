#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mwrank/errors.hpp"
#include "mwrank/pipeline.hpp"

namespace mw {

// All validation problems of a manifest, one per entry, in file order.
class ManifestError : public Error {
public:
    explicit ManifestError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

struct Manifest {
    std::string origin;  // file name or "<string>"
    int n = 1;
    std::string P_text, Q_text;
    WeierstrassModel model;
    CandidateMode candidates = CandidateMode::Auto;
    bool verbose = false;
    bool machine = false;
    std::vector<DossierInput> dossiers;
};

// Format (documented in README.md):
//   # comment                   ('#' starts a comment anywhere on a line)
//   [model]                     n, P, Q
//   [options]                   candidates = auto|declared, verbose = true|false,
//                               format = text|machine
//   [dossier NAME]              point, weights, degree, g, chart.x, chart.y,
//                               chart.z0, chart.z1, chart.z2, lifts
//   key = value                 a line starting with whitespace continues the value
// Local models use the variables s, t, u, v; lifts are separated by ';'.
Manifest parse_manifest(std::string_view text, const std::string& origin = "<string>");
Manifest load_manifest(const std::string& path);

}  // namespace mw
