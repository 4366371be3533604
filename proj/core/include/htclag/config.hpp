#pragma once

#include <string>
#include <vector>

#include "htclag/detector.hpp"

namespace htclag {

/// Run configuration, read from a flat key = value file (# comments).
/// Documented keys are listed in the README; unknown keys are an error.
struct RunConfig {
    std::string test_case = "vortex"; // vortex | rp1 | rp2 | rp3 | sedov | vacuum
    std::string mesh_file;            // optional mesh override (htclag-mesh format)
    std::string scheme = "hybrid";    // ecl | esl | hybrid
    std::string detector = "mood";    // apriori | mood | off
    double kappa = 0.1;
    double delta = 0.05;
    double cfl = 0.4;
    double t_final = -1.0;  // < 0: case default
    double gamma = 1.4;
    double cv = 1.0;
    double mesh_h = -1.0;   // < 0: case default
    double ecl_guard = 1e-20;
    int threads = 1;
    std::string output_dir; // empty: $HTCLAG_OUTPUT_DIR or "."
    std::vector<double> output_times;
    bool vtk = true;
    bool csv = true;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);
RunConfig load_config_file(const std::string& path);

/// Map the scheme/detector strings onto the detection mode.
DetectorMode resolve_mode(const RunConfig& cfg);

/// Output directory after applying the environment default.
std::string resolve_output_dir(const RunConfig& cfg);

} // namespace htclag
