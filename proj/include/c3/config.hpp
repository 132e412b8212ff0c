// Line-oriented key = value configuration and the run manifest embedded
// in every output file.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "c3/kinematics.hpp"

namespace c3 {

struct ProgramConfig {
    SystemConfig system{{1.0, 1.0, 1.0}, {1.0, 2.0, -3.0}};
    DomainSpec domain{};
    int M = 200;
    int sphere_theta_order = 64;
    int sphere_phi_order = 128;
    double tol = 1e-9;
    int threads = 1;
    unsigned long seed = 20240101;
    double B1 = -0.310;
    double B2 = -0.63;
};

// Accepted keys: masses, charges (three numbers), mu, nu, M,
// sphere_theta_order, sphere_phi_order, tol, threads, seed, B1, B2.
// '#' starts a comment; unknown keys are an error.
ProgramConfig load_config(const std::string& path);
ProgramConfig parse_config(const std::string& text);

struct RunManifest {
    std::string tool_version;
    std::string subcommand;
    std::string config_path;
    std::string output_path;
    unsigned long seed = 0;
    std::vector<std::pair<std::string, std::string>> overrides;

    // '# key: value' lines for CSV, or a flat object for JSON payloads.
    std::string comment_header() const;
};

}  // namespace c3
