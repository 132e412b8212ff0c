#include "c3/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace c3 {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& value, size_t expect) {
    std::istringstream in(value);
    std::vector<double> out;
    double x;
    while (in >> x) out.push_back(x);
    if (expect != 0 && out.size() != expect)
        throw std::runtime_error("config: expected " + std::to_string(expect) +
                                 " numbers, got '" + value + "'");
    return out;
}

}  // namespace

ProgramConfig parse_config(const std::string& text) {
    ProgramConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "masses") {
            auto v = parse_numbers(value, 3);
            cfg.system.mass = {v[0], v[1], v[2]};
        } else if (key == "charges") {
            auto v = parse_numbers(value, 3);
            cfg.system.charge = {v[0], v[1], v[2]};
        } else if (key == "mu") {
            cfg.domain.mu = parse_numbers(value, 1)[0];
        } else if (key == "nu") {
            cfg.domain.nu = parse_numbers(value, 1)[0];
        } else if (key == "M") {
            cfg.M = static_cast<int>(parse_numbers(value, 1)[0]);
        } else if (key == "sphere_theta_order") {
            cfg.sphere_theta_order = static_cast<int>(parse_numbers(value, 1)[0]);
        } else if (key == "sphere_phi_order") {
            cfg.sphere_phi_order = static_cast<int>(parse_numbers(value, 1)[0]);
        } else if (key == "tol") {
            cfg.tol = parse_numbers(value, 1)[0];
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_numbers(value, 1)[0]);
        } else if (key == "seed") {
            cfg.seed = static_cast<unsigned long>(parse_numbers(value, 1)[0]);
        } else if (key == "B1") {
            cfg.B1 = parse_numbers(value, 1)[0];
        } else if (key == "B2") {
            cfg.B2 = parse_numbers(value, 1)[0];
        } else {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

ProgramConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string RunManifest::comment_header() const {
    std::ostringstream out;
    out << "# tool: coulomb3 " << tool_version << "\n";
    out << "# subcommand: " << subcommand << "\n";
    out << "# config: " << (config_path.empty() ? "(defaults)" : config_path)
        << "\n";
    out << "# output: " << (output_path.empty() ? "(stdout)" : output_path)
        << "\n";
    out << "# seed: " << seed << "\n";
    for (const auto& [k, v] : overrides) out << "# " << k << ": " << v << "\n";
    return out.str();
}

}  // namespace c3
