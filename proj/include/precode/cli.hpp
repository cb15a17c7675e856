#pragma once

#include <string>
#include <utility>
#include <vector>

#include "precode/complexity.hpp"
#include "precode/sim.hpp"

namespace precode {

inline constexpr const char* kVersion = "0.1.0";

// Written as `# key = value` comment lines at the top of every CSV.
struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;
};

// %.12g — every numeric CSV field round-trips at 12 significant digits.
std::string format_num(double v);

// Inclusive `start:step:stop` grid (also accepts a single value).
std::vector<double> parse_range(const std::string& text);

// Flat `key = value` file with `#` comments. Unknown or malformed keys throw
// ParamError naming the key.
SystemConfig parse_config_file(const std::string& path);
void apply_config_line(SystemConfig& cfg, const std::string& key,
                       const std::string& value);

RunManifest make_manifest(const SystemConfig& cfg);

void write_ber_csv(const std::string& path, const RunManifest& manifest,
                   const std::vector<BerRecord>& records);

struct FlopsRow {
    Scheme scheme;
    int k, n, g, t;
    double flops;
    double residual;  // |closed form - summary-table row|
};

void write_flops_csv(const std::string& path, const RunManifest& manifest,
                     const std::vector<FlopsRow>& rows);

// Full command-line front end; returns the process exit code
// (0 success, 2 config error, 3 infeasible configuration).
int run_cli(int argc, const char* const* argv);

}  // namespace precode
