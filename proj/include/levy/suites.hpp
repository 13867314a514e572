#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "levy/config.hpp"
#include "levy/report.hpp"

namespace levy {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SuiteResult {
    std::string name;
    std::vector<VerificationReport> reports;
    std::vector<std::string> notes;  // checks not applicable to the configured model
    bool passed = true;
    double wall_clock_s = 0.0;
    json params;  // grid and quadrature parameters after auto-selection
    std::vector<std::string> artifacts;

    json to_json(const RunConfig& cfg) const;
};

// Runs one suite (or "all") and writes <output_dir>/<name>.json plus CSV artifacts.
SuiteResult run_suite(const RunConfig& cfg, const std::string& name);

struct ExportRequest {
    std::string field;   // f, density, symbol, semigroup, G, Gtilde, Gstar, maximal
    std::string format;  // csv or raw
    std::string member;  // family label; empty selects the first member
    double t = 1.0;      // density and semigroup time
};

// Writes <output_dir>/<field>.csv (or .bin + .json); returns the paths written.
std::vector<std::string> export_field(const RunConfig& cfg, const ExportRequest& req);

// Removes every "metadata" key, recursively: what remains must be reproducible.
json strip_metadata(json j);

}  // namespace levy
