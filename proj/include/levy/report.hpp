#pragma once

#include <json.hpp>
#include <string>

namespace levy {

using json = nlohmann::json;

struct VerificationReport {
    std::string identity;
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    json details = json::object();
    // Wall-clock and other run-dependent values; excluded from determinism comparisons.
    json metadata = json::object();

    json to_json() const;
};

// |rhs - lhs| / |lhs|, or the absolute difference when lhs = 0.
double relative_error(double lhs, double rhs);

}  // namespace levy
