#include "levy/report.hpp"

#include <cmath>

namespace levy {

json VerificationReport::to_json() const {
    json j;
    j["identity"] = identity;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["rel_error"] = rel_error;
    j["tolerance"] = tolerance;
    j["passed"] = passed;
    j["details"] = details;
    j["metadata"] = metadata;
    return j;
}

double relative_error(double lhs, double rhs) {
    const double diff = std::abs(rhs - lhs);
    return lhs == 0.0 ? diff : diff / std::abs(lhs);
}

}  // namespace levy
