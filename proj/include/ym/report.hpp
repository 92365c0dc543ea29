#pragma once

#include <string>
#include <vector>

namespace ym {

/// One verification outcome. `residual` is 0 for exact (polynomial-level)
/// checks and the measured defect for floating ones; `witness` carries the
/// offending object's text form on failure.
struct Check {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    std::string witness;
};

inline bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

} // namespace ym
