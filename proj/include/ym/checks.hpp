#pragma once

#include <vector>

#include "ym/report.hpp"
#include "ym/systems.hpp"

namespace ym {

/// The full exact (polynomial-level) identity suite: Poisson structure,
/// conservation, the morphism and involution identities, weights, and the
/// reduction-ratio report. Every check is exact; no tolerances involved.
std::vector<Check> run_exact_suite();

} // namespace ym
