#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ym/integrate.hpp"

namespace ym {

/// Separation coordinates at one sample: s1, s2 are the roots of
/// s^2 - q2 s - q1^2/4 and sd1, sd2 their time derivatives.
struct SeparationSample {
    std::complex<double> t;
    std::complex<double> s1, s2, sd1, sd2;
    bool degenerate = false;
    std::string flag;
    double closure = 0.0; // worst residual of the four defining relations
};

/// Root labels follow the initial sample (descending real part, ties by
/// imaginary part) and are continued by proximity.
std::vector<SeparationSample> separation_coordinates(const Trajectory& traj4);

struct P6Report {
    double max_residual = 0.0; // relative to max(1, |P6(s_i)|)
    size_t samples = 0;
    size_t flagged = 0;
    std::complex<double> b1, b2; // invariant values recomputed from the initial state
};

/// max over samples and i of |sd_i^2 (s1-s2)^2 - P6(s_i)|, with b1, b2
/// recomputed from the trajectory's own initial state (never taken on
/// trust). Flagged samples are excluded and counted.
P6Report p6_residual(const Trajectory& traj4);
/// Same, with explicit invariant values (sensitivity experiments).
P6Report p6_residual_with(const Trajectory& traj4, std::complex<double> b1, std::complex<double> b2);

enum class BranchMode {
    principal,  // principal square root at the initial sample, then continuity
    dynamical,  // zeta_i := sd_i (s_i - s_other); algebraic cross-check
};

struct QuadratureReport {
    double xi1_deviation = 0.0;       // max |xi1(t) - xi1(0)|
    double xi2_deviation = 0.0;       // max |xi2(t) - xi2(0) - slope*t|
    int slope = 0;                    // detected sign in {-1, +1}
    int sheet_sign_1 = 0, sheet_sign_2 = 0;
    size_t panels = 0;
    BranchMode mode = BranchMode::principal;
};

/// Abel-map quadratures xi1 = int(ds1/zeta1 + ds2/zeta2) and
/// xi2 = int(s1 ds1/zeta1 + s2 ds2/zeta2) along the trajectory, composite
/// Gauss panels on the dense output. Asserts nothing; reports deviations
/// and the detected sheet signs / slope.
QuadratureReport quadrature_linearization(const Trajectory& traj4,
                                          BranchMode mode = BranchMode::principal);

/// || flow2_{t2} ∘ flow1_{t1}(z0) - flow1_{t1} ∘ flow2_{t2}(z0) ||.
double flows_commute_numeric(const CVec& z0, std::complex<double> a, double t1, double t2,
                             const IntegratorConfig& cfg);
/// Same for arbitrary polynomial fields on the 5d variables.
double flows_commute_fields(const std::vector<Poly>& F, const std::vector<Poly>& G,
                            const CVec& z0, std::complex<double> a, double t1, double t2,
                            const IntegratorConfig& cfg);

} // namespace ym
