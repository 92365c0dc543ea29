#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "ym/systems.hpp"

namespace ym {

struct IntegratorConfig {
    double rtol = 1e-12;
    double atol = 1e-14;
    double max_step = 0.5;
    double fixed_step = 0.0; // > 0 disables error control and steps uniformly
    double initial_step = 1e-3;
};

/// Polynomial vector field flattened for fast floating evaluation, with the
/// parameter a folded into the coefficients.
class CompiledField {
public:
    CompiledField(const std::vector<Poly>& components, const std::vector<VarId>& state_vars,
                  VarId param_a, std::complex<double> a);
    CVec operator()(const CVec& y) const;
    int dim() const { return static_cast<int>(terms_.size()); }

private:
    struct Term {
        std::complex<double> c;
        std::vector<std::pair<int, int>> pw; // (state index, exponent)
    };
    std::vector<std::vector<Term>> terms_;
};

/// Numeric flow samples along a straight ray t(s) = t0 + dir * s, s real,
/// with per-step dense-output data.
struct Trajectory {
    std::string system;
    std::complex<double> a{0.0, 0.0};
    std::complex<double> t0{0.0, 0.0};
    std::complex<double> dir{1.0, 0.0};

    std::vector<double> nodes;   // accepted s values, ascending, size steps+1
    std::vector<CVec> states;    // states at nodes
    // Dense output, per step: y(s0 + th*h) = r1 + th*(r2 + (1-th)*(r3 + th*(r4 + (1-th)*r5)))
    struct Dense {
        std::array<CVec, 5> r;
    };
    std::vector<Dense> dense;

    bool truncated = false;      // stopped early (step-size underflow)
    std::string diagnostic;

    size_t steps() const { return dense.size(); }
    std::complex<double> time_at(size_t node) const { return t0 + dir * nodes[node]; }
    double span() const { return nodes.empty() ? 0.0 : nodes.back(); }
    /// Dense-output state at arc parameter s in [0, span()].
    CVec state_at(double s) const;
};

using FieldFn = std::function<CVec(const CVec&)>;

/// Adaptive Dormand-Prince 5(4) with dense output; fixed-step when
/// cfg.fixed_step > 0. Throws on NaN/overflow; step-size underflow yields a
/// truncated trajectory with a diagnostic.
Trajectory integrate_field(const FieldFn& f, const CVec& y0, std::complex<double> t0,
                           std::complex<double> t1, const IntegratorConfig& cfg,
                           const std::string& label = "custom");

Trajectory integrate(const SystemDef& sys, const CVec& y0, std::complex<double> a,
                     std::complex<double> t0, std::complex<double> t1,
                     const IntegratorConfig& cfg);

struct DriftReport {
    std::vector<std::string> names;
    std::vector<double> max_abs;
    std::vector<double> max_rel; // |v - v0| / max(1, |v0|)
    double worst_rel = 0.0;
};

DriftReport invariant_drift(const SystemDef& sys, const Trajectory& traj);

} // namespace ym
