#include "ym/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ym {

CompiledField::CompiledField(const std::vector<Poly>& components, const std::vector<VarId>& state_vars,
                             VarId param_a, std::complex<double> a) {
    std::map<VarId, int> index;
    for (size_t i = 0; i < state_vars.size(); ++i) index[state_vars[i]] = static_cast<int>(i);
    for (const auto& p : components) {
        std::vector<Term> terms;
        for (auto& [m, c] : p.terms()) {
            Term t;
            t.c = c.to_complex();
            for (auto& [v, k] : m.e) {
                if (v == param_a) {
                    for (int j = 0; j < k; ++j) t.c *= a;
                } else {
                    auto it = index.find(v);
                    if (it == index.end())
                        throw std::invalid_argument("CompiledField: unbound variable " + VarTable::name(v));
                    t.pw.emplace_back(it->second, k);
                }
            }
            terms.push_back(std::move(t));
        }
        terms_.push_back(std::move(terms));
    }
}

CVec CompiledField::operator()(const CVec& y) const {
    CVec out(terms_.size(), {0.0, 0.0});
    for (size_t i = 0; i < terms_.size(); ++i) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& t : terms_[i]) {
            std::complex<double> v = t.c;
            for (auto& [j, k] : t.pw)
                for (int e = 0; e < k; ++e) v *= y[static_cast<size_t>(j)];
            acc += v;
        }
        out[i] = acc;
    }
    return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double A71 = 35.0 / 384, A73 = 500.0 / 1113, A74 = 125.0 / 192, A75 = -2187.0 / 6784,
                 A76 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;
// Dense-output quintic weights.
constexpr double D1 = -12715105075.0 / 11282082432.0;
constexpr double D3 = 87487479700.0 / 32700410799.0;
constexpr double D4 = -10690763975.0 / 1880347072.0;
constexpr double D5 = 701980252875.0 / 199316789632.0;
constexpr double D6 = -1453857185.0 / 822651844.0;
constexpr double D7 = 69997945.0 / 29380423.0;

CVec axpyn(const CVec& y, double h, std::initializer_list<std::pair<double, const CVec*>> ks) {
    CVec out = y;
    for (auto& [w, k] : ks) {
        if (w == 0.0) continue;
        for (size_t i = 0; i < out.size(); ++i) out[i] += h * w * (*k)[i];
    }
    return out;
}

bool finite(const CVec& y) {
    for (auto& v : y)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

} // namespace

CVec Trajectory::state_at(double s) const {
    if (nodes.empty()) throw std::logic_error("Trajectory::state_at: empty trajectory");
    if (s <= nodes.front()) return states.front();
    if (s >= nodes.back()) return states.back();
    size_t lo = static_cast<size_t>(std::upper_bound(nodes.begin(), nodes.end(), s) - nodes.begin()) - 1;
    lo = std::min(lo, dense.size() - 1);
    const double h = nodes[lo + 1] - nodes[lo];
    const double th = (s - nodes[lo]) / h;
    const auto& r = dense[lo].r;
    CVec out(r[0].size());
    const double th1 = 1.0 - th;
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
    return out;
}

Trajectory integrate_field(const FieldFn& f, const CVec& y0, std::complex<double> t0,
                           std::complex<double> t1, const IntegratorConfig& cfg,
                           const std::string& label) {
    if (!finite(y0)) throw std::invalid_argument("integrate: non-finite initial state");
    if (cfg.rtol <= 0 || cfg.atol <= 0) throw std::invalid_argument("integrate: tolerances must be positive");

    Trajectory out;
    out.system = label;
    out.t0 = t0;
    const std::complex<double> delta = t1 - t0;
    const double span = std::abs(delta);
    if (span == 0.0) {
        out.dir = {1.0, 0.0};
        out.nodes = {0.0};
        out.states = {y0};
        return out;
    }
    out.dir = delta / span;

    // dy/ds = dir * f(y) along the ray.
    auto g = [&](const CVec& y) {
        CVec v = f(y);
        for (auto& c : v) c *= out.dir;
        return v;
    };

    const bool fixed = cfg.fixed_step > 0.0;
    double h = fixed ? cfg.fixed_step : std::min({cfg.initial_step, cfg.max_step, span});
    double s = 0.0;
    CVec y = y0;
    CVec k1 = g(y);

    out.nodes.push_back(0.0);
    out.states.push_back(y);

    const double hmin = span * 1e-14;
    int rejected_in_a_row = 0;
    while (s < span) {
        h = std::min(h, span - s);
        if (!fixed && h < hmin) {
            out.truncated = true;
            out.diagnostic = "step-size underflow at s = " + std::to_string(s) +
                             " (approach to a movable singularity?)";
            return out;
        }

        CVec k2 = g(axpyn(y, h, {{A21, &k1}}));
        CVec k3 = g(axpyn(y, h, {{A31, &k1}, {A32, &k2}}));
        CVec k4 = g(axpyn(y, h, {{A41, &k1}, {A42, &k2}, {A43, &k3}}));
        CVec k5 = g(axpyn(y, h, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
        CVec k6 = g(axpyn(y, h, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}));
        CVec ynew = axpyn(y, h, {{A71, &k1}, {A73, &k3}, {A74, &k4}, {A75, &k5}, {A76, &k6}});
        CVec k7 = g(ynew);

        if (!finite(ynew)) {
            if (fixed) throw std::runtime_error("integrate: state overflow (fixed step)");
            h *= 0.25;
            if (++rejected_in_a_row > 60) throw std::runtime_error("integrate: cannot control error");
            continue;
        }

        double err = 0.0;
        for (size_t i = 0; i < y.size(); ++i) {
            const std::complex<double> e = E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                                           E6 * k6[i] + E7 * k7[i];
            const double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double q = std::abs(h * e) / sc;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(y.size()));

        if (fixed || err <= 1.0) {
            Trajectory::Dense d;
            const size_t n = y.size();
            for (auto& r : d.r) r.resize(n);
            for (size_t i = 0; i < n; ++i) {
                const std::complex<double> ydiff = ynew[i] - y[i];
                const std::complex<double> bspl = h * k1[i] - ydiff;
                d.r[0][i] = y[i];
                d.r[1][i] = ydiff;
                d.r[2][i] = bspl;
                d.r[3][i] = ydiff - h * k7[i] - bspl;
                d.r[4][i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] +
                                 D6 * k6[i] + D7 * k7[i]);
            }
            out.dense.push_back(std::move(d));
            s += h;
            y = ynew;
            k1 = k7; // FSAL
            out.nodes.push_back(s);
            out.states.push_back(y);
            rejected_in_a_row = 0;
            if (!fixed) {
                const double factor = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
                h = std::min(h * factor, cfg.max_step);
            }
        } else {
            h *= std::min(1.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
            if (++rejected_in_a_row > 60) throw std::runtime_error("integrate: cannot control error");
        }
    }
    return out;
}

Trajectory integrate(const SystemDef& sys, const CVec& y0, std::complex<double> a,
                     std::complex<double> t0, std::complex<double> t1,
                     const IntegratorConfig& cfg) {
    if (static_cast<int>(y0.size()) != sys.dim())
        throw std::invalid_argument(sys.name + ": state dimension mismatch, expected " +
                                    std::to_string(sys.dim()));
    CompiledField f(sys.field, sys.state, sys.param_a, a);
    Trajectory t = integrate_field([&f](const CVec& y) { return f(y); }, y0, t0, t1, cfg, sys.name);
    t.a = a;
    return t;
}

DriftReport invariant_drift(const SystemDef& sys, const Trajectory& traj) {
    if (traj.states.empty()) throw std::invalid_argument("invariant_drift: empty trajectory");
    DriftReport rep;
    for (auto& [name, inv] : sys.invariants) {
        CompiledField f({inv}, sys.state, sys.param_a, traj.a);
        const std::complex<double> v0 = f(traj.states.front())[0];
        double worst = 0.0;
        for (const auto& y : traj.states) worst = std::max(worst, std::abs(f(y)[0] - v0));
        rep.names.push_back(name);
        rep.max_abs.push_back(worst);
        rep.max_rel.push_back(worst / std::max(1.0, std::abs(v0)));
        rep.worst_rel = std::max(rep.worst_rel, rep.max_rel.back());
    }
    return rep;
}

} // namespace ym
