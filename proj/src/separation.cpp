#include "ym/separation.hpp"

#include <cmath>
#include <stdexcept>

#include "ym/curves.hpp"

namespace ym {

namespace {

using C = std::complex<double>;

constexpr double kDegenerateTol = 1e-11;

struct SepPoint {
    C s1, s2, sd1, sd2;
    bool degenerate;
    std::string flag;
    double closure;
};

// Separation data from one phase-space point, labels continued from prev
// (or initialized by descending real part when prev == nullptr).
SepPoint separate_state(const CVec& y, const SepPoint* prev) {
    const C q1 = y[0], q2 = y[1], p1 = y[2], p2 = y[3];
    SepPoint out{};
    const double scale = std::max({1.0, std::abs(q1), std::abs(q2)});

    const C disc = std::sqrt(q2 * q2 + q1 * q1);
    C s1 = 0.5 * (q2 + disc), s2 = 0.5 * (q2 - disc);
    if (prev) {
        if (std::abs(s1 - prev->s1) + std::abs(s2 - prev->s2) >
            std::abs(s2 - prev->s1) + std::abs(s1 - prev->s2))
            std::swap(s1, s2);
    } else {
        if (s1.real() < s2.real() || (s1.real() == s2.real() && s1.imag() < s2.imag()))
            std::swap(s1, s2);
    }
    out.s1 = s1;
    out.s2 = s2;

    if (std::abs(q1) <= kDegenerateTol * scale) {
        out.degenerate = true;
        out.flag = "q1 = 0 (p1-relation degenerates)";
    }
    const C det = s1 - s2;
    if (std::abs(det) <= kDegenerateTol * scale) {
        out.degenerate = true;
        out.flag = "s1 = s2 (branch-point collision)";
        return out;
    }

    // sd1 + sd2 = p2,  s2 sd1 + s1 sd2 = -q1 p1 / 2.
    const C rhs2 = -0.5 * q1 * p1;
    out.sd1 = (p2 * s1 - rhs2) / det;
    out.sd2 = p2 - out.sd1;

    double c = 0.0;
    c = std::max(c, std::abs(out.s1 + out.s2 - q2));
    c = std::max(c, std::abs(out.s1 * out.s2 + 0.25 * q1 * q1));
    c = std::max(c, std::abs(out.sd1 + out.sd2 - p2));
    c = std::max(c, std::abs(out.sd1 * out.s2 + out.s1 * out.sd2 + 0.5 * q1 * p1));
    out.closure = c;
    return out;
}

C p6_at(C s, C a, C b1, C b2) {
    return s * (-8.0 * s * s * s * s * s - 4.0 * a * s * s * s + 2.0 * b1 * s + b2);
}

// 7-point Gauss-Legendre on [0, 1].
const std::array<std::pair<double, double>, 7>& gauss7() {
    static const std::array<std::pair<double, double>, 7> g = [] {
        // nodes/weights on [-1, 1]
        const double x[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                             0.0,
                             0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
        const double w[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                             0.4179591836734694,
                             0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
        std::array<std::pair<double, double>, 7> out;
        for (int i = 0; i < 7; ++i) out[i] = {0.5 * (x[i] + 1.0), 0.5 * w[i]};
        return out;
    }();
    return g;
}

} // namespace

std::vector<SeparationSample> separation_coordinates(const Trajectory& traj) {
    if (traj.system != "4d")
        throw std::invalid_argument("separation_coordinates: expects a 4d trajectory");
    std::vector<SeparationSample> out;
    const SepPoint* prev = nullptr;
    SepPoint keep{};
    for (size_t i = 0; i < traj.states.size(); ++i) {
        SepPoint p = separate_state(traj.states[i], prev);
        SeparationSample s;
        s.t = traj.time_at(i);
        s.s1 = p.s1;
        s.s2 = p.s2;
        s.sd1 = p.sd1;
        s.sd2 = p.sd2;
        s.degenerate = p.degenerate;
        s.flag = p.flag;
        s.closure = p.closure;
        out.push_back(s);
        keep = p;
        prev = &keep;
    }
    return out;
}

P6Report p6_residual_with(const Trajectory& traj, C b1, C b2) {
    auto samples = separation_coordinates(traj);
    P6Report rep;
    rep.b1 = b1;
    rep.b2 = b2;
    const C a = traj.a;
    for (const auto& s : samples) {
        if (s.degenerate) {
            ++rep.flagged;
            continue;
        }
        const C d2 = (s.s1 - s.s2) * (s.s1 - s.s2);
        for (int i = 0; i < 2; ++i) {
            const C si = i == 0 ? s.s1 : s.s2;
            const C sdi = i == 0 ? s.sd1 : s.sd2;
            const C p6 = p6_at(si, a, b1, b2);
            const double res = std::abs(sdi * sdi * d2 - p6) / std::max(1.0, std::abs(p6));
            rep.max_residual = std::max(rep.max_residual, res);
        }
        ++rep.samples;
    }
    return rep;
}

P6Report p6_residual(const Trajectory& traj) {
    if (traj.states.empty()) throw std::invalid_argument("p6_residual: empty trajectory");
    CVec vals = invariants_at(sys4(), traj.states.front(), traj.a);
    return p6_residual_with(traj, vals[0], vals[1]);
}

QuadratureReport quadrature_linearization(const Trajectory& traj, BranchMode mode) {
    if (traj.states.empty() || traj.steps() == 0)
        throw std::invalid_argument("quadrature_linearization: empty trajectory");
    QuadratureReport rep;
    rep.mode = mode;

    CVec vals = invariants_at(sys4(), traj.states.front(), traj.a);
    const C b1 = vals[0], b2 = vals[1], a = traj.a;

    SepPoint sp = separate_state(traj.states.front(), nullptr);
    if (sp.degenerate)
        throw std::runtime_error("quadrature_linearization: degenerate initial sample (" + sp.flag + ")");

    struct XiSample {
        double s;
        C xi1, xi2;
    };
    std::vector<XiSample> xs{{0.0, {0.0, 0.0}, {0.0, 0.0}}};

    C xi1 = 0.0, xi2 = 0.0;
    SepPoint prev = sp;

    // Continuation state per sheet: the last two accepted zeta values and
    // their arc positions. zeta passes through zero linearly whenever an
    // s_i turns at a root of P6, so after a warm-up the sign is continued
    // by linear prediction, not by value proximity.
    struct TrackState {
        C z0{}, z1{};        // previous-previous and previous values
        double s0 = 0, s1 = 0;
        int count = 0;
    };
    TrackState tr1, tr2;

    auto track = [&](TrackState& tr, C target_sq, double s_at, int init_sign, const char* which) {
        C w = std::sqrt(target_sq);
        if (tr.count == 0) {
            // Principal value at the first usable sample, adjusted to the
            // requested sheet sign.
            C chosen = double(init_sign) * w;
            tr.z0 = tr.z1 = chosen;
            tr.s0 = tr.s1 = s_at;
            tr.count = 1;
            return chosen;
        }
        C pred;
        bool guarded = true;
        if (tr.count < 3 || tr.s1 == tr.s0) {
            pred = tr.z1; // warm-up: proximity, no ambiguity guard yet
            guarded = false;
        } else {
            pred = tr.z1 + (tr.z1 - tr.z0) * ((s_at - tr.s1) / (tr.s1 - tr.s0));
        }
        const double dplus = std::abs(w - pred), dminus = std::abs(-w - pred);
        const C chosen = dplus <= dminus ? w : -w;
        const double scale = std::max({std::abs(pred), std::abs(w), 1e-12});
        if (guarded && std::min(dplus, dminus) > 0.5 * scale)
            throw std::runtime_error(std::string("quadrature_linearization: branch tracking ambiguous for ") +
                                     which + "; refine sampling (a step crossed a root of P6?)");
        tr.z0 = tr.z1;
        tr.s0 = tr.s1;
        tr.z1 = chosen;
        tr.s1 = s_at;
        ++tr.count;
        return chosen;
    };

    if (mode == BranchMode::dynamical) rep.sheet_sign_1 = rep.sheet_sign_2 = 1;

    for (size_t step = 0; step < traj.steps(); ++step) {
        const double s0 = traj.nodes[step], s1n = traj.nodes[step + 1];
        const double h = s1n - s0;
        for (auto& [node, weight] : gauss7()) {
            const double s_at = s0 + node * h;
            const CVec y = traj.state_at(s_at);
            SepPoint p = separate_state(y, &prev);
            if (p.degenerate)
                throw std::runtime_error("quadrature_linearization: degenerate sample inside step (" +
                                         p.flag + ")");
            const C dyn1 = p.sd1 * (p.s1 - p.s2);
            const C dyn2 = p.sd2 * (p.s2 - p.s1);
            C z1, z2;
            if (mode == BranchMode::dynamical) {
                z1 = dyn1;
                z2 = dyn2;
            } else {
                C w1, w2;
                if (tr1.count == 0) {
                    // First usable sample: principal values, with the second
                    // sheet aligned to the first so the xi1 differential
                    // cancels; both detected signs are reported.
                    const C p1v = std::sqrt(p6_at(p.s1, a, b1, b2));
                    const C p2v = std::sqrt(p6_at(p.s2, a, b1, b2));
                    rep.sheet_sign_1 = std::abs(p1v - dyn1) <= std::abs(p1v + dyn1) ? 1 : -1;
                    const int raw2 = std::abs(p2v - dyn2) <= std::abs(p2v + dyn2) ? 1 : -1;
                    rep.sheet_sign_2 = rep.sheet_sign_1;
                    w1 = track(tr1, p6_at(p.s1, a, b1, b2), s_at, 1, "zeta1");
                    w2 = track(tr2, p6_at(p.s2, a, b1, b2), s_at, raw2 == rep.sheet_sign_1 ? 1 : -1,
                               "zeta2");
                } else {
                    w1 = track(tr1, p6_at(p.s1, a, b1, b2), s_at, 1, "zeta1");
                    w2 = track(tr2, p6_at(p.s2, a, b1, b2), s_at, 1, "zeta2");
                }
                // The tracked square root fixes the sheet; away from the
                // branch points it must stay on sheet_sign * (sd_i (s_i - s_j)),
                // or a silent sheet flip has occurred. The integrand uses the
                // curve point itself, which has no 1/zeta error amplification
                // at turning points.
                auto consistent = [](const C& w, const C& dyn, int sign) {
                    if (std::abs(w) <= 1e-3) return true; // too close to a branch point to judge
                    return std::abs(w - double(sign) * dyn) <= std::abs(w + double(sign) * dyn);
                };
                if (!consistent(w1, dyn1, rep.sheet_sign_1) || !consistent(w2, dyn2, rep.sheet_sign_2))
                    throw std::runtime_error(
                        "quadrature_linearization: tracked branch left its sheet (sign flip)");
                z1 = double(rep.sheet_sign_1) * dyn1;
                z2 = double(rep.sheet_sign_2) * dyn2;
            }
            const C g1 = p.sd1 / z1 + p.sd2 / z2;
            const C g2 = p.s1 * p.sd1 / z1 + p.s2 * p.sd2 / z2;
            const C dt = traj.dir * (weight * h);
            xi1 += g1 * dt;
            xi2 += g2 * dt;
            prev = p;
        }
        xs.push_back({s1n, xi1, xi2});
        ++rep.panels;
    }

    // Detected slope per unit arc length (so reversing the ray flips it).
    const double S = xs.back().s;
    rep.slope = (xs.back().xi2 - xs.front().xi2).real() / (S != 0.0 ? S : 1.0) >= 0.0 ? 1 : -1;

    for (const auto& x : xs) {
        rep.xi1_deviation = std::max(rep.xi1_deviation, std::abs(x.xi1 - xs.front().xi1));
        const C lin = xs.front().xi2 + C(rep.slope * x.s, 0.0);
        rep.xi2_deviation = std::max(rep.xi2_deviation, std::abs(x.xi2 - lin));
    }
    return rep;
}

double flows_commute_fields(const std::vector<Poly>& F, const std::vector<Poly>& G,
                            const CVec& z0, std::complex<double> a, double t1, double t2,
                            const IntegratorConfig& cfg) {
    const auto& vars = sys5().state;
    CompiledField f(F, vars, sys5().param_a, a);
    CompiledField g(G, vars, sys5().param_a, a);
    auto flow = [&](const CompiledField& field, const CVec& y, double T) {
        if (T == 0.0) return y;
        return integrate_field([&field](const CVec& s) { return field(s); }, y, 0.0, T, cfg).states.back();
    };
    CVec path1 = flow(g, flow(f, z0, t1), t2);
    CVec path2 = flow(f, flow(g, z0, t2), t1);
    double norm = 0.0;
    for (size_t i = 0; i < path1.size(); ++i) {
        const double d = std::abs(path1[i] - path2[i]);
        norm += d * d;
    }
    return std::sqrt(norm);
}

double flows_commute_numeric(const CVec& z0, std::complex<double> a, double t1, double t2,
                             const IntegratorConfig& cfg) {
    return flows_commute_fields(sys5().field, second_flow_fixture(), z0, a, t1, t2, cfg);
}

} // namespace ym
